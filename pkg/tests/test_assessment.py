from __future__ import annotations

import random
import threading
from datetime import timedelta

import pytest

from raiqb.assessment import (
    AnswerRecord,
    RiskRegisterEntry,
    create_session,
    principle_risk_summary,
    rank_principles_by_risk,
    replay_answers,
    risk_rating,
)
from raiqb.compliance import AnswerValue
from raiqb.errors import (
    EvidenceRequired,
    IntegrityError,
    NotFound,
    OutOfRange,
    SessionClosed,
    SessionContention,
    UnknownProfile,
    UnknownQuestion,
)
from raiqb.model import PrincipleId
from raiqb.store import SessionStore, load_session

from .conftest import FIXED_NOW

YES, NO, NA = AnswerValue.YES, AnswerValue.NO, AnswerValue.NOT_APPLICABLE

# The 3x3 grid enumerated by hand against the banding (1-2 Low, 3-4 Medium,
# 6-9 High) before the implementation existed.
GRID = {
    (1, 1): (1, "Low"),
    (1, 2): (2, "Low"),
    (2, 1): (2, "Low"),
    (1, 3): (3, "Medium"),
    (3, 1): (3, "Medium"),
    (2, 2): (4, "Medium"),
    (2, 3): (6, "High"),
    (3, 2): (6, "High"),
    (3, 3): (9, "High"),
}


class TestRiskRating:
    def test_minimum_cell(self):
        rating = risk_rating(1, 1)
        assert (rating.score, rating.level) == (1, "Low")

    def test_maximum_cell(self):
        rating = risk_rating(3, 3)
        assert (rating.score, rating.level) == (9, "High")

    def test_all_nine_cells_match_decision_table(self):
        for (impact, probability), (score, level) in GRID.items():
            rating = risk_rating(impact, probability)
            assert (rating.score, rating.level) == (score, level)

    def test_levels_split_three_three_three(self):
        levels = [risk_rating(i, p).level for i in (1, 2, 3) for p in (1, 2, 3)]
        assert sorted(levels).count("Low") == 3
        assert levels.count("Medium") == 3
        assert levels.count("High") == 3

    def test_monotone_in_each_argument(self):
        order = {"Low": 0, "Medium": 1, "High": 2}
        for i in (1, 2, 3):
            for p in (1, 2):
                assert order[risk_rating(i, p + 1).level] >= order[risk_rating(i, p).level]
                assert order[risk_rating(p + 1, i).level] >= order[risk_rating(p, i).level]

    def test_symmetric_in_product(self):
        for i in (1, 2, 3):
            for p in (1, 2, 3):
                assert risk_rating(i, p).level == risk_rating(p, i).level

    @pytest.mark.parametrize("impact,probability", [(0, 1), (4, 1), (1, 0), (1, 4),
                                                    (2, -1), (1.5, 2), (True, 2)])
    def test_out_of_range_rejected(self, impact, probability):
        with pytest.raises(OutOfRange):
            risk_rating(impact, probability)


class TestSessions:
    def test_agent_session_opens_with_thirteen(self, seed_bank):
        session = create_session(seed_bank, "agent-rai-plugins", "demo-agent",
                                 now=FIXED_NOW)
        assert len(session.open_question_ids(seed_bank)) == 13
        assert session.audit_log[0].kind == "session_created"

    def test_foundation_model_session_opens_with_eight(self, seed_bank):
        session = create_session(seed_bank, "foundation-model", "demo-fm",
                                 now=FIXED_NOW)
        assert len(session.open_question_ids(seed_bank)) == 8

    def test_unknown_profile_rejected(self, seed_bank):
        with pytest.raises(UnknownProfile):
            create_session(seed_bank, "x", "demo")

    def test_record_answer_and_audit(self, seed_bank):
        session = create_session(seed_bank, "agent-rai-plugins", "s", now=FIXED_NOW)
        record = AnswerRecord(value=YES, answered_at=FIXED_NOW)
        session.record_answer(seed_bank, "QB-P8-002", record)
        assert session.answers["QB-P8-002"].value is YES
        assert session.audit_log[-1].kind == "answer_recorded"
        assert session.audit_log[-1].prior is None

    def test_question_outside_profile_rejected(self, seed_bank):
        session = create_session(seed_bank, "agent-rai-plugins", "s", now=FIXED_NOW)
        with pytest.raises(UnknownQuestion):
            session.record_answer(seed_bank, "QB-P1-001",
                                  AnswerRecord(value=YES, answered_at=FIXED_NOW))

    def test_evidence_required_metric_question(self, seed_bank):
        # the accountability metric probe requires evidence on Yes
        session = create_session(seed_bank, "esg-deep-dive", "s", now=FIXED_NOW)
        with pytest.raises(EvidenceRequired):
            session.record_answer(seed_bank, "QB-P8-011",
                                  AnswerRecord(value=YES, answered_at=FIXED_NOW))
        session.record_answer(
            seed_bank, "QB-P8-011",
            AnswerRecord(value=YES, evidence="risk register with 4 metrics",
                         metric_value=4, metric_unit="count", answered_at=FIXED_NOW))
        assert session.answers["QB-P8-011"].metric_value == 4

    def test_profile_override_requires_evidence_everywhere(self, seed_bank):
        session = create_session(seed_bank, "esg-deep-dive", "s", now=FIXED_NOW)
        # QB-P3-001 itself has no evidence flag; the profile override forces it
        with pytest.raises(EvidenceRequired):
            session.record_answer(seed_bank, "QB-P3-001",
                                  AnswerRecord(value=YES, answered_at=FIXED_NOW))
        # No answers never need evidence
        session.record_answer(seed_bank, "QB-P3-001",
                              AnswerRecord(value=NO, answered_at=FIXED_NOW))

    def test_overwrite_keeps_prior_in_audit(self, seed_bank):
        session = create_session(seed_bank, "agent-rai-plugins", "s", now=FIXED_NOW)
        session.record_answer(seed_bank, "QB-P8-002",
                              AnswerRecord(value=NO, answered_at=FIXED_NOW))
        before = len(session.audit_log)
        session.record_answer(
            seed_bank, "QB-P8-002",
            AnswerRecord(value=YES, answered_at=FIXED_NOW + timedelta(minutes=5)))
        assert len(session.audit_log) == before + 1
        assert session.audit_log[-1].prior["value"] == "no"
        assert session.answers["QB-P8-002"].value is YES

    def test_audit_log_replay_reconstructs_answers(self, seed_bank):
        rng = random.Random(5)
        session = create_session(seed_bank, "agent-rai-plugins", "s", now=FIXED_NOW)
        profile = seed_bank.profile("agent-rai-plugins")
        for step, qid in enumerate(profile.question_ids):
            value = (YES, NO, NA)[rng.randrange(3)]
            session.record_answer(
                seed_bank, qid,
                AnswerRecord(value=value, answered_at=FIXED_NOW + timedelta(minutes=step)))
        # overwrite a couple
        session.record_answer(
            seed_bank, profile.question_ids[0],
            AnswerRecord(value=YES, answered_at=FIXED_NOW + timedelta(hours=1)))
        replayed = replay_answers(session.audit_log)
        assert replayed == session.answers

    def test_completion_is_monotone(self, seed_bank):
        session = create_session(seed_bank, "foundation-model", "s", now=FIXED_NOW)
        profile = seed_bank.profile("foundation-model")
        opens = [len(session.open_question_ids(seed_bank))]
        for qid in profile.question_ids:
            session.record_answer(seed_bank, qid,
                                  AnswerRecord(value=YES, answered_at=FIXED_NOW))
            opens.append(len(session.open_question_ids(seed_bank)))
        assert opens == list(range(8, -1, -1))
        assert session.is_complete(seed_bank)

    def test_closed_session_rejects_writes(self, seed_bank):
        session = create_session(seed_bank, "agent-rai-plugins", "s", now=FIXED_NOW)
        session.close(now=FIXED_NOW)
        with pytest.raises(SessionClosed):
            session.record_answer(seed_bank, "QB-P8-002",
                                  AnswerRecord(value=YES, answered_at=FIXED_NOW))

    def test_audit_log_never_shrinks(self, seed_bank):
        session = create_session(seed_bank, "agent-rai-plugins", "s", now=FIXED_NOW)
        lengths = [len(session.audit_log)]
        session.record_answer(seed_bank, "QB-P8-002",
                              AnswerRecord(value=NO, answered_at=FIXED_NOW))
        lengths.append(len(session.audit_log))
        session.add_risk(seed_bank, RiskRegisterEntry(
            risk_id="R1", category_id="auditability", title="t",
            rating=risk_rating(2, 2)), now=FIXED_NOW)
        lengths.append(len(session.audit_log))
        session.close(now=FIXED_NOW)
        lengths.append(len(session.audit_log))
        assert lengths == sorted(lengths) and len(set(lengths)) == len(lengths)


class TestRiskRegister:
    def test_duplicate_risk_id_rejected(self, seed_bank):
        session = create_session(seed_bank, "agent-rai-plugins", "s", now=FIXED_NOW)
        entry = RiskRegisterEntry(risk_id="R1", category_id="auditability", title="t",
                                  rating=risk_rating(1, 1))
        session.add_risk(seed_bank, entry, now=FIXED_NOW)
        with pytest.raises(IntegrityError):
            session.add_risk(seed_bank, entry, now=FIXED_NOW)

    def test_unknown_category_rejected(self, seed_bank):
        session = create_session(seed_bank, "agent-rai-plugins", "s", now=FIXED_NOW)
        with pytest.raises(IntegrityError):
            session.add_risk(seed_bank, RiskRegisterEntry(
                risk_id="R1", category_id="nope", title="t",
                rating=risk_rating(1, 1)), now=FIXED_NOW)

    def test_principle_summary_counts_by_level(self, seed_bank):
        session = create_session(seed_bank, "agent-rai-plugins", "s", now=FIXED_NOW)
        session.add_risk(seed_bank, RiskRegisterEntry(
            risk_id="R1", category_id="auditability", title="missing docs",
            rating=risk_rating(3, 3)), now=FIXED_NOW)
        session.add_risk(seed_bank, RiskRegisterEntry(
            risk_id="R2", category_id="ai-management", title="no owner",
            rating=risk_rating(3, 2)), now=FIXED_NOW)
        session.add_risk(seed_bank, RiskRegisterEntry(
            risk_id="R3", category_id="human-oversight", title="low",
            rating=risk_rating(1, 2)), now=FIXED_NOW)
        rows = principle_risk_summary(session, seed_bank)
        by_principle = {r.principle: r for r in rows}
        assert (by_principle[PrincipleId.P8].high, by_principle[PrincipleId.P8].low) == (2, 0)
        assert by_principle[PrincipleId.P2].low == 1
        ranked = rank_principles_by_risk(rows)
        assert ranked[0].principle is PrincipleId.P8

    def test_medium_cell_counts_as_medium(self, seed_bank):
        session = create_session(seed_bank, "agent-rai-plugins", "s", now=FIXED_NOW)
        session.add_risk(seed_bank, RiskRegisterEntry(
            risk_id="R1", category_id="system-performance", title="t",
            rating=risk_rating(2, 2)), now=FIXED_NOW)
        rows = {r.principle: r for r in principle_risk_summary(session, seed_bank)}
        assert rows[PrincipleId.P5].medium == 1

    def test_empty_register_all_zero(self, seed_bank):
        session = create_session(seed_bank, "agent-rai-plugins", "s", now=FIXED_NOW)
        assert all((r.low, r.medium, r.high) == (0, 0, 0)
                   for r in principle_risk_summary(session, seed_bank))


def random_session(seed_bank, rng: random.Random):
    profile_id = rng.choice(["agent-rai-plugins", "foundation-model",
                             "esg-deep-dive", "eu-high-risk"])
    session = create_session(
        seed_bank, profile_id, f"subject-{rng.randrange(10_000)}",
        session_id=f"rnd{rng.randrange(10**9):09d}", now=FIXED_NOW)
    profile = seed_bank.profile(profile_id)
    categories = [cat.id for entry in seed_bank.principles for cat in entry.categories]
    for step, qid in enumerate(profile.question_ids):
        if rng.random() < 0.5:
            continue
        value = (YES, NO, NA)[rng.randrange(3)]
        evidence = f"note {rng.randrange(1000)}" if value is YES else ""
        session.record_answer(seed_bank, qid, AnswerRecord(
            value=value, evidence=evidence,
            metric_value=round(rng.uniform(0, 50), 2) if rng.random() < 0.2 else None,
            metric_unit="count" if rng.random() < 0.2 else "",
            answered_by=rng.choice(["", "alex", "sam"]),
            answered_at=FIXED_NOW + timedelta(minutes=step)))
    for i in range(rng.randrange(4)):
        session.add_risk(seed_bank, RiskRegisterEntry(
            risk_id=f"R{i + 1}",
            category_id=categories[rng.randrange(len(categories))],
            title=f"risk {i}", description="d", causes="c",
            existing_mitigations="m", owner="o",
            rating=risk_rating(rng.randint(1, 3), rng.randint(1, 3))),
            now=FIXED_NOW + timedelta(hours=1, minutes=i))
    return session


class TestStore:
    def test_save_load_round_trip(self, seed_bank, tmp_path):
        store = SessionStore(tmp_path)
        session = random_session(seed_bank, random.Random(1))
        store.save(session)
        assert store.load(session.session_id) == session

    def test_hundred_random_sessions_round_trip(self, seed_bank, tmp_path):
        store = SessionStore(tmp_path)
        rng = random.Random(42)
        for _ in range(100):
            session = random_session(seed_bank, rng)
            store.save(session)
            assert store.load(session.session_id) == session

    def test_load_unknown_id_not_found(self, tmp_path):
        with pytest.raises(NotFound):
            SessionStore(tmp_path).load("missing")

    def test_version_mismatch_is_a_warning(self, seed_bank, tmp_path):
        store = SessionStore(tmp_path)
        session = create_session(seed_bank, "agent-rai-plugins", "s", now=FIXED_NOW)
        store.save(session)
        loaded, warnings = load_session(store, session.session_id,
                                        active_bank_version="v2-different")
        assert loaded == session
        assert len(warnings) == 1 and "version mismatch" in warnings[0]
        _, none_expected = load_session(store, session.session_id,
                                        active_bank_version=seed_bank.version)
        assert none_expected == []

    def test_concurrent_writers_fail_fast(self, seed_bank, tmp_path):
        from filelock import FileLock

        store = SessionStore(tmp_path)
        session = create_session(seed_bank, "agent-rai-plugins", "s", now=FIXED_NOW)
        store.save(session)
        # simulate another writer holding the lock from a different thread
        lock = FileLock(str(tmp_path / f"{session.session_id}.json.lock"))
        acquired = threading.Event()
        release = threading.Event()

        def hold():
            with lock.acquire(timeout=5):
                acquired.set()
                release.wait(timeout=10)

        holder = threading.Thread(target=hold)
        holder.start()
        try:
            assert acquired.wait(timeout=5)
            with pytest.raises(SessionContention):
                store.save(session)
        finally:
            release.set()
            holder.join()
        store.save(session)  # lock released, write succeeds again

    def test_store_files_are_canonical(self, seed_bank, tmp_path):
        from raiqb.canonical import canonical_dumps

        store = SessionStore(tmp_path)
        session = random_session(seed_bank, random.Random(9))
        store.save(session)
        on_disk = (tmp_path / f"{session.session_id}.json").read_text(encoding="utf-8")
        assert on_disk == canonical_dumps(session.to_dict())

    def test_invalid_session_id_rejected(self, tmp_path):
        from raiqb.errors import StoreIO

        with pytest.raises(StoreIO):
            SessionStore(tmp_path).load("../escape")
