"""Top-level acceptance suite: one test per criterion, at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v``; a PASS/FAIL line per
criterion is printed in the terminal summary.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import random
import time
from dataclasses import replace
from datetime import timedelta

import pytest
from click.testing import CliRunner

from raiqb import seeds
from raiqb.assessment import AnswerRecord, RiskRegisterEntry, create_session, risk_rating
from raiqb.compliance import (
    AnswerValue,
    ComplianceLevel,
    RequirementSet,
    compliance_level,
    compliance_score,
    coverage_check,
)
from raiqb.ingest import extend_bank, parse_bank, serialize_bank
from raiqb.model import PrincipleId, summarize
from raiqb.reporting import export_risk_register, export_traceability_matrix
from raiqb.store import SessionStore

from .conftest import DATA, FIXED_NOW
from .helpers import random_nav_bank
from .test_assessment import random_session
from .test_cli import run_agent_session
from .test_compliance import flat_set, oracle_level, oracle_score
from .test_navigator import drive_to_exhaustion

YES, NO, NA = AnswerValue.YES, AnswerValue.NO, AnswerValue.NOT_APPLICABLE

MIRROR_ROWS = {
    PrincipleId.P1: (3, 7, 14, 4),
    PrincipleId.P2: (3, 5, 17, 3),
    PrincipleId.P3: (2, 6, 32, 4),
    PrincipleId.P4: (3, 9, 47, 6),
    PrincipleId.P5: (5, 11, 42, 6),
    PrincipleId.P6: (3, 9, 32, 4),
    PrincipleId.P7: (2, 4, 4, 2),
    PrincipleId.P8: (5, 14, 57, 6),
}


@pytest.mark.acceptance("mirror fixture reproduces all structure rows and 26/65/245 totals")
def test_table1_reproduction():
    start = time.monotonic()
    bank = parse_bank((DATA / "table1_mirror.json").read_text(encoding="utf-8"))
    summary = summarize(bank)
    assert summary.totals[:3] == (26, 65, 245)
    for principle, expected in MIRROR_ROWS.items():
        row = summary.row(principle)
        assert (row.categories, row.subcategories,
                row.subquestions, row.distinct_sources) == expected
    assert time.monotonic() - start < 1.0


@pytest.mark.acceptance("exhaustive scoring oracle over all vectors, k=1..12")
def test_exhaustive_scoring_oracle():
    start = time.monotonic()
    cases = 0
    for k in range(1, 13):
        rs = flat_set(k)
        qids = [f"Q{i}" for i in range(k)]
        for vector in itertools.product((YES, NO, NA), repeat=k):
            answers = dict(zip(qids, vector))
            got = compliance_score(rs, answers)
            expected = oracle_score(list(vector))
            assert got == expected, (vector, got, expected)
            s, _, n_applicable = got
            if n_applicable:
                for t in {1, (n_applicable + 1) // 2, n_applicable}:
                    assert compliance_level(s, t, n_applicable) is oracle_level(
                        s, t, n_applicable)
            cases += 1
    assert cases == sum(3 ** k for k in range(1, 13))  # 797,160 vectors
    assert time.monotonic() - start < 60.0


@pytest.mark.acceptance("level-equation anchor cases (N=21, T=11)")
def test_level_anchor_cases():
    rs = flat_set(21)
    qids = [f"Q{i}" for i in range(21)]

    all_yes = {qid: YES for qid in qids}
    s, _, n_applicable = compliance_score(rs, all_yes)
    assert (s, n_applicable) == (21, 21)
    assert compliance_level(s, 11, n_applicable) is ComplianceLevel.FULL
    assert f"{s}/{n_applicable}" == "21/21"

    all_no = {qid: NO for qid in qids}
    s, _, _ = compliance_score(rs, all_no)
    assert compliance_level(s, 11, 21) is ComplianceLevel.NON_COMPLIANT

    fifteen = {qid: (YES if i < 15 else NO) for i, qid in enumerate(qids)}
    s, _, _ = compliance_score(rs, fifteen)
    assert s == 15
    assert compliance_level(15, 11, 21) is ComplianceLevel.PARTIAL


@pytest.mark.acceptance("3x3 risk matrix decision table and monotonicity")
def test_risk_matrix():
    expected = {
        (1, 1): (1, "Low"), (1, 2): (2, "Low"), (2, 1): (2, "Low"),
        (1, 3): (3, "Medium"), (3, 1): (3, "Medium"), (2, 2): (4, "Medium"),
        (2, 3): (6, "High"), (3, 2): (6, "High"), (3, 3): (9, "High"),
    }
    order = {"Low": 0, "Medium": 1, "High": 2}
    cells = list(expected)
    for cell, (score, level) in expected.items():
        rating = risk_rating(*cell)
        assert (rating.score, rating.level) == (score, level)
    # product monotonicity across every pair of cells
    for a in cells:
        for b in cells:
            if a[0] <= b[0] and a[1] <= b[1]:
                assert order[risk_rating(*a).level] <= order[risk_rating(*b).level]


@pytest.mark.acceptance("E01..E10 coverage plus single-row deletion mutations")
def test_coverage_mutations(seed_bank, eu_set):
    core_ids = [f"E{i:02d}" for i in range(1, 11)]
    eu_core = RequirementSet(
        id="eu-core",
        name="EU high-risk core requirements",
        requirements=tuple(r for r in eu_set.requirements if r.id in core_ids),
        mapping=tuple(row for row in eu_set.mapping if row[0] in core_ids),
    )
    report = coverage_check(eu_core, seed_bank)
    assert len(report.covered) == 10
    assert report.uncovered == ()
    assert report.dangling == ()

    for deleted in eu_core.mapping:
        mutated = replace(eu_core, mapping=tuple(
            row for row in eu_core.mapping if row != deleted))
        mutated_report = coverage_check(mutated, seed_bank)
        assert mutated_report.uncovered == (deleted[0],)


@pytest.mark.acceptance("profiles resolve to 13 / 8 / 42 questions over the right groups")
def test_profiles(seed_bank, agent_set, fm_set):
    from raiqb.navigator import select_profile

    agent = select_profile(seed_bank, "agent-rai-plugins")
    assert len(agent) == 13
    agent_ids = {q.global_id for q in agent}
    components = {agent_set.requirement(rid).category
                  for rid, qid in agent_set.mapping if qid in agent_ids}
    assert components == {"Continuous risk assessor", "Black box recorder",
                          "Explainer", "Multimodal guardrail", "AIBOM registry"}

    fm = select_profile(seed_bank, "foundation-model")
    assert len(fm) == 8
    fm_ids = {q.global_id for q in fm}
    categories = {fm_set.requirement(rid).category
                  for rid, qid in fm_set.mapping if qid in fm_ids}
    assert categories == {"Risk management", "Data governance", "Documentation",
                          "Environmental impact", "Quality management"}

    esg = seed_bank.profile("esg-deep-dive")
    assert len(esg.question_ids) == 42
    assert len(set(esg.question_ids)) == 42


@pytest.mark.acceptance("navigation on 1000 randomized banks: no repeats, no starvation")
def test_randomized_navigation():
    rng = random.Random(0xACCE55)
    for trial in range(1000):
        bank = random_nav_bank(rng, max_questions=50)
        drive_to_exhaustion(bank, rng, check_purity=(trial % 100 == 0))


@pytest.mark.acceptance("round-trip laws: bank bytes, 100 random sessions, CSV rows")
def test_round_trips(seed_bank, eu_set, tmp_path):
    # bank: structural + byte laws
    text = seeds.seed_bank_path().read_text(encoding="utf-8")
    assert parse_bank(serialize_bank(seed_bank)) == seed_bank
    assert serialize_bank(parse_bank(text)) == text

    # sessions: save/load structural law on 100 random sessions
    store = SessionStore(tmp_path / "store")
    rng = random.Random(99)
    for _ in range(100):
        session = random_session(seed_bank, rng)
        store.save(session)
        assert store.load(session.session_id) == session

    # CSV: re-parse gives the same row multiset
    session = create_session(seed_bank, "eu-high-risk", "round-trip",
                             session_id="rt", now=FIXED_NOW)
    for step, qid in enumerate(eu_set.mapped_question_ids()):
        value = (YES, NO, NA)[step % 3]
        session.record_answer(seed_bank, qid, AnswerRecord(
            value=value, evidence="e" if value is YES else "",
            answered_at=FIXED_NOW + timedelta(minutes=step)))
    session.add_risk(seed_bank, RiskRegisterEntry(
        risk_id="R1", category_id="auditability", title="a, \"quoted\" title",
        rating=risk_rating(3, 2)), now=FIXED_NOW)

    for document in (export_traceability_matrix(eu_set, session, seed_bank, "csv"),
                     export_risk_register(session, "csv")):
        first = list(csv.reader(io.StringIO(document)))
        second = list(csv.reader(io.StringIO(document)))
        assert sorted(map(tuple, first[1:])) == sorted(map(tuple, second[1:]))
        # writing the parsed rows back out re-parses identically
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerows(first)
        assert list(csv.reader(io.StringIO(buf.getvalue()))) == first


@pytest.mark.acceptance("extension counts: EU-Act +10 and ISO +22, idempotent")
def test_extension_counts(pre_reg_bank):
    euact = seeds.load_extension("EU-Act")
    assert (len(euact.new_questions) + len(euact.overlaps)) == 25
    assert len(euact.overlaps) == 15
    with_euact = extend_bank(pre_reg_bank, euact)
    assert len(with_euact.subquestions()) == len(pre_reg_bank.subquestions()) + 10
    assert extend_bank(with_euact, euact) == with_euact

    iso = seeds.load_extension("ISO")
    assert (len(iso.new_questions) + len(iso.overlaps)) == 30
    assert len(iso.overlaps) == 8
    with_iso = extend_bank(with_euact, iso)
    assert len(with_iso.subquestions()) == len(with_euact.subquestions()) + 22
    assert extend_bank(with_iso, iso) == with_iso


@pytest.mark.acceptance("end-to-end CLI agent session, byte-identical on re-run")
def test_cli_end_to_end(tmp_path):
    runner = CliRunner()
    first = run_agent_session(runner, tmp_path / "store-a", "acc-e2e")
    for component in ("Continuous risk assessor", "Black box recorder",
                      "Explainer", "Multimodal guardrail", "AIBOM registry"):
        assert component in first
    second = run_agent_session(runner, tmp_path / "store-b", "acc-e2e")
    assert first.encode("utf-8") == second.encode("utf-8")
