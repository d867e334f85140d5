"""Live assessment sessions: audited answers, evidence rules, and the risk register.

A session is owned by one writer at a time.  Every mutation appends exactly
one audit event; the audit log is append-only and replaying it reconstructs
the answers map, so overwritten answers are never lost.
"""

from __future__ import annotations

import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from .compliance import AnswerValue
from .errors import (
    EvidenceRequired,
    IntegrityError,
    OutOfRange,
    SessionClosed,
    UnknownProfile,
    UnknownQuestion,
)
from .model import PrincipleId, QuestionBank


def utc_now() -> datetime:
    return datetime.now(timezone.utc)


class RiskLevel(str):
    pass


RISK_LEVELS = ("Low", "Medium", "High")


@dataclass(frozen=True)
class RiskRating:
    """3x3 matrix cell: score = impact x probability, banded into levels.

    Banding: 1-2 Low, 3-4 Medium, 6-9 High (products of two 1..3 factors can
    only be 1, 2, 3, 4, 6 or 9).
    """

    impact: int
    probability: int

    @property
    def score(self) -> int:
        return self.impact * self.probability

    @property
    def level(self) -> str:
        if self.score <= 2:
            return "Low"
        if self.score <= 4:
            return "Medium"
        return "High"


def risk_rating(impact: int, probability: int) -> RiskRating:
    """Rate a risk on the 3x3 impact/probability matrix."""
    for name, value in (("impact", impact), ("probability", probability)):
        if not isinstance(value, int) or isinstance(value, bool) or not 1 <= value <= 3:
            raise OutOfRange(f"{name} must be an integer in 1..3, got {value!r}")
    return RiskRating(impact, probability)


@dataclass(frozen=True)
class AnswerRecord:
    """One recorded answer with optional evidence and metric reading."""

    value: AnswerValue
    evidence: str = ""
    metric_value: float | None = None
    metric_unit: str = ""
    answered_by: str = ""
    answered_at: datetime = field(default_factory=utc_now)

    def to_dict(self) -> dict:
        return {
            "value": self.value.value,
            "evidence": self.evidence,
            "metric_value": self.metric_value,
            "metric_unit": self.metric_unit,
            "answered_by": self.answered_by,
            "answered_at": self.answered_at.isoformat(),
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "AnswerRecord":
        return cls(
            value=AnswerValue(raw["value"]),
            evidence=raw["evidence"],
            metric_value=raw["metric_value"],
            metric_unit=raw["metric_unit"],
            answered_by=raw["answered_by"],
            answered_at=datetime.fromisoformat(raw["answered_at"]),
        )


@dataclass(frozen=True)
class RiskRegisterEntry:
    risk_id: str
    category_id: str
    title: str
    description: str = ""
    causes: str = ""
    existing_mitigations: str = ""
    owner: str = ""
    linked_question_ids: tuple[str, ...] = ()
    rating: RiskRating = RiskRating(1, 1)

    def to_dict(self) -> dict:
        return {
            "risk_id": self.risk_id,
            "category_id": self.category_id,
            "title": self.title,
            "description": self.description,
            "causes": self.causes,
            "existing_mitigations": self.existing_mitigations,
            "owner": self.owner,
            "linked_question_ids": list(self.linked_question_ids),
            "rating": {
                "impact": self.rating.impact,
                "probability": self.rating.probability,
                "score": self.rating.score,
                "level": self.rating.level,
            },
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "RiskRegisterEntry":
        return cls(
            risk_id=raw["risk_id"],
            category_id=raw["category_id"],
            title=raw["title"],
            description=raw["description"],
            causes=raw["causes"],
            existing_mitigations=raw["existing_mitigations"],
            owner=raw["owner"],
            linked_question_ids=tuple(raw["linked_question_ids"]),
            rating=risk_rating(raw["rating"]["impact"], raw["rating"]["probability"]),
        )


@dataclass(frozen=True)
class AuditEvent:
    kind: str
    at: datetime
    question_id: str | None = None
    record: dict | None = None
    prior: dict | None = None
    risk_id: str | None = None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "at": self.at.isoformat(),
            "question_id": self.question_id,
            "record": self.record,
            "prior": self.prior,
            "risk_id": self.risk_id,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "AuditEvent":
        return cls(
            kind=raw["kind"],
            at=datetime.fromisoformat(raw["at"]),
            question_id=raw["question_id"],
            record=raw["record"],
            prior=raw["prior"],
            risk_id=raw["risk_id"],
        )


@dataclass
class AssessmentSession:
    """Mutable per-assessment state; persist through :mod:`raiqb.store`."""

    session_id: str
    bank_version: str
    profile_id: str
    subject: str
    created_at: datetime
    updated_at: datetime
    threshold_override: int | None = None
    evidence_override: bool | None = None
    closed_at: datetime | None = None
    answers: dict[str, AnswerRecord] = field(default_factory=dict)
    risk_register: list[RiskRegisterEntry] = field(default_factory=list)
    audit_log: list[AuditEvent] = field(default_factory=list)

    # -- answering ------------------------------------------------------

    def record_answer(self, bank: QuestionBank, question_id: str,
                      record: AnswerRecord) -> "AssessmentSession":
        """Record (or overwrite) an answer, appending one audit event.

        Overwrites keep the prior record inside the audit event, so the full
        answer history stays reconstructable from the log.
        """
        if self.closed_at is not None:
            raise SessionClosed(f"session {self.session_id} is closed")
        profile = bank.profile(self.profile_id)
        if profile is None:
            raise UnknownProfile(f"no profile with id {self.profile_id!r}")
        if question_id not in profile.question_ids:
            raise UnknownQuestion(
                f"question {question_id!r} is not part of profile {self.profile_id!r}")
        question = bank.get(question_id)
        effective_evidence = bool(
            (question is not None and question.evidence_required)
            or profile.evidence_required_override is True
            or self.evidence_override is True
        )
        if effective_evidence and record.value is AnswerValue.YES and not record.evidence.strip():
            raise EvidenceRequired(
                f"question {question_id!r} requires evidence for a Yes answer")
        prior = self.answers.get(question_id)
        self.answers[question_id] = record
        self.audit_log.append(AuditEvent(
            kind="answer_recorded",
            at=record.answered_at,
            question_id=question_id,
            record=record.to_dict(),
            prior=None if prior is None else prior.to_dict(),
        ))
        self.updated_at = record.answered_at
        return self

    def answer_values(self) -> dict[str, AnswerValue]:
        return {qid: rec.value for qid, rec in self.answers.items()}

    # -- risk register ---------------------------------------------------

    def add_risk(self, bank: QuestionBank, entry: RiskRegisterEntry,
                 now: datetime | None = None) -> "AssessmentSession":
        """Append a register entry; category and linked questions must resolve."""
        if self.closed_at is not None:
            raise SessionClosed(f"session {self.session_id} is closed")
        if any(e.risk_id == entry.risk_id for e in self.risk_register):
            raise IntegrityError(f"duplicate risk id {entry.risk_id!r}")
        if self._category_principle(bank, entry.category_id) is None:
            raise IntegrityError(f"risk category {entry.category_id!r} does not resolve")
        for qid in entry.linked_question_ids:
            if bank.get(qid) is None:
                raise IntegrityError(f"linked question {qid!r} does not resolve")
        at = now or utc_now()
        self.risk_register.append(entry)
        self.audit_log.append(AuditEvent(kind="risk_added", at=at, risk_id=entry.risk_id))
        self.updated_at = at
        return self

    @staticmethod
    def _category_principle(bank: QuestionBank, category_id: str) -> PrincipleId | None:
        for entry in bank.principles:
            for cat in entry.categories:
                if cat.id == category_id:
                    return entry.principle
        return None

    # -- lifecycle --------------------------------------------------------

    def close(self, now: datetime | None = None) -> "AssessmentSession":
        if self.closed_at is None:
            at = now or utc_now()
            self.closed_at = at
            self.audit_log.append(AuditEvent(kind="session_closed", at=at))
            self.updated_at = at
        return self

    # -- completion --------------------------------------------------------

    def open_question_ids(self, bank: QuestionBank) -> list[str]:
        profile = bank.profile(self.profile_id)
        if profile is None:
            raise UnknownProfile(f"no profile with id {self.profile_id!r}")
        return [qid for qid in profile.question_ids if qid not in self.answers]

    def is_complete(self, bank: QuestionBank) -> bool:
        return not self.open_question_ids(bank)

    # -- serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "session_id": self.session_id,
            "bank_version": self.bank_version,
            "profile_id": self.profile_id,
            "subject": self.subject,
            "created_at": self.created_at.isoformat(),
            "updated_at": self.updated_at.isoformat(),
            "threshold_override": self.threshold_override,
            "evidence_override": self.evidence_override,
            "closed_at": None if self.closed_at is None else self.closed_at.isoformat(),
            "answers": {qid: rec.to_dict() for qid, rec in self.answers.items()},
            "risk_register": [e.to_dict() for e in self.risk_register],
            "audit_log": [e.to_dict() for e in self.audit_log],
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "AssessmentSession":
        return cls(
            session_id=raw["session_id"],
            bank_version=raw["bank_version"],
            profile_id=raw["profile_id"],
            subject=raw["subject"],
            created_at=datetime.fromisoformat(raw["created_at"]),
            updated_at=datetime.fromisoformat(raw["updated_at"]),
            threshold_override=raw["threshold_override"],
            evidence_override=raw["evidence_override"],
            closed_at=(None if raw["closed_at"] is None
                       else datetime.fromisoformat(raw["closed_at"])),
            answers={qid: AnswerRecord.from_dict(rec) for qid, rec in raw["answers"].items()},
            risk_register=[RiskRegisterEntry.from_dict(e) for e in raw["risk_register"]],
            audit_log=[AuditEvent.from_dict(e) for e in raw["audit_log"]],
        )


def create_session(bank: QuestionBank, profile_id: str, subject: str, *,
                   session_id: str | None = None,
                   now: datetime | None = None,
                   threshold_override: int | None = None,
                   evidence_override: bool | None = None) -> AssessmentSession:
    """Open a fresh session over one profile; audit starts with a creation event."""
    if bank.profile(profile_id) is None:
        raise UnknownProfile(f"no profile with id {profile_id!r}")
    at = now or utc_now()
    session = AssessmentSession(
        session_id=session_id or uuid.uuid4().hex,
        bank_version=bank.version,
        profile_id=profile_id,
        subject=subject,
        created_at=at,
        updated_at=at,
        threshold_override=threshold_override,
        evidence_override=evidence_override,
    )
    session.audit_log.append(AuditEvent(kind="session_created", at=at))
    return session


def replay_answers(audit_log: list[AuditEvent]) -> dict[str, AnswerRecord]:
    """Reconstruct the answers map from the audit log alone."""
    answers: dict[str, AnswerRecord] = {}
    for event in audit_log:
        if event.kind == "answer_recorded" and event.question_id and event.record:
            answers[event.question_id] = AnswerRecord.from_dict(event.record)
    return answers


@dataclass(frozen=True)
class PrincipleRiskRow:
    principle: PrincipleId
    low: int
    medium: int
    high: int

    @property
    def medium_high(self) -> int:
        return self.medium + self.high


def principle_risk_summary(session: AssessmentSession,
                           bank: QuestionBank) -> list[PrincipleRiskRow]:
    """Register-entry counts by rating level under each principle, P1..P8 order.

    An entry counts under the principle owning its risk category.
    """
    counts = {p: {"Low": 0, "Medium": 0, "High": 0} for p in PrincipleId}
    for entry in session.risk_register:
        principle = AssessmentSession._category_principle(bank, entry.category_id)
        if principle is not None:
            counts[principle][entry.rating.level] += 1
    return [
        PrincipleRiskRow(p, counts[p]["Low"], counts[p]["Medium"], counts[p]["High"])
        for p in PrincipleId
    ]


def rank_principles_by_risk(rows: list[PrincipleRiskRow]) -> list[PrincipleRiskRow]:
    """Highest combined medium+high first; ties keep principle order."""
    return sorted(rows, key=lambda r: (-r.medium_high, r.principle.order))
