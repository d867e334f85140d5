"""Regulation requirements, requirement-to-question mappings, and compliance scoring.

Scoring: each applicable mapped question contributes its weight (default 1)
when answered Yes and nothing when answered No; Not-Applicable answers are
exempt from scoring entirely.  The resulting score S is cut against a
threshold T: full compliance means every applicable question scored, partial
means T <= S below full, anything under T is non-compliant.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum

from .canonical import canonical_dumps
from .errors import (
    BankSyntaxError,
    CoverageGap,
    InvalidThreshold,
    MissingAnswer,
    SchemaError,
    UnknownQuestion,
)
from .model import PrincipleId, QuestionBank


class AnswerValue(str, Enum):
    """Assessment answer vocabulary; N/A is exempt from scoring."""

    YES = "yes"
    NO = "no"
    NOT_APPLICABLE = "na"

    @property
    def label(self) -> str:
        return {"yes": "Yes", "no": "No", "na": "NA"}[self.value]

    @property
    def score(self) -> int:
        return 1 if self is AnswerValue.YES else 0


class ComplianceLevel(str, Enum):
    FULL = "full_compliance"
    PARTIAL = "partial_compliance"
    NON_COMPLIANT = "non_compliant"
    NOT_APPLICABLE = "not_applicable"

    @property
    def label(self) -> str:
        return {
            "full_compliance": "Full Compliance",
            "partial_compliance": "Partial Compliance",
            "non_compliant": "Non-Compliant",
            "not_applicable": "Not Applicable",
        }[self.value]


# Levels ordered for monotonicity checks; NOT_APPLICABLE sits outside the order.
LEVEL_ORDER = {
    ComplianceLevel.NON_COMPLIANT: 0,
    ComplianceLevel.PARTIAL: 1,
    ComplianceLevel.FULL: 2,
}


class RequirementStatus(str, Enum):
    SATISFIED = "satisfied"
    PARTIALLY_SATISFIED = "partially_satisfied"
    UNSATISFIED = "unsatisfied"
    NOT_APPLICABLE = "not_applicable"

    @property
    def label(self) -> str:
        return {
            "satisfied": "Satisfied",
            "partially_satisfied": "Partially Satisfied",
            "unsatisfied": "Unsatisfied",
            "not_applicable": "Not Applicable",
        }[self.value]


@dataclass(frozen=True)
class Requirement:
    """One regulation clause (e.g. an EU AI Act high-risk obligation)."""

    id: str
    category: str
    description: str
    section: str
    principle: PrincipleId


@dataclass(frozen=True)
class RequirementSet:
    """Requirements plus their question mapping and optional follow-up links.

    ``mapping`` rows are (requirement_id, question_global_id); every
    requirement needs at least one row to be covered.  ``followups`` rows are
    (question_id, subsequent_question_id) with at most one row per question.
    """

    id: str
    name: str
    requirements: tuple[Requirement, ...] = ()
    mapping: tuple[tuple[str, str], ...] = ()
    followups: tuple[tuple[str, str], ...] = ()
    default_threshold: int | None = None

    def requirement(self, req_id: str) -> Requirement | None:
        for r in self.requirements:
            if r.id == req_id:
                return r
        return None

    def mapped_question_ids(self) -> list[str]:
        """Distinct mapped question ids, first-occurrence order."""
        return list(dict.fromkeys(qid for _, qid in self.mapping))

    def rows_for(self, req_id: str) -> list[str]:
        return [qid for rid, qid in self.mapping if rid == req_id]


@dataclass(frozen=True)
class CoverageReport:
    covered: tuple[str, ...]
    uncovered: tuple[str, ...]
    dangling: tuple[tuple[str, str], ...]

    @property
    def ok(self) -> bool:
        return not self.uncovered and not self.dangling

    def to_dict(self) -> dict:
        return {
            "covered": list(self.covered),
            "uncovered": list(self.uncovered),
            "dangling": [list(row) for row in self.dangling],
            "ok": self.ok,
        }


@dataclass(frozen=True)
class ComplianceResult:
    """Aggregate outcome: score S over the applicable mapped questions."""

    score: int
    n_total: int
    n_applicable: int
    threshold: int
    level: ComplianceLevel

    def to_dict(self) -> dict:
        return {
            "score": self.score,
            "n_total": self.n_total,
            "n_applicable": self.n_applicable,
            "threshold": self.threshold,
            "level": self.level.value,
            "label": f"{self.level.label} ({self.score}/{self.n_applicable})",
        }


@dataclass(frozen=True)
class ComplianceReport:
    """Per-requirement statuses plus the aggregate result."""

    set_id: str
    statuses: tuple[tuple[str, RequirementStatus], ...]
    result: ComplianceResult

    def to_dict(self) -> dict:
        return {
            "set": self.set_id,
            "requirements": [{"id": rid, "status": st.value} for rid, st in self.statuses],
            "result": self.result.to_dict(),
        }


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def coverage_check(requirement_set: RequirementSet, bank: QuestionBank) -> CoverageReport:
    """Which requirements are addressed by at least one resolving mapping row.

    ``dangling`` collects rows whose requirement id or question id does not
    resolve; such rows do not count towards coverage.
    """
    req_ids = {r.id for r in requirement_set.requirements}
    covered: set[str] = set()
    dangling: list[tuple[str, str]] = []
    for rid, qid in requirement_set.mapping:
        if rid not in req_ids or bank.get(qid) is None:
            dangling.append((rid, qid))
        else:
            covered.add(rid)
    uncovered = [r.id for r in requirement_set.requirements if r.id not in covered]
    return CoverageReport(
        covered=tuple(r.id for r in requirement_set.requirements if r.id in covered),
        uncovered=tuple(uncovered),
        dangling=tuple(dangling),
    )


def compliance_score(requirement_set: RequirementSet,
                     answers: dict[str, AnswerValue],
                     weights: dict[str, int] | None = None) -> tuple[int, int, int]:
    """Return (S, n_total, n_applicable) over the distinct mapped questions.

    Every mapped question must be answered.  ``weights`` may assign positive
    integer weights per question id (default 1 each); keys outside the
    mapping are rejected.
    """
    mapped = requirement_set.mapped_question_ids()
    if weights:
        unknown = set(weights) - set(mapped)
        if unknown:
            raise UnknownQuestion(f"weight(s) for unmapped question(s): {sorted(unknown)}")
        for qid, w in weights.items():
            if not isinstance(w, int) or isinstance(w, bool) or w < 1:
                raise UnknownQuestion(f"weight for {qid!r} must be a positive integer")
    missing = [qid for qid in mapped if qid not in answers]
    if missing:
        raise MissingAnswer(missing)

    score = 0
    n_applicable = 0
    for qid in mapped:
        answer = answers[qid]
        if answer is AnswerValue.NOT_APPLICABLE:
            continue
        n_applicable += 1
        score += (weights.get(qid, 1) if weights else 1) * answer.score
    return score, len(mapped), n_applicable


def compliance_level(score: int, threshold: int, n_applicable: int) -> ComplianceLevel:
    """Cut a score against the threshold.

    Full compliance iff S equals the applicable count (and any question was
    applicable); partial iff T <= S below that; non-compliant below T.  With
    nothing applicable the level is Not Applicable.
    """
    if n_applicable == 0:
        return ComplianceLevel.NOT_APPLICABLE
    if not 1 <= threshold <= n_applicable:
        raise InvalidThreshold(
            f"threshold {threshold} outside [1, {n_applicable}]")
    if score == n_applicable:
        return ComplianceLevel.FULL
    if threshold <= score:
        return ComplianceLevel.PARTIAL
    return ComplianceLevel.NON_COMPLIANT


def default_threshold(n_applicable: int) -> int:
    """Threshold used when neither the caller nor the set provides one."""
    return max(1, math.ceil(0.7 * n_applicable))


def resolve_threshold(requirement_set: RequirementSet, n_applicable: int,
                      override: int | None = None) -> int:
    """Explicit override, else the set's default, else ceil(0.7 * applicable)."""
    if override is not None:
        return override
    if requirement_set.default_threshold is not None:
        return requirement_set.default_threshold
    return default_threshold(n_applicable)


def score_requirement_set(requirement_set: RequirementSet,
                          answers: dict[str, AnswerValue],
                          threshold: int | None = None,
                          weights: dict[str, int] | None = None) -> ComplianceResult:
    """Convenience wrapper combining score, threshold resolution and level."""
    s, n_total, n_applicable = compliance_score(requirement_set, answers, weights)
    t = resolve_threshold(requirement_set, n_applicable, threshold)
    if n_applicable == 0:
        t = max(1, t)
        return ComplianceResult(s, n_total, n_applicable, t, ComplianceLevel.NOT_APPLICABLE)
    return ComplianceResult(s, n_total, n_applicable, t, compliance_level(s, t, n_applicable))


def requirement_status(answers_for_requirement: list[AnswerValue]) -> RequirementStatus:
    """Status of one requirement from the answers to its mapped questions."""
    applicable = [a for a in answers_for_requirement if a is not AnswerValue.NOT_APPLICABLE]
    if not applicable:
        return RequirementStatus.NOT_APPLICABLE
    if all(a is AnswerValue.YES for a in applicable):
        return RequirementStatus.SATISFIED
    if all(a is AnswerValue.NO for a in applicable):
        return RequirementStatus.UNSATISFIED
    return RequirementStatus.PARTIALLY_SATISFIED


def compliance_report(requirement_set: RequirementSet,
                      answers: dict[str, AnswerValue],
                      threshold: int | None = None,
                      weights: dict[str, int] | None = None) -> ComplianceReport:
    """Per-requirement statuses plus the aggregate ComplianceResult.

    Requires full coverage (every requirement mapped) and an answer for every
    mapped question.
    """
    uncovered = [r.id for r in requirement_set.requirements
                 if not requirement_set.rows_for(r.id)]
    if uncovered:
        raise CoverageGap(f"requirement(s) without mapping rows: {', '.join(uncovered)}",
                          details={"uncovered": uncovered})
    result = score_requirement_set(requirement_set, answers, threshold, weights)
    statuses = tuple(
        (r.id, requirement_status([answers[qid] for qid in requirement_set.rows_for(r.id)]))
        for r in requirement_set.requirements
    )
    return ComplianceReport(requirement_set.id, statuses, result)


# ---------------------------------------------------------------------------
# Interchange format
# ---------------------------------------------------------------------------

_SET_KEYS = {"id", "name", "requirements", "mapping", "followups", "default_threshold"}
_REQ_KEYS = {"id", "category", "description", "section", "principle"}


def parse_requirement_set(document: str) -> RequirementSet:
    try:
        raw = json.loads(document)
    except json.JSONDecodeError as exc:
        raise BankSyntaxError(f"malformed JSON: {exc.msg}", exc.lineno, exc.colno) from exc
    if not isinstance(raw, dict):
        raise SchemaError("$: expected an object")
    unknown = set(raw) - _SET_KEYS
    if unknown:
        raise SchemaError(f"$: unknown key(s) {sorted(unknown)}")
    missing = _SET_KEYS - set(raw)
    if missing:
        raise SchemaError(f"$: missing key(s) {sorted(missing)}")

    requirements = []
    seen: set[str] = set()
    for i, req in enumerate(raw["requirements"]):
        path = f"$.requirements[{i}]"
        if not isinstance(req, dict) or set(req) != _REQ_KEYS:
            raise SchemaError(f"{path}: expected keys {sorted(_REQ_KEYS)}")
        try:
            principle = PrincipleId(req["principle"])
        except ValueError:
            raise SchemaError(f"{path}.principle: {req['principle']!r} is not P1..P8") from None
        if req["id"] in seen:
            raise SchemaError(f"{path}.id: duplicate requirement id {req['id']!r}")
        seen.add(req["id"])
        requirements.append(Requirement(req["id"], req["category"], req["description"],
                                        req["section"], principle))

    mapping = []
    for i, row in enumerate(raw["mapping"]):
        if not isinstance(row, list) or len(row) != 2:
            raise SchemaError(f"$.mapping[{i}]: expected [requirement_id, question_id]")
        mapping.append((row[0], row[1]))

    followups = []
    seen_parents: set[str] = set()
    for i, row in enumerate(raw["followups"]):
        if not isinstance(row, list) or len(row) != 2:
            raise SchemaError(f"$.followups[{i}]: expected [question_id, question_id]")
        if row[0] in seen_parents:
            raise SchemaError(f"$.followups[{i}]: question {row[0]!r} already has a follow-up row")
        seen_parents.add(row[0])
        followups.append((row[0], row[1]))

    threshold = raw["default_threshold"]
    if threshold is not None and (not isinstance(threshold, int) or isinstance(threshold, bool)):
        raise SchemaError("$.default_threshold: expected integer or null")

    return RequirementSet(raw["id"], raw["name"], tuple(requirements),
                          tuple(mapping), tuple(followups), threshold)


def requirement_set_to_dict(rs: RequirementSet) -> dict:
    return {
        "id": rs.id,
        "name": rs.name,
        "requirements": [
            {
                "id": r.id,
                "category": r.category,
                "description": r.description,
                "section": r.section,
                "principle": r.principle.value,
            }
            for r in rs.requirements
        ],
        "mapping": [list(row) for row in rs.mapping],
        "followups": [list(row) for row in rs.followups],
        "default_threshold": rs.default_threshold,
    }


def serialize_requirement_set(rs: RequirementSet) -> str:
    return canonical_dumps(requirement_set_to_dict(rs))
