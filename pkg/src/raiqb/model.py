"""Question-bank domain model: hierarchy types, structural validation, summaries.

The bank is a strict hierarchy: eight principles, each holding one
principle-level question plus risk categories, sub-categories, and the
sub-questions that drive assessments.  Everything here is immutable after
construction and safe to share across threads; all operations are pure
functions of their inputs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from .errors import InvalidBank, NotFound

GLOBAL_ID_RE = re.compile(r"^QB-P([1-8])-(\d{3})$")


class PrincipleId(str, Enum):
    """The eight AI ethics principles, ordered P1..P8."""

    P1 = "P1"
    P2 = "P2"
    P3 = "P3"
    P4 = "P4"
    P5 = "P5"
    P6 = "P6"
    P7 = "P7"
    P8 = "P8"

    @property
    def display_name(self) -> str:
        return _PRINCIPLE_NAMES[self]

    @property
    def order(self) -> int:
        return int(self.value[1])


_PRINCIPLE_NAMES = {
    PrincipleId.P1: "Human, Societal and Environmental Wellbeing",
    PrincipleId.P2: "Human-centred Values",
    PrincipleId.P3: "Fairness",
    PrincipleId.P4: "Privacy and Security",
    PrincipleId.P5: "Reliability and Safety",
    PrincipleId.P6: "Transparency and Explainability",
    PrincipleId.P7: "Contestability",
    PrincipleId.P8: "Accountability",
}

QUESTION_LEVELS = (1, 2, 3)


class LifecycleStage(str, Enum):
    """AI system lifecycle stages, in lifecycle order."""

    PLANNING = "planning"
    REQUIREMENTS = "requirements"
    DESIGN = "design"
    IMPLEMENTATION = "implementation"
    TESTING = "testing"
    DEPLOYMENT = "deployment"
    OPERATION = "operation"

    @property
    def order(self) -> int:
        return _STAGE_ORDER[self]


_STAGE_ORDER = {stage: i for i, stage in enumerate(LifecycleStage)}

SEED_SOURCE_CODES = ("NIST", "EU", "AIA", "NSW", "MS", "EU-Act", "ISO")


class Gate(str, Enum):
    """When a follow-up becomes eligible relative to its parent's answer."""

    ALWAYS = "always"
    ON_NO = "on_no"
    ON_YES = "on_yes"


@dataclass(frozen=True)
class SourceFramework:
    """A reference framework questions can be traced back to."""

    code: str
    name: str


@dataclass(frozen=True)
class InternalId:
    """Provenance link: (source framework code, local reference in that source)."""

    source: str
    ref: str


@dataclass(frozen=True)
class Metric:
    """Quantitative prompt attached to a question (e.g. a count or percentage)."""

    name: str
    description: str = ""
    unit: str = ""


@dataclass(frozen=True)
class Question:
    """A single risk probe.

    ``category_id``/``subcategory_id`` bind the question to its place in the
    hierarchy (empty strings for principle questions).  ``follow_ups`` lists
    global ids of questions that become eligible once this one is answered,
    subject to each follow-up's own ``gate``.
    """

    global_id: str
    text: str
    level: int
    stage: LifecycleStage
    principle: PrincipleId
    category_id: str = ""
    subcategory_id: str = ""
    sources: tuple[str, ...] = ()
    internal_ids: tuple[InternalId, ...] = ()
    metric: Metric | None = None
    evidence_required: bool = False
    follow_ups: tuple[str, ...] = ()
    gate: Gate = Gate.ALWAYS

    def __post_init__(self) -> None:
        if self.level not in QUESTION_LEVELS:
            raise ValueError(f"question level must be 1, 2 or 3, got {self.level!r}")


@dataclass(frozen=True)
class SubCategory:
    id: str
    name: str
    questions: tuple[Question, ...] = ()

    @property
    def question_ids(self) -> tuple[str, ...]:
        return tuple(q.global_id for q in self.questions)


@dataclass(frozen=True)
class RiskCategory:
    id: str
    name: str
    principle: PrincipleId
    subcategories: tuple[SubCategory, ...] = ()


@dataclass(frozen=True)
class PrincipleEntry:
    principle: PrincipleId
    principle_question: Question
    categories: tuple[RiskCategory, ...] = ()


@dataclass(frozen=True)
class Profile:
    """A curated, ordered subset of bank questions for one assessment use case."""

    id: str
    name: str
    description: str = ""
    question_ids: tuple[str, ...] = ()
    evidence_required_override: bool | None = None
    threshold_default: int | None = None


@dataclass(frozen=True)
class QuestionBank:
    """Immutable registry of the full question hierarchy plus profiles."""

    version: str
    principles: tuple[PrincipleEntry, ...]
    profiles: tuple[Profile, ...] = ()
    source_registry: tuple[SourceFramework, ...] = ()

    def __post_init__(self) -> None:
        if tuple(e.principle for e in self.principles) != tuple(PrincipleId):
            raise ValueError("bank must hold exactly eight principle entries ordered P1..P8")
        by_id: dict[str, Question] = {}
        for q in self.all_questions():
            by_id.setdefault(q.global_id, q)  # first wins; duplicates surface in validate()
        object.__setattr__(self, "_by_id", by_id)
        object.__setattr__(self, "_profiles_by_id", {p.id: p for p in self.profiles})

    # -- iteration ------------------------------------------------------

    def iter_hierarchy(self) -> Iterator[tuple[PrincipleEntry, RiskCategory, SubCategory, Question]]:
        """Yield every sub-question exactly once, in hierarchy order."""
        for entry in self.principles:
            for cat in entry.categories:
                for sub in cat.subcategories:
                    for q in sub.questions:
                        yield entry, cat, sub, q

    def subquestions(self) -> list[Question]:
        return [q for _, _, _, q in self.iter_hierarchy()]

    def all_questions(self) -> list[Question]:
        """Principle questions followed by each principle's sub-questions."""
        out: list[Question] = []
        for entry in self.principles:
            out.append(entry.principle_question)
            for cat in entry.categories:
                for sub in cat.subcategories:
                    out.extend(sub.questions)
        return out

    # -- lookups --------------------------------------------------------

    def get(self, global_id: str) -> Question | None:
        return self._by_id.get(global_id)  # type: ignore[attr-defined]

    def profile(self, profile_id: str) -> Profile | None:
        return self._profiles_by_id.get(profile_id)  # type: ignore[attr-defined]

    def entry(self, principle: PrincipleId) -> PrincipleEntry:
        return self.principles[principle.order - 1]

    def source_codes(self) -> set[str]:
        return {s.code for s in self.source_registry}

    def max_sequence(self, principle: PrincipleId) -> int:
        """Highest numeric id sequence currently used under a principle."""
        prefix = f"QB-{principle.value}-"
        seqs = [
            int(m.group(2))
            for q in self.all_questions()
            if (m := GLOBAL_ID_RE.match(q.global_id)) and q.global_id.startswith(prefix)
        ]
        return max(seqs, default=0)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class Violation:
    severity: Severity
    path: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def errors(self) -> tuple[Violation, ...]:
        return tuple(v for v in self.violations if v.severity is Severity.ERROR)

    @property
    def warnings(self) -> tuple[Violation, ...]:
        return tuple(v for v in self.violations if v.severity is Severity.WARNING)

    @property
    def ok(self) -> bool:
        return not self.errors


def validate(bank: QuestionBank) -> ValidationReport:
    """Check every structural invariant; violations are data, not exceptions.

    Dangling ids, duplicate global ids, follow-up cycles, level-regression
    links, and binding mismatches are Errors; a principle with zero risk
    categories is a Warning.
    """
    out: list[Violation] = []

    def err(path: str, message: str) -> None:
        out.append(Violation(Severity.ERROR, path, message))

    def warn(path: str, message: str) -> None:
        out.append(Violation(Severity.WARNING, path, message))

    registry_codes: set[str] = set()
    for src in bank.source_registry:
        if src.code in registry_codes:
            err(f"sources[{src.code}]", "duplicate source framework code")
        registry_codes.add(src.code)

    # Gather (path, question, principle) triples over the whole hierarchy.
    located: list[tuple[str, Question, PrincipleId]] = []
    for entry in bank.principles:
        pid = entry.principle
        pq = entry.principle_question
        ppath = f"principles[{pid.value}]"
        located.append((f"{ppath}.principle_question", pq, pid))
        if pq.level != 1:
            err(f"{ppath}.principle_question", "principle question must have level 1")
        if pq.category_id or pq.subcategory_id:
            err(f"{ppath}.principle_question", "principle question must have an empty category binding")
        if not entry.categories:
            warn(ppath, "principle has no risk categories")
        for cat in entry.categories:
            cpath = f"{ppath}.categories[{cat.id}]"
            if cat.principle is not pid:
                err(cpath, "category bound to a different principle")
            sub_ids: set[str] = set()
            for sub in cat.subcategories:
                spath = f"{cpath}.subcategories[{sub.id}]"
                if sub.id in sub_ids:
                    err(spath, "duplicate sub-category id within category")
                sub_ids.add(sub.id)
                for q in sub.questions:
                    qpath = f"{spath}.questions[{q.global_id}]"
                    located.append((qpath, q, pid))
                    if q.principle is not pid:
                        err(qpath, "question bound to a different principle")
                    if q.category_id != cat.id or q.subcategory_id != sub.id:
                        err(qpath, "question category binding does not match its position")

    # Category ids live under exactly one principle.
    cat_owner: dict[str, PrincipleId] = {}
    for entry in bank.principles:
        for cat in entry.categories:
            if cat.id in cat_owner:
                err(f"principles[{entry.principle.value}].categories[{cat.id}]",
                    "category id already used under another principle"
                    if cat_owner[cat.id] is not entry.principle
                    else "duplicate category id within principle")
            else:
                cat_owner[cat.id] = entry.principle

    # Per-question checks.
    seen_ids: dict[str, str] = {}
    for qpath, q, pid in located:
        m = GLOBAL_ID_RE.match(q.global_id)
        if not m:
            err(qpath, "global id does not match QB-P<n>-<seq> format")
        elif f"P{m.group(1)}" != pid.value:
            err(qpath, "global id principle prefix does not match the question's principle")
        if q.global_id in seen_ids:
            err(qpath, "duplicate global id")
        else:
            seen_ids[q.global_id] = qpath
        if not q.text.strip():
            err(qpath, "question text is empty")
        if q.metric is not None and not q.metric.name.strip():
            err(qpath, "metric name is empty")
        for code in q.sources:
            if code not in registry_codes:
                err(qpath, f"source code {code!r} not in source registry")
        for iid in q.internal_ids:
            if iid.source not in registry_codes:
                err(qpath, f"internal id source {iid.source!r} not in source registry")
        if q.sources and not q.internal_ids:
            err(qpath, "question derived from a source must carry at least one internal id")

    # Follow-up link checks over the deduplicated id space.
    questions = {q.global_id: q for _, q, _ in located}
    paths = {q.global_id: qpath for qpath, q, _ in located}
    for gid, q in questions.items():
        for target_id in q.follow_ups:
            target = questions.get(target_id)
            if target is None:
                err(paths[gid], f"dangling follow-up {target_id!r}")
                continue
            if target.principle is not q.principle:
                err(paths[gid], f"follow-up {target_id!r} crosses principles")
            if target.level < q.level:
                err(paths[gid], f"follow-up {target_id!r} regresses from level {q.level} to {target.level}")

    for cycle in _follow_up_cycles(questions):
        err(paths[cycle[0]], "follow-up cycle: " + " -> ".join(cycle))

    # Profile references.
    profile_ids: set[str] = set()
    for profile in bank.profiles:
        ppath = f"profiles[{profile.id}]"
        if profile.id in profile_ids:
            err(ppath, "duplicate profile id")
        profile_ids.add(profile.id)
        seen_q: set[str] = set()
        for qid in profile.question_ids:
            if qid not in questions:
                err(ppath, f"dangling profile question {qid!r}")
            if qid in seen_q:
                err(ppath, f"duplicate profile question {qid!r}")
            seen_q.add(qid)

    return ValidationReport(tuple(out))


def _follow_up_cycles(questions: dict[str, Question]) -> list[list[str]]:
    """Return one witness cycle per strongly-connected follow-up loop."""
    WHITE, GREY, BLACK = 0, 1, 2
    color = dict.fromkeys(questions, WHITE)
    cycles: list[list[str]] = []

    def visit(gid: str, stack: list[str]) -> None:
        color[gid] = GREY
        stack.append(gid)
        for target in questions[gid].follow_ups:
            if target not in questions:
                continue
            if color[target] == GREY:
                cycles.append(stack[stack.index(target):] + [target])
            elif color[target] == WHITE:
                visit(target, stack)
        stack.pop()
        color[gid] = BLACK

    for gid in questions:
        if color[gid] == WHITE:
            visit(gid, [])
    return cycles


# ---------------------------------------------------------------------------
# Summaries and lookups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SummaryRow:
    principle: PrincipleId
    categories: int
    subcategories: int
    subquestions: int
    distinct_sources: int


@dataclass(frozen=True)
class BankSummary:
    """Per-principle structure counts; totals are the column sums of the rows."""

    rows: tuple[SummaryRow, ...]

    @property
    def totals(self) -> tuple[int, int, int, int]:
        return (
            sum(r.categories for r in self.rows),
            sum(r.subcategories for r in self.rows),
            sum(r.subquestions for r in self.rows),
            sum(r.distinct_sources for r in self.rows),
        )

    def row(self, principle: PrincipleId) -> SummaryRow:
        return self.rows[principle.order - 1]

    def to_dict(self) -> dict:
        cats, subs, qs, srcs = self.totals
        return {
            "rows": [
                {
                    "principle": r.principle.value,
                    "name": r.principle.display_name,
                    "categories": r.categories,
                    "subcategories": r.subcategories,
                    "subquestions": r.subquestions,
                    "distinct_sources": r.distinct_sources,
                }
                for r in self.rows
            ],
            "totals": {
                "categories": cats,
                "subcategories": subs,
                "subquestions": qs,
                "distinct_sources": srcs,
            },
        }


def summarize(bank: QuestionBank) -> BankSummary:
    """Count categories, sub-categories, sub-questions and distinct sources per principle.

    Principle questions are excluded from all counts.  Raises InvalidBank when
    the bank does not validate clean of errors.
    """
    report = validate(bank)
    if not report.ok:
        raise InvalidBank(
            f"bank has {len(report.errors)} validation error(s)",
            details=[f"{v.path}: {v.message}" for v in report.errors],
        )
    rows = []
    for entry in bank.principles:
        sources: set[str] = set()
        n_sub = 0
        n_q = 0
        for cat in entry.categories:
            for sub in cat.subcategories:
                n_sub += 1
                n_q += len(sub.questions)
                for q in sub.questions:
                    sources.update(q.sources)
        rows.append(SummaryRow(entry.principle, len(entry.categories), n_sub, n_q, len(sources)))
    return BankSummary(tuple(rows))


def find_question(bank: QuestionBank, global_id: str) -> Question:
    """Return the unique question with ``global_id`` or raise NotFound."""
    q = bank.get(global_id)
    if q is None:
        raise NotFound(f"no question with global id {global_id!r}")
    return q


def principle_question(bank: QuestionBank, principle: PrincipleId) -> Question:
    """The single level-1 question summarizing one principle."""
    return bank.entry(principle).principle_question
