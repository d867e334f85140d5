"""Question selection: filtering, profile resolution, and tiered surfacing.

``next_questions`` drives a live session: profile questions with no parent in
the profile are eligible immediately; a follow-up becomes eligible only once
every parent inside the profile is answered and its gate matches each
parent's answer.  Parents outside the profile are ignored so that every
profile is completable on its own.
"""

from __future__ import annotations

from dataclasses import dataclass

from .compliance import AnswerValue
from .errors import UnknownProfile
from .model import Gate, LifecycleStage, PrincipleId, Question, QuestionBank


@dataclass(frozen=True)
class FilterCriteria:
    """Conjunctive filter over sub-questions; empty criteria match everything."""

    principles: frozenset[PrincipleId] | None = None
    levels: frozenset[int] | None = None
    stages: frozenset[LifecycleStage] | None = None
    category_ids: frozenset[str] | None = None
    sources: frozenset[str] | None = None
    text: str | None = None

    def matches(self, q: Question) -> bool:
        if self.principles is not None and q.principle not in self.principles:
            return False
        if self.levels is not None and q.level not in self.levels:
            return False
        if self.stages is not None and q.stage not in self.stages:
            return False
        if self.category_ids is not None and q.category_id not in self.category_ids:
            return False
        if self.sources is not None and not self.sources.intersection(q.sources):
            return False
        if self.text is not None and self.text.lower() not in q.text.lower():
            return False
        return True


def filter_questions(bank: QuestionBank, criteria: FilterCriteria) -> list[Question]:
    """All sub-questions satisfying every provided criterion.

    Ordered by (principle, level, stage order, global id), a total order.
    """
    hits = [q for q in bank.subquestions() if criteria.matches(q)]
    hits.sort(key=lambda q: (q.principle.order, q.level, q.stage.order, q.global_id))
    return hits


def select_profile(bank: QuestionBank, profile_id: str) -> list[Question]:
    """Resolve a profile to its questions, in profile order."""
    profile = bank.profile(profile_id)
    if profile is None:
        raise UnknownProfile(f"no profile with id {profile_id!r}")
    return [bank.get(qid) for qid in profile.question_ids]  # type: ignore[misc]


@dataclass(frozen=True)
class NavigationCursor:
    """Value snapshot of a session's position inside one profile.

    ``frontier`` holds the global ids eligible to ask next, already ordered;
    it never intersects ``answered``.
    """

    profile_id: str
    answered: frozenset[str] = frozenset()
    frontier: tuple[str, ...] = ()


def make_cursor(bank: QuestionBank, profile_id: str,
                answers: dict[str, AnswerValue] | None = None) -> NavigationCursor:
    """Build a cursor whose frontier reflects the given answers."""
    profile = bank.profile(profile_id)
    if profile is None:
        raise UnknownProfile(f"no profile with id {profile_id!r}")
    answers = answers or {}
    answered = frozenset(qid for qid in profile.question_ids if qid in answers)
    frontier = tuple(q.global_id for q in _eligible(bank, profile_id, answers))
    return NavigationCursor(profile_id, answered, frontier)


def next_questions(bank: QuestionBank, cursor: NavigationCursor,
                   answers: dict[str, AnswerValue], k: int = 1) -> list[Question]:
    """Up to ``k`` unanswered questions currently eligible under the cursor's profile.

    Pure in (bank, profile, answers): repeated calls with unchanged answers
    return identical results, and an answered question is never returned.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    return _eligible(bank, cursor.profile_id, answers)[:k]


def _eligible(bank: QuestionBank, profile_id: str,
              answers: dict[str, AnswerValue]) -> list[Question]:
    profile = bank.profile(profile_id)
    if profile is None:
        raise UnknownProfile(f"no profile with id {profile_id!r}")
    in_profile = set(profile.question_ids)
    order = {qid: i for i, qid in enumerate(profile.question_ids)}

    # parent edges restricted to the profile: child id -> [parent Question]
    parents: dict[str, list[Question]] = {qid: [] for qid in profile.question_ids}
    for qid in profile.question_ids:
        q = bank.get(qid)
        if q is None:
            continue
        for child in q.follow_ups:
            if child in in_profile:
                parents[child].append(q)

    out: list[Question] = []
    for qid in profile.question_ids:
        if qid in answers:
            continue
        q = bank.get(qid)
        if q is None:
            continue
        if all(_gate_open(q.gate, answers.get(p.global_id)) for p in parents[qid]):
            out.append(q)
    out.sort(key=lambda q: (q.level, order[q.global_id], q.global_id))
    return out


def _gate_open(gate: Gate, parent_answer: AnswerValue | None) -> bool:
    if parent_answer is None:
        return False
    if gate is Gate.ALWAYS:
        return True
    if gate is Gate.ON_NO:
        return parent_answer is AnswerValue.NO
    return parent_answer is AnswerValue.YES
