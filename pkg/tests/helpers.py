"""Builders shared across test modules: tiny banks and randomized fixtures."""

from __future__ import annotations

import random
from dataclasses import replace

from raiqb.compliance import AnswerValue
from raiqb.model import (
    Gate,
    InternalId,
    LifecycleStage,
    PrincipleEntry,
    PrincipleId,
    Profile,
    Question,
    QuestionBank,
    RiskCategory,
    SourceFramework,
    SubCategory,
)

STAGES = tuple(LifecycleStage)
GATES = (Gate.ALWAYS, Gate.ON_NO, Gate.ON_YES)
ANSWERS = (AnswerValue.YES, AnswerValue.NO, AnswerValue.NOT_APPLICABLE)


def empty_entry(principle: PrincipleId) -> PrincipleEntry:
    return PrincipleEntry(
        principle,
        Question(
            global_id=f"QB-{principle.value}-000",
            text=f"Principle question for {principle.value}?",
            level=1,
            stage=LifecycleStage.PLANNING,
            principle=principle,
        ),
    )


def tiny_bank(questions: list[Question], profiles: tuple[Profile, ...] = (),
              sources: tuple[SourceFramework, ...] = ()) -> QuestionBank:
    """Single-subcategory bank under P1; remaining principles stay empty."""
    p1_questions = tuple(
        replace(quest, principle=PrincipleId.P1, category_id="c1", subcategory_id="s1")
        for quest in questions
    )
    entries = [
        PrincipleEntry(
            PrincipleId.P1,
            empty_entry(PrincipleId.P1).principle_question,
            (RiskCategory("c1", "Category 1", PrincipleId.P1,
                          (SubCategory("s1", "Sub 1", p1_questions),)),),
        )
    ]
    entries.extend(empty_entry(p) for p in list(PrincipleId)[1:])
    return QuestionBank("test", tuple(entries), profiles, sources)


def make_question(gid: str, text: str = "", level: int = 2,
                  stage: LifecycleStage = LifecycleStage.DESIGN,
                  follow_ups: tuple[str, ...] = (),
                  gate: Gate = Gate.ALWAYS,
                  sources: tuple[str, ...] = (),
                  internal_refs: tuple[tuple[str, str], ...] = (),
                  evidence_required: bool = False) -> Question:
    return Question(
        global_id=gid,
        text=text or f"Probe {gid}?",
        level=level,
        stage=stage,
        principle=PrincipleId.P1,
        category_id="c1",
        subcategory_id="s1",
        sources=sources,
        internal_ids=tuple(InternalId(s, r) for s, r in internal_refs),
        evidence_required=evidence_required,
        follow_ups=follow_ups,
        gate=gate,
    )


def random_nav_bank(rng: random.Random, max_questions: int = 50) -> QuestionBank:
    """Random bank with a DAG of follow-ups and random gates, plus one profile.

    Levels are assigned in ascending index order so any forward edge respects
    the no-level-regression rule.
    """
    n = rng.randint(1, max_questions)
    levels = sorted(rng.choices((1, 2, 3), k=n))
    gids = [f"QB-P1-{i + 1:03d}" for i in range(n)]

    follow_ups: list[list[str]] = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.12:
                follow_ups[i].append(gids[j])

    questions = [
        make_question(
            gids[i],
            level=levels[i],
            stage=STAGES[rng.randrange(len(STAGES))],
            follow_ups=tuple(follow_ups[i]),
            gate=GATES[rng.randrange(3)],
        )
        for i in range(n)
    ]
    order = list(range(n))
    rng.shuffle(order)
    profile = Profile(id="nav", name="Navigation trial",
                      question_ids=tuple(gids[i] for i in order))
    return tiny_bank(questions, profiles=(profile,))
