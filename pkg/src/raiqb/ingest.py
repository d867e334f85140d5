"""Bank interchange format: strict JSON parsing, canonical serialization, extensions.

The on-disk document is canonical JSON (see :mod:`raiqb.canonical`).  Parsing
is strict: unknown or missing keys are schema errors, and any content that
fails the model invariants surfaces as an IntegrityError wrapping the
validation report.  ``serialize_bank(parse_bank(d)) == d`` holds byte-for-byte
for canonical documents.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Any

from .canonical import canonical_dumps
from .errors import BankSyntaxError, IntegrityError, SchemaError
from .model import (
    Gate,
    InternalId,
    LifecycleStage,
    Metric,
    PrincipleEntry,
    PrincipleId,
    Profile,
    Question,
    QuestionBank,
    RiskCategory,
    SourceFramework,
    SubCategory,
    validate,
)

_QUESTION_KEYS = {
    "global_id", "text", "level", "stage", "sources", "internal_ids",
    "metric", "evidence_required", "follow_ups", "gate",
}
_CANDIDATE_KEYS = {
    "ref", "text", "level", "stage", "principle", "category_id", "subcategory_id",
    "metric", "evidence_required", "follow_ups", "gate",
}
_PROFILE_KEYS = {
    "id", "name", "description", "question_ids",
    "evidence_required_override", "threshold_default",
}


def _check_keys(obj: dict, required: set[str], path: str) -> None:
    if not isinstance(obj, dict):
        raise SchemaError(f"{path}: expected an object")
    unknown = set(obj) - required
    if unknown:
        raise SchemaError(f"{path}: unknown key(s) {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise SchemaError(f"{path}: missing key(s) {sorted(missing)}")


def _expect(value: Any, kind: type, path: str) -> Any:
    # bool is an int subclass; keep the two apart for schema purposes.
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise SchemaError(f"{path}: expected {kind.__name__}")
    return value


def _parse_enum(enum_cls: type, value: Any, path: str) -> Any:
    try:
        return enum_cls(value)
    except ValueError:
        allowed = [e.value for e in enum_cls]  # type: ignore[attr-defined]
        raise SchemaError(f"{path}: {value!r} not one of {allowed}") from None


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def parse_bank(document: str) -> QuestionBank:
    """Parse a bank document; the result always validates with zero errors."""
    bank = parse_bank_unchecked(document)
    report = validate(bank)
    if not report.ok:
        first = report.errors[0]
        raise IntegrityError(
            f"{first.message} (at {first.path})",
            details=[f"{v.path}: {v.message}" for v in report.errors],
        )
    return bank


def parse_bank_unchecked(document: str) -> QuestionBank:
    """Parse without the integrity gate (syntax and schema errors still raise).

    Used by tooling that wants to run :func:`raiqb.model.validate` itself and
    report the violations instead of failing on the first one.
    """
    try:
        raw = json.loads(document)
    except json.JSONDecodeError as exc:
        raise BankSyntaxError(f"malformed JSON: {exc.msg}", exc.lineno, exc.colno) from exc

    _check_keys(raw, {"version", "sources", "principles", "profiles"}, "$")
    version = _expect(raw["version"], str, "$.version")

    sources = []
    for i, src in enumerate(_expect(raw["sources"], list, "$.sources")):
        _check_keys(src, {"code", "name"}, f"$.sources[{i}]")
        sources.append(SourceFramework(_expect(src["code"], str, f"$.sources[{i}].code"),
                                       _expect(src["name"], str, f"$.sources[{i}].name")))

    principles = []
    raw_principles = _expect(raw["principles"], list, "$.principles")
    if len(raw_principles) != 8:
        raise SchemaError(f"$.principles: expected 8 entries, got {len(raw_principles)}")
    for i, entry in enumerate(raw_principles):
        path = f"$.principles[{i}]"
        _check_keys(entry, {"id", "name", "principle_question", "categories"}, path)
        pid = _parse_enum(PrincipleId, entry["id"], f"{path}.id")
        _expect(entry["name"], str, f"{path}.name")
        pq = _parse_question(entry["principle_question"], pid, "", "", f"{path}.principle_question")
        categories = []
        for j, cat in enumerate(_expect(entry["categories"], list, f"{path}.categories")):
            cpath = f"{path}.categories[{j}]"
            _check_keys(cat, {"id", "name", "subcategories"}, cpath)
            cat_id = _expect(cat["id"], str, f"{cpath}.id")
            subcategories = []
            for k, sub in enumerate(_expect(cat["subcategories"], list, f"{cpath}.subcategories")):
                spath = f"{cpath}.subcategories[{k}]"
                _check_keys(sub, {"id", "name", "questions"}, spath)
                sub_id = _expect(sub["id"], str, f"{spath}.id")
                questions = tuple(
                    _parse_question(q, pid, cat_id, sub_id, f"{spath}.questions[{m}]")
                    for m, q in enumerate(_expect(sub["questions"], list, f"{spath}.questions"))
                )
                subcategories.append(SubCategory(sub_id, _expect(sub["name"], str, f"{spath}.name"), questions))
            categories.append(RiskCategory(cat_id, _expect(cat["name"], str, f"{cpath}.name"),
                                           pid, tuple(subcategories)))
        principles.append(PrincipleEntry(pid, pq, tuple(categories)))

    profiles = []
    for i, prof in enumerate(_expect(raw["profiles"], list, "$.profiles")):
        path = f"$.profiles[{i}]"
        _check_keys(prof, _PROFILE_KEYS, path)
        override = prof["evidence_required_override"]
        if override is not None and not isinstance(override, bool):
            raise SchemaError(f"{path}.evidence_required_override: expected bool or null")
        threshold = prof["threshold_default"]
        if threshold is not None:
            _expect(threshold, int, f"{path}.threshold_default")
        profiles.append(Profile(
            id=_expect(prof["id"], str, f"{path}.id"),
            name=_expect(prof["name"], str, f"{path}.name"),
            description=_expect(prof["description"], str, f"{path}.description"),
            question_ids=tuple(_expect(q, str, f"{path}.question_ids[*]")
                               for q in _expect(prof["question_ids"], list, f"{path}.question_ids")),
            evidence_required_override=override,
            threshold_default=threshold,
        ))

    try:
        return QuestionBank(version, tuple(principles), tuple(profiles), tuple(sources))
    except ValueError as exc:
        raise SchemaError(f"$.principles: {exc}") from exc


def _parse_question(raw: Any, principle: PrincipleId, category_id: str,
                    subcategory_id: str, path: str) -> Question:
    _check_keys(raw, _QUESTION_KEYS, path)
    level = _expect(raw["level"], int, f"{path}.level")
    if level not in (1, 2, 3):
        raise SchemaError(f"{path}.level: must be 1, 2 or 3")
    internal_ids = []
    for i, iid in enumerate(_expect(raw["internal_ids"], list, f"{path}.internal_ids")):
        _check_keys(iid, {"source", "ref"}, f"{path}.internal_ids[{i}]")
        internal_ids.append(InternalId(_expect(iid["source"], str, f"{path}.internal_ids[{i}].source"),
                                       _expect(iid["ref"], str, f"{path}.internal_ids[{i}].ref")))
    metric = raw["metric"]
    if metric is not None:
        _check_keys(metric, {"name", "description", "unit"}, f"{path}.metric")
        metric = Metric(_expect(metric["name"], str, f"{path}.metric.name"),
                        _expect(metric["description"], str, f"{path}.metric.description"),
                        _expect(metric["unit"], str, f"{path}.metric.unit"))
    if not isinstance(raw["evidence_required"], bool):
        raise SchemaError(f"{path}.evidence_required: expected bool")
    return Question(
        global_id=_expect(raw["global_id"], str, f"{path}.global_id"),
        text=_expect(raw["text"], str, f"{path}.text"),
        level=level,
        stage=_parse_enum(LifecycleStage, raw["stage"], f"{path}.stage"),
        principle=principle,
        category_id=category_id,
        subcategory_id=subcategory_id,
        sources=tuple(_expect(s, str, f"{path}.sources[*]")
                      for s in _expect(raw["sources"], list, f"{path}.sources")),
        internal_ids=tuple(internal_ids),
        metric=metric,
        evidence_required=raw["evidence_required"],
        follow_ups=tuple(_expect(f, str, f"{path}.follow_ups[*]")
                         for f in _expect(raw["follow_ups"], list, f"{path}.follow_ups")),
        gate=_parse_enum(Gate, raw["gate"], f"{path}.gate"),
    )


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def question_to_dict(q: Question) -> dict:
    return {
        "global_id": q.global_id,
        "text": q.text,
        "level": q.level,
        "stage": q.stage.value,
        "sources": list(q.sources),
        "internal_ids": [{"source": i.source, "ref": i.ref} for i in q.internal_ids],
        "metric": None if q.metric is None else {
            "name": q.metric.name,
            "description": q.metric.description,
            "unit": q.metric.unit,
        },
        "evidence_required": q.evidence_required,
        "follow_ups": list(q.follow_ups),
        "gate": q.gate.value,
    }


def profile_to_dict(p: Profile) -> dict:
    return {
        "id": p.id,
        "name": p.name,
        "description": p.description,
        "question_ids": list(p.question_ids),
        "evidence_required_override": p.evidence_required_override,
        "threshold_default": p.threshold_default,
    }


def bank_to_dict(bank: QuestionBank) -> dict:
    return {
        "version": bank.version,
        "sources": [{"code": s.code, "name": s.name} for s in bank.source_registry],
        "principles": [
            {
                "id": entry.principle.value,
                "name": entry.principle.display_name,
                "principle_question": question_to_dict(entry.principle_question),
                "categories": [
                    {
                        "id": cat.id,
                        "name": cat.name,
                        "subcategories": [
                            {
                                "id": sub.id,
                                "name": sub.name,
                                "questions": [question_to_dict(q) for q in sub.questions],
                            }
                            for sub in cat.subcategories
                        ],
                    }
                    for cat in entry.categories
                ],
            }
            for entry in bank.principles
        ],
        "profiles": [profile_to_dict(p) for p in bank.profiles],
    }


def serialize_bank(bank: QuestionBank) -> str:
    """Canonical document for ``bank``; deterministic byte-for-byte."""
    return canonical_dumps(bank_to_dict(bank))


# ---------------------------------------------------------------------------
# Source extensions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CandidateQuestion:
    """A question proposed by a new source framework, before id assignment.

    ``ref`` is the candidate's local reference inside the extension source;
    it becomes the question's internal id and is what makes re-applying the
    same extension a no-op.
    """

    ref: str
    text: str
    level: int
    stage: LifecycleStage
    principle: PrincipleId
    category_id: str
    subcategory_id: str
    metric: Metric | None = None
    evidence_required: bool = False
    follow_ups: tuple[str, ...] = ()
    gate: Gate = Gate.ALWAYS


@dataclass(frozen=True)
class SourceExtension:
    """A reviewed batch of candidate questions from one source framework.

    Candidates judged to duplicate existing bank questions are declared in
    ``overlaps`` (candidate ref -> existing global id) instead of being added.
    """

    source: SourceFramework
    new_questions: tuple[CandidateQuestion, ...] = ()
    overlaps: tuple[tuple[str, str], ...] = ()


def parse_extension(document: str) -> SourceExtension:
    try:
        raw = json.loads(document)
    except json.JSONDecodeError as exc:
        raise BankSyntaxError(f"malformed JSON: {exc.msg}", exc.lineno, exc.colno) from exc

    _check_keys(raw, {"source", "new_questions", "overlaps"}, "$")
    _check_keys(raw["source"], {"code", "name"}, "$.source")
    source = SourceFramework(raw["source"]["code"], raw["source"]["name"])

    candidates = []
    for i, cand in enumerate(_expect(raw["new_questions"], list, "$.new_questions")):
        path = f"$.new_questions[{i}]"
        _check_keys(cand, _CANDIDATE_KEYS, path)
        level = _expect(cand["level"], int, f"{path}.level")
        if level not in (1, 2, 3):
            raise SchemaError(f"{path}.level: must be 1, 2 or 3")
        metric = cand["metric"]
        if metric is not None:
            _check_keys(metric, {"name", "description", "unit"}, f"{path}.metric")
            metric = Metric(metric["name"], metric["description"], metric["unit"])
        if not isinstance(cand["evidence_required"], bool):
            raise SchemaError(f"{path}.evidence_required: expected bool")
        candidates.append(CandidateQuestion(
            ref=_expect(cand["ref"], str, f"{path}.ref"),
            text=_expect(cand["text"], str, f"{path}.text"),
            level=level,
            stage=_parse_enum(LifecycleStage, cand["stage"], f"{path}.stage"),
            principle=_parse_enum(PrincipleId, cand["principle"], f"{path}.principle"),
            category_id=_expect(cand["category_id"], str, f"{path}.category_id"),
            subcategory_id=_expect(cand["subcategory_id"], str, f"{path}.subcategory_id"),
            metric=metric,
            evidence_required=cand["evidence_required"],
            follow_ups=tuple(_expect(f, str, f"{path}.follow_ups[*]")
                             for f in _expect(cand["follow_ups"], list, f"{path}.follow_ups")),
            gate=_parse_enum(Gate, cand["gate"], f"{path}.gate"),
        ))

    overlaps = []
    for i, ov in enumerate(_expect(raw["overlaps"], list, "$.overlaps")):
        path = f"$.overlaps[{i}]"
        _check_keys(ov, {"ref", "existing_global_id"}, path)
        overlaps.append((_expect(ov["ref"], str, f"{path}.ref"),
                         _expect(ov["existing_global_id"], str, f"{path}.existing_global_id")))

    candidate_refs = {c.ref for c in candidates}
    both = candidate_refs & {ref for ref, _ in overlaps}
    if both:
        raise SchemaError(f"$.overlaps: ref(s) {sorted(both)} also appear in new_questions")
    return SourceExtension(source, tuple(candidates), tuple(overlaps))


def extension_to_dict(ext: SourceExtension) -> dict:
    return {
        "source": {"code": ext.source.code, "name": ext.source.name},
        "new_questions": [
            {
                "ref": c.ref,
                "text": c.text,
                "level": c.level,
                "stage": c.stage.value,
                "principle": c.principle.value,
                "category_id": c.category_id,
                "subcategory_id": c.subcategory_id,
                "metric": None if c.metric is None else {
                    "name": c.metric.name,
                    "description": c.metric.description,
                    "unit": c.metric.unit,
                },
                "evidence_required": c.evidence_required,
                "follow_ups": list(c.follow_ups),
                "gate": c.gate.value,
            }
            for c in ext.new_questions
        ],
        "overlaps": [{"ref": ref, "existing_global_id": gid} for ref, gid in ext.overlaps],
    }


def serialize_extension(ext: SourceExtension) -> str:
    return canonical_dumps(extension_to_dict(ext))


def extend_bank(bank: QuestionBank, extension: SourceExtension) -> QuestionBank:
    """Fold a source extension into the bank.

    New questions get fresh global ids continuing each principle's sequence.
    Overlapped candidates are not added; the existing question instead gains
    the candidate's internal id and the source code.  Candidates whose
    internal id is already present anywhere in the bank are skipped, which
    makes the operation idempotent.  Existing question text is never touched.
    """
    code = extension.source.code
    known_internal = {(iid.source, iid.ref)
                      for q in bank.all_questions() for iid in q.internal_ids}

    # Per-question patches: global_id -> replacement question.
    patches: dict[str, Question] = {}
    for ref, gid in extension.overlaps:
        q = patches.get(gid) or bank.get(gid)
        if q is None:
            raise IntegrityError(f"overlap target {gid!r} does not resolve in the bank")
        if (code, ref) in {(i.source, i.ref) for i in q.internal_ids}:
            continue
        patches[gid] = replace(
            q,
            internal_ids=q.internal_ids + (InternalId(code, ref),),
            sources=q.sources if code in q.sources else q.sources + (code,),
        )

    # Additions keyed by (principle, category_id, subcategory_id).
    additions: dict[tuple[PrincipleId, str, str], list[Question]] = {}
    next_seq = {p: bank.max_sequence(p) for p in PrincipleId}
    valid_ids = {q.global_id for q in bank.all_questions()}
    for cand in extension.new_questions:
        if (code, cand.ref) in known_internal:
            continue
        placement = _resolve_placement(bank, cand)
        for target in cand.follow_ups:
            if target not in valid_ids:
                raise IntegrityError(
                    f"candidate {cand.ref!r} follow-up {target!r} does not resolve")
        next_seq[cand.principle] += 1
        gid = f"QB-{cand.principle.value}-{next_seq[cand.principle]:03d}"
        additions.setdefault(placement, []).append(Question(
            global_id=gid,
            text=cand.text,
            level=cand.level,
            stage=cand.stage,
            principle=cand.principle,
            category_id=cand.category_id,
            subcategory_id=cand.subcategory_id,
            sources=(code,),
            internal_ids=(InternalId(code, cand.ref),),
            metric=cand.metric,
            evidence_required=cand.evidence_required,
            follow_ups=cand.follow_ups,
            gate=cand.gate,
        ))

    if not patches and not additions and code in bank.source_codes():
        return bank

    registry = bank.source_registry
    if code not in bank.source_codes():
        registry = registry + (extension.source,)

    principles = tuple(
        PrincipleEntry(
            entry.principle,
            patches.get(entry.principle_question.global_id, entry.principle_question),
            tuple(
                RiskCategory(
                    cat.id, cat.name, cat.principle,
                    tuple(
                        SubCategory(
                            sub.id, sub.name,
                            tuple(patches.get(q.global_id, q) for q in sub.questions)
                            + tuple(additions.get((entry.principle, cat.id, sub.id), ())),
                        )
                        for sub in cat.subcategories
                    ),
                )
                for cat in entry.categories
            ),
        )
        for entry in bank.principles
    )
    extended = QuestionBank(bank.version, principles, bank.profiles, registry)

    report = validate(extended)
    if not report.ok:
        first = report.errors[0]
        raise IntegrityError(f"extension breaks bank integrity: {first.message} (at {first.path})",
                             details=[f"{v.path}: {v.message}" for v in report.errors])
    return extended


def _resolve_placement(bank: QuestionBank, cand: CandidateQuestion) -> tuple[PrincipleId, str, str]:
    entry = bank.entry(cand.principle)
    for cat in entry.categories:
        if cat.id == cand.category_id:
            for sub in cat.subcategories:
                if sub.id == cand.subcategory_id:
                    return (cand.principle, cat.id, sub.id)
            raise IntegrityError(
                f"candidate {cand.ref!r}: sub-category {cand.subcategory_id!r} "
                f"not found under category {cand.category_id!r}")
    raise IntegrityError(
        f"candidate {cand.ref!r}: category {cand.category_id!r} "
        f"not found under principle {cand.principle.value}")
