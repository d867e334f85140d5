"""Renderers for assessment and compliance outputs (Markdown, JSON, CSV).

Every export is a pure function of its inputs and byte-deterministic; the
compliance numbers shown are always taken from :mod:`raiqb.compliance`
outputs, never recomputed here.
"""

from __future__ import annotations

import csv
import io
from enum import Enum

from .assessment import AssessmentSession, principle_risk_summary, rank_principles_by_risk
from .canonical import canonical_dumps
from .compliance import ComplianceReport, RequirementSet, compliance_report
from .errors import MissingAnswer, UnknownFormat
from .model import QuestionBank


class ReportFormat(str, Enum):
    MARKDOWN = "md"
    JSON = "json"
    CSV = "csv"


def _parse_format(fmt: str | ReportFormat, allowed: tuple[ReportFormat, ...]) -> ReportFormat:
    try:
        parsed = ReportFormat(fmt) if not isinstance(fmt, ReportFormat) else fmt
    except ValueError:
        raise UnknownFormat(f"unknown format {fmt!r}") from None
    if parsed not in allowed:
        raise UnknownFormat(
            f"format {parsed.value!r} not supported here (use one of "
            f"{[f.value for f in allowed]})")
    return parsed


def _csv_document(header: list[str], rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Assessment report
# ---------------------------------------------------------------------------


def render_assessment_report(session: AssessmentSession, bank: QuestionBank,
                             fmt: str | ReportFormat = ReportFormat.MARKDOWN,
                             requirement_set: RequirementSet | None = None,
                             threshold: int | None = None) -> str:
    """Full session report: identity, completion, risk ranking, compliance, answers.

    The compliance section appears only when a requirement set is attached
    and reuses the compliance module's numbers verbatim.
    """
    parsed = _parse_format(fmt, (ReportFormat.MARKDOWN, ReportFormat.JSON))
    profile = bank.profile(session.profile_id)
    total = len(profile.question_ids) if profile else 0
    answered_ids = [qid for qid in (profile.question_ids if profile else ())
                    if qid in session.answers]
    unanswered_ids = [qid for qid in (profile.question_ids if profile else ())
                      if qid not in session.answers]
    risk_rows = rank_principles_by_risk(principle_risk_summary(session, bank))

    report: ComplianceReport | None = None
    compliance_error: str | None = None
    if requirement_set is not None:
        if threshold is None:
            threshold = session.threshold_override
        try:
            report = compliance_report(requirement_set, session.answer_values(), threshold)
        except MissingAnswer as exc:
            compliance_error = exc.message

    if parsed is ReportFormat.JSON:
        return canonical_dumps({
            "subject": session.subject,
            "session_id": session.session_id,
            "profile_id": session.profile_id,
            "profile_name": profile.name if profile else "",
            "bank_version": session.bank_version,
            "created_at": session.created_at.isoformat(),
            "updated_at": session.updated_at.isoformat(),
            "closed": session.closed_at is not None,
            "completion": {"answered": len(answered_ids), "total": total},
            "principle_risks": [
                {"principle": r.principle.value, "low": r.low,
                 "medium": r.medium, "high": r.high}
                for r in risk_rows
            ],
            "compliance": report.to_dict() if report else None,
            "compliance_error": compliance_error,
            "unanswered": unanswered_ids,
            "answers": {qid: session.answers[qid].to_dict() for qid in answered_ids},
        })

    lines: list[str] = []
    lines.append(f"# Assessment Report: {session.subject}")
    lines.append("")
    lines.append(f"- Session: `{session.session_id}`")
    lines.append(f"- Profile: {profile.name if profile else session.profile_id}"
                 f" (`{session.profile_id}`)")
    lines.append(f"- Bank version: {session.bank_version}")
    lines.append(f"- Created: {session.created_at.isoformat()}")
    lines.append(f"- Updated: {session.updated_at.isoformat()}")
    lines.append(f"- Status: {'closed' if session.closed_at is not None else 'open'}")
    lines.append("")
    lines.append("## Completion")
    lines.append("")
    lines.append(f"Answered {len(answered_ids)}/{total} questions.")
    lines.append("")
    lines.append("## Principle Risk Summary")
    lines.append("")
    if session.risk_register:
        lines.append("Ranked by combined medium + high risk count.")
        lines.append("")
        lines.append("| Principle | Low | Medium | High |")
        lines.append("| --- | ---: | ---: | ---: |")
        for row in risk_rows:
            lines.append(f"| {row.principle.value}. {row.principle.display_name}"
                         f" | {row.low} | {row.medium} | {row.high} |")
    else:
        lines.append("No risks recorded.")
    lines.append("")

    if requirement_set is not None:
        lines.append("## Compliance")
        lines.append("")
        lines.append(f"- Requirement set: {requirement_set.name} (`{requirement_set.id}`)")
        if report is not None:
            res = report.result
            lines.append(f"- Score: {res.score}/{res.n_applicable}"
                         f" (threshold {res.threshold}, {res.n_total} mapped)")
            lines.append(f"- Level: **{res.level.label}**")
            lines.append("")
            status_by_id = dict(report.statuses)
            for req in requirement_set.requirements:
                status = status_by_id[req.id]
                lines.append(f"### {req.category} ({req.id}): {status.label}")
                lines.append("")
                for qid in requirement_set.rows_for(req.id):
                    q = bank.get(qid)
                    answer = session.answers.get(qid)
                    label = answer.value.label if answer else "-"
                    text = q.text if q else qid
                    lines.append(f"- [{label}] `{qid}` {text}")
                lines.append("")
        else:
            lines.append(f"- Not scorable: {compliance_error}")
            lines.append("")

    lines.append("## Unanswered Questions")
    lines.append("")
    if unanswered_ids:
        for qid in unanswered_ids:
            q = bank.get(qid)
            lines.append(f"- `{qid}` {q.text if q else ''}")
    else:
        lines.append("None.")
    lines.append("")
    lines.append("## Answers")
    lines.append("")
    if answered_ids:
        lines.append("| Question | Answer | Evidence | Metric |")
        lines.append("| --- | --- | --- | --- |")
        for qid in answered_ids:
            rec = session.answers[qid]
            metric = "" if rec.metric_value is None else f"{rec.metric_value} {rec.metric_unit}".strip()
            evidence = rec.evidence.replace("|", "\\|").replace("\n", " ")
            lines.append(f"| `{qid}` | {rec.value.label} | {evidence} | {metric} |")
    else:
        lines.append("No answers recorded.")
    lines.append("")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Traceability matrix
# ---------------------------------------------------------------------------


def export_traceability_matrix(requirement_set: RequirementSet,
                               session: AssessmentSession, bank: QuestionBank,
                               fmt: str | ReportFormat = ReportFormat.CSV) -> str:
    """One row per (requirement, mapped question), sorted by (requirement, question).

    CSV header: ``requirement_id,section,question_id,answer,evidence_present,status``.
    """
    parsed = _parse_format(fmt, (ReportFormat.CSV, ReportFormat.JSON))
    # Statuses come from the compliance module (raises CoverageGap/MissingAnswer).
    report = compliance_report(requirement_set, session.answer_values())
    status_by_id = dict(report.statuses)

    rows = []
    for req in requirement_set.requirements:
        for qid in requirement_set.rows_for(req.id):
            record = session.answers[qid]
            q = bank.get(qid)
            rows.append({
                "requirement_id": req.id,
                "section": req.section,
                "question_id": qid,
                "question_text": q.text if q else "",
                "answer": record.value.label,
                "evidence_present": bool(record.evidence.strip()),
                "status": status_by_id[req.id].label,
            })
    rows.sort(key=lambda r: (r["requirement_id"], r["question_id"]))

    if parsed is ReportFormat.JSON:
        return canonical_dumps(rows)
    return _csv_document(
        ["requirement_id", "section", "question_id", "answer", "evidence_present", "status"],
        [[r["requirement_id"], r["section"], r["question_id"], r["answer"],
          "true" if r["evidence_present"] else "false", r["status"]] for r in rows],
    )


# ---------------------------------------------------------------------------
# Risk register
# ---------------------------------------------------------------------------

_REGISTER_HEADER = [
    "risk_id", "category_id", "title", "description", "causes",
    "existing_mitigations", "owner", "linked_question_ids",
    "impact", "probability", "score", "level",
]


def export_risk_register(session: AssessmentSession,
                         fmt: str | ReportFormat = ReportFormat.CSV) -> str:
    """The full register with computed rating levels, as CSV or JSON."""
    parsed = _parse_format(fmt, (ReportFormat.CSV, ReportFormat.JSON))
    if parsed is ReportFormat.JSON:
        return canonical_dumps([e.to_dict() for e in session.risk_register])
    return _csv_document(_REGISTER_HEADER, [
        [
            e.risk_id, e.category_id, e.title, e.description, e.causes,
            e.existing_mitigations, e.owner, ";".join(e.linked_question_ids),
            str(e.rating.impact), str(e.rating.probability),
            str(e.rating.score), e.rating.level,
        ]
        for e in session.risk_register
    ])
