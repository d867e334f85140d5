"""``rai`` command line tool.

Exit codes: 0 success, 1 validation/scoring findings (e.g. a non-compliant
score or a bank that fails validation), 2 usage or IO errors.  Errors go to
stderr with a machine-parsable ``error[<CODE>]:`` prefix.

Environment: RAI_BANK / RAI_STORE / RAI_BIND mirror the --bank / --store /
--bind options (flags win).  RAI_NOW (ISO-8601) injects a fixed clock so
scripted runs are byte-reproducible.
"""

from __future__ import annotations

import functools
import json
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

import click

from . import seeds
from .assessment import AnswerRecord, create_session, utc_now
from .compliance import (
    AnswerValue,
    ComplianceLevel,
    RequirementSet,
    parse_requirement_set,
    score_requirement_set,
)
from .errors import MissingAnswer, NotFound, RaiError
from .ingest import parse_bank, parse_bank_unchecked
from .model import LifecycleStage, PrincipleId, QuestionBank, Severity, summarize, validate
from .navigator import FilterCriteria, filter_questions, make_cursor, next_questions
from .reporting import export_risk_register, export_traceability_matrix, render_assessment_report
from .store import SessionStore


def _now() -> datetime:
    fixed = os.environ.get("RAI_NOW")
    if fixed:
        try:
            parsed = datetime.fromisoformat(fixed)
        except ValueError:
            raise RaiError(f"RAI_NOW is not an ISO-8601 timestamp: {fixed!r}") from None
        return parsed if parsed.tzinfo else parsed.replace(tzinfo=timezone.utc)
    return utc_now()


def _fail(exc: RaiError) -> None:
    click.echo(f"error[{exc.code}]: {exc.message}", err=True)
    sys.exit(2)


def rai_errors(func):
    """Map uncaught RaiErrors to exit code 2 with the standard prefix."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except RaiError as exc:
            _fail(exc)

    return wrapper


class Context:
    def __init__(self, bank_path: str | None, store_dir: str,
                 requirements_paths: tuple[str, ...]) -> None:
        self.bank_path = bank_path
        self.store_dir = store_dir
        self.requirements_paths = requirements_paths
        self._bank: QuestionBank | None = None

    @property
    def bank(self) -> QuestionBank:
        if self._bank is None:
            path = Path(self.bank_path) if self.bank_path else seeds.seed_bank_path()
            self._bank = parse_bank(path.read_text(encoding="utf-8"))
        return self._bank

    @property
    def store(self) -> SessionStore:
        return SessionStore(self.store_dir)

    def requirement_set(self, set_id: str) -> RequirementSet:
        for path in self.requirements_paths:
            rs = parse_requirement_set(Path(path).read_text(encoding="utf-8"))
            if rs.id == set_id:
                return rs
        if not self.requirements_paths and set_id in seeds.REQUIREMENT_SET_FILES:
            return seeds.load_requirement_set(set_id)
        raise NotFound(f"no requirement set with id {set_id!r}")


@click.group()
@click.option("--bank", "bank_path", envvar="RAI_BANK", default=None,
              help="Bank document path (default: packaged seed bank).")
@click.option("--store", "store_dir", envvar="RAI_STORE", default="sessions",
              show_default=True, help="Session store directory.")
@click.option("--requirements", "requirements_paths", multiple=True,
              help="Requirement set document(s); repeatable. "
                   "Default: the packaged sets.")
@click.pass_context
def main(ctx: click.Context, bank_path: str | None, store_dir: str,
         requirements_paths: tuple[str, ...]) -> None:
    """Responsible-AI question bank: assessments, navigation, compliance scoring."""
    ctx.obj = Context(bank_path, store_dir, requirements_paths)


# -- bank commands -----------------------------------------------------------


@main.command("validate")
@click.argument("bank_file", type=click.Path(exists=True, dir_okay=False))
@rai_errors
def validate_cmd(bank_file: str) -> None:
    """Check a bank document against every structural invariant."""
    bank = parse_bank_unchecked(Path(bank_file).read_text(encoding="utf-8"))
    report = validate(bank)
    for violation in report.violations:
        stream_err = violation.severity is Severity.ERROR
        click.echo(f"{violation.severity.value}: {violation.path}: {violation.message}",
                   err=stream_err)
    if not report.ok:
        sys.exit(1)
    click.echo(f"OK: {len(bank.subquestions())} sub-questions, "
               f"{len(report.warnings)} warning(s)")


@main.command("stats")
@click.argument("bank_file", type=click.Path(exists=True, dir_okay=False), required=False)
@click.pass_obj
@rai_errors
def stats_cmd(ctx: Context, bank_file: str | None) -> None:
    """Per-principle structure counts plus the totals row."""
    if bank_file:
        bank = parse_bank(Path(bank_file).read_text(encoding="utf-8"))
    else:
        bank = ctx.bank
    summary = summarize(bank)
    click.echo("principle categories subcategories subquestions sources")
    for row in summary.rows:
        click.echo(f"{row.principle.value} {row.categories} {row.subcategories} "
                   f"{row.subquestions} {row.distinct_sources}")
    cats, subs, qs, srcs = summary.totals
    click.echo(f"total {cats} {subs} {qs} {srcs}")


@main.command("filter")
@click.option("--principle", "principles", multiple=True,
              type=click.Choice([p.value for p in PrincipleId]))
@click.option("--level", "levels", multiple=True, type=click.IntRange(1, 3))
@click.option("--stage", "stages", multiple=True,
              type=click.Choice([s.value for s in LifecycleStage]))
@click.option("--source", "sources", multiple=True)
@click.option("--q", "text", default=None, help="Substring of the question text.")
@click.pass_obj
@rai_errors
def filter_cmd(ctx: Context, principles, levels, stages, sources, text) -> None:
    """List sub-questions matching every given criterion."""
    criteria = FilterCriteria(
        principles=frozenset(PrincipleId(p) for p in principles) if principles else None,
        levels=frozenset(levels) if levels else None,
        stages=frozenset(LifecycleStage(s) for s in stages) if stages else None,
        sources=frozenset(sources) if sources else None,
        text=text,
    )
    for q in filter_questions(ctx.bank, criteria):
        click.echo(f"{q.global_id} [L{q.level} {q.stage.value}] {q.text}")


@main.command("profiles")
@click.pass_obj
@rai_errors
def profiles_cmd(ctx: Context) -> None:
    """List the assessment profiles shipped in the bank."""
    for profile in ctx.bank.profiles:
        click.echo(f"{profile.id} ({len(profile.question_ids)} questions) {profile.name}")


# -- sessions ------------------------------------------------------------------


@main.group("session")
def session_group() -> None:
    """Create and drive assessment sessions."""


@session_group.command("new")
@click.option("--profile", "profile_id", required=True)
@click.option("--subject", required=True)
@click.option("--id", "session_id", default=None,
              help="Explicit session id (default: random).")
@click.option("--threshold", type=int, default=None)
@click.option("--require-evidence", is_flag=True, default=False)
@click.pass_obj
@rai_errors
def session_new(ctx: Context, profile_id: str, subject: str, session_id: str | None,
                threshold: int | None, require_evidence: bool) -> None:
    if session_id and ctx.store.exists(session_id):
        raise RaiError(f"session id {session_id!r} already exists in the store")
    session = create_session(
        ctx.bank, profile_id, subject,
        session_id=session_id, now=_now(),
        threshold_override=threshold,
        evidence_override=True if require_evidence else None,
    )
    ctx.store.save(session)
    click.echo(f"{session.session_id} profile={profile_id} "
               f"open={len(session.open_question_ids(ctx.bank))}")


@session_group.command("answer")
@click.argument("session_id")
@click.argument("question_id")
@click.option("--value", required=True, type=click.Choice(["yes", "no", "na"]))
@click.option("--evidence", default="")
@click.option("--metric-value", type=float, default=None)
@click.option("--unit", "metric_unit", default="")
@click.option("--by", "answered_by", default="")
@click.pass_obj
@rai_errors
def session_answer(ctx: Context, session_id: str, question_id: str, value: str,
                   evidence: str, metric_value: float | None, metric_unit: str,
                   answered_by: str) -> None:
    session = ctx.store.load(session_id)
    record = AnswerRecord(
        value=AnswerValue(value), evidence=evidence, metric_value=metric_value,
        metric_unit=metric_unit, answered_by=answered_by, answered_at=_now(),
    )
    session.record_answer(ctx.bank, question_id, record)
    ctx.store.save(session)
    click.echo(f"recorded {question_id}={value} "
               f"open={len(session.open_question_ids(ctx.bank))}")


@session_group.command("show")
@click.argument("session_id")
@click.pass_obj
@rai_errors
def session_show(ctx: Context, session_id: str) -> None:
    from .canonical import canonical_dumps

    session = ctx.store.load(session_id)
    if session.bank_version != ctx.bank.version:
        click.echo(f"warning: session bank version {session.bank_version} differs "
                   f"from active bank {ctx.bank.version}", err=True)
    sys.stdout.write(canonical_dumps(session.to_dict()))


@session_group.command("next")
@click.argument("session_id")
@click.option("-k", "batch", type=int, default=1, show_default=True)
@click.pass_obj
@rai_errors
def session_next(ctx: Context, session_id: str, batch: int) -> None:
    session = ctx.store.load(session_id)
    answers = session.answer_values()
    cursor = make_cursor(ctx.bank, session.profile_id, answers)
    items = next_questions(ctx.bank, cursor, answers, batch)
    if not items:
        click.echo("no eligible questions left")
        return
    for q in items:
        click.echo(f"{q.global_id} [L{q.level} {q.stage.value}] {q.text}")


@session_group.command("run")
@click.argument("session_id")
@click.pass_obj
@rai_errors
def session_run(ctx: Context, session_id: str) -> None:
    """Interactive one-question-at-a-time interview loop."""
    session = ctx.store.load(session_id)
    bank = ctx.bank
    while True:
        answers = session.answer_values()
        cursor = make_cursor(bank, session.profile_id, answers)
        items = next_questions(bank, cursor, answers, 1)
        if not items:
            click.echo("session complete" if session.is_complete(bank)
                       else "no further eligible questions")
            break
        q = items[0]
        click.echo(f"\n{q.global_id} [L{q.level} {q.stage.value}] {q.text}")
        if q.metric is not None:
            click.echo(f"  metric: {q.metric.name} ({q.metric.unit})")
        raw = click.prompt("answer [yes/no/na/quit]",
                           type=click.Choice(["yes", "no", "na", "quit"]))
        if raw == "quit":
            break
        evidence = ""
        if raw == "yes":
            evidence = click.prompt("evidence (blank if none)", default="",
                                    show_default=False)
        record = AnswerRecord(value=AnswerValue(raw), evidence=evidence,
                              answered_at=_now())
        session.record_answer(bank, q.global_id, record)
        ctx.store.save(session)
    ctx.store.save(session)


# -- scoring and exports ---------------------------------------------------------


@main.command("score")
@click.option("--set", "--profile", "set_id", required=True,
              help="Requirement set id (e.g. eu-high-risk).")
@click.option("--answers", "answers_file", type=click.Path(exists=True, dir_okay=False),
              default=None, help="JSON file of question_id -> yes|no|na.")
@click.option("--session", "session_id", default=None,
              help="Score a stored session instead of an answers file.")
@click.option("--threshold", type=int, default=None)
@click.pass_obj
@rai_errors
def score_cmd(ctx: Context, set_id: str, answers_file: str | None,
              session_id: str | None, threshold: int | None) -> None:
    """Score answers against a requirement set; non-compliance exits 1."""
    if (answers_file is None) == (session_id is None):
        raise click.UsageError("provide exactly one of --answers or --session")
    rs = ctx.requirement_set(set_id)
    if answers_file:
        raw = json.loads(Path(answers_file).read_text(encoding="utf-8"))
        answers = {qid: AnswerValue(value) for qid, value in raw.items()}
    else:
        session = ctx.store.load(session_id)
        answers = session.answer_values()
        if threshold is None:
            threshold = session.threshold_override
    try:
        result = score_requirement_set(rs, answers, threshold)
    except MissingAnswer as exc:
        click.echo(f"error[{exc.code}]: {exc.message}", err=True)
        sys.exit(1)
    click.echo(f"{result.level.label} ({result.score}/{result.n_applicable})")
    if result.level is ComplianceLevel.NON_COMPLIANT:
        sys.exit(1)


@main.command("report")
@click.option("--session", "session_id", required=True)
@click.option("--set", "set_id", default=None)
@click.option("--format", "fmt", type=click.Choice(["md", "json"]), default="md",
              show_default=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
@rai_errors
def report_cmd(ctx: Context, session_id: str, set_id: str | None, fmt: str,
               output: str | None) -> None:
    """Render the session report (Markdown or JSON)."""
    session = ctx.store.load(session_id)
    rs = ctx.requirement_set(set_id) if set_id else None
    document = render_assessment_report(session, ctx.bank, fmt, rs)
    if output:
        Path(output).write_text(document, encoding="utf-8")
    else:
        sys.stdout.write(document)


@main.group("export")
def export_group() -> None:
    """Tabular exports (traceability matrix, risk register)."""


@export_group.command("trace")
@click.option("--session", "session_id", required=True)
@click.option("--set", "set_id", required=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv",
              show_default=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
@rai_errors
def export_trace(ctx: Context, session_id: str, set_id: str, fmt: str,
                 output: str | None) -> None:
    session = ctx.store.load(session_id)
    document = export_traceability_matrix(ctx.requirement_set(set_id), session,
                                          ctx.bank, fmt)
    if output:
        Path(output).write_text(document, encoding="utf-8")
    else:
        sys.stdout.write(document)


@export_group.command("risks")
@click.option("--session", "session_id", required=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv",
              show_default=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
@rai_errors
def export_risks(ctx: Context, session_id: str, fmt: str, output: str | None) -> None:
    session = ctx.store.load(session_id)
    document = export_risk_register(session, fmt)
    if output:
        Path(output).write_text(document, encoding="utf-8")
    else:
        sys.stdout.write(document)


# -- service ---------------------------------------------------------------------


@main.command("serve")
@click.option("--bind", envvar="RAI_BIND", default="127.0.0.1:8000", show_default=True)
@click.option("--read-only", is_flag=True, default=False)
@click.pass_obj
def serve_cmd(ctx: Context, bind: str, read_only: bool) -> None:
    """Run the HTTP service."""
    from .service import ServiceConfig, serve

    bank_path = ctx.bank_path or str(seeds.seed_bank_path())
    config = ServiceConfig(
        bank_path=bank_path,
        store_dir=ctx.store_dir,
        requirements_paths=list(ctx.requirements_paths),
        bind=bind,
        read_only=read_only,
    )
    try:
        serve(config)
    except RaiError as exc:
        _fail(exc)


if __name__ == "__main__":
    main()
