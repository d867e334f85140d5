"""HTTP service: a thin shell over the library exposing the /v1 API.

Read endpoints return the canonical JSON serialization of the corresponding
library call, byte for byte; no scoring or navigation logic lives here.  The
bank and requirement sets are immutable after startup.  Session writes are
serialized per session id with in-process locks on top of the store's
cross-process file locks; concurrent store-level conflicts surface as 409.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from fastapi import Body, FastAPI, Query, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import seeds
from .assessment import AnswerRecord, AssessmentSession, RiskRegisterEntry, create_session, risk_rating
from .canonical import canonical_bytes
from .compliance import AnswerValue, RequirementSet, coverage_check, parse_requirement_set, score_requirement_set
from .errors import NotFound, RaiError, SchemaError
from .ingest import parse_bank, profile_to_dict, question_to_dict
from .model import LifecycleStage, PrincipleId, QuestionBank, summarize
from .navigator import FilterCriteria, filter_questions, make_cursor, next_questions, select_profile
from .reporting import render_assessment_report
from .store import SessionStore


@dataclass
class ServiceConfig:
    bank_path: str
    store_dir: str
    requirements_paths: list[str] = field(default_factory=list)
    bind: str = "127.0.0.1:8000"
    read_only: bool = False

    def check(self) -> None:
        if not Path(self.bank_path).is_file():
            raise RaiError(f"bank file does not exist: {self.bank_path}")
        for path in self.requirements_paths:
            if not Path(path).is_file():
                raise RaiError(f"requirement set file does not exist: {path}")

    @property
    def host(self) -> str:
        return self.bind.rsplit(":", 1)[0]

    @property
    def port(self) -> int:
        return int(self.bind.rsplit(":", 1)[1])


class _State:
    """Shared service state; sessions are cached and locked per id."""

    def __init__(self, bank: QuestionBank, requirement_sets: dict[str, RequirementSet],
                 store: SessionStore, read_only: bool) -> None:
        self.bank = bank
        self.requirement_sets = requirement_sets
        self.store = store
        self.read_only = read_only
        self.sessions: dict[str, AssessmentSession] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()

    def lock_for(self, session_id: str) -> threading.Lock:
        with self._registry_lock:
            return self._locks.setdefault(session_id, threading.Lock())

    def get_session(self, session_id: str) -> AssessmentSession:
        session = self.sessions.get(session_id)
        if session is None:
            session = self.store.load(session_id)  # raises NotFound
            self.sessions[session_id] = session
        return session

    def requirement_set(self, set_id: str) -> RequirementSet:
        rs = self.requirement_sets.get(set_id)
        if rs is None:
            raise NotFound(f"no requirement set with id {set_id!r}")
        return rs


def load_state(config: ServiceConfig) -> _State:
    config.check()
    bank = parse_bank(Path(config.bank_path).read_text(encoding="utf-8"))
    requirement_sets: dict[str, RequirementSet] = {}
    if config.requirements_paths:
        for path in config.requirements_paths:
            rs = parse_requirement_set(Path(path).read_text(encoding="utf-8"))
            requirement_sets[rs.id] = rs
    else:
        requirement_sets = seeds.load_all_requirement_sets()
    return _State(bank, requirement_sets, SessionStore(config.store_dir), config.read_only)


def _canonical(payload: Any, status_code: int = 200) -> Response:
    return Response(content=canonical_bytes(payload), status_code=status_code,
                    media_type="application/json")


def _session_payload(state: _State, session: AssessmentSession,
                     warnings: list[str] | None = None) -> dict:
    return {
        "session": session.to_dict(),
        "open": len(session.open_question_ids(state.bank)),
        "warnings": warnings or [],
    }


_STATUS_BY_CODE = {
    "NOT_FOUND": 404,
    "UNKNOWN_PROFILE": 404,
    "SESSION_CONTENTION": 409,
}


def create_app(config: ServiceConfig) -> FastAPI:
    state = load_state(config)
    app = FastAPI(title="raiqb", version="0.1.0", openapi_url=None)
    app.state.engine = state
    # the web console is served from a different origin; auth stays out of
    # scope (deploy behind a gateway), so a permissive policy is fine here
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])

    @app.exception_handler(RaiError)
    def _rai_error(_: Request, exc: RaiError) -> JSONResponse:
        status = _STATUS_BY_CODE.get(exc.code, 400)
        return JSONResponse(
            status_code=status,
            content={"code": exc.code, "message": exc.message, "details": exc.details},
        )

    def _reject_if_read_only() -> Response | None:
        if state.read_only:
            return JSONResponse(
                status_code=403,
                content={"code": "READ_ONLY", "message": "service is read-only",
                         "details": None},
            )
        return None

    # -- bank reads ------------------------------------------------------

    @app.get("/v1/bank/summary")
    def bank_summary() -> Response:
        return _canonical(summarize(state.bank).to_dict())

    @app.get("/v1/questions")
    def questions(principle: list[str] = Query(default=[]),
                  level: list[int] = Query(default=[]),
                  stage: list[str] = Query(default=[]),
                  source: list[str] = Query(default=[]),
                  q: str | None = None) -> Response:
        try:
            criteria = FilterCriteria(
                principles=frozenset(PrincipleId(p) for p in principle) if principle else None,
                levels=frozenset(level) if level else None,
                stages=frozenset(LifecycleStage(s) for s in stage) if stage else None,
                sources=frozenset(source) if source else None,
                text=q,
            )
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc
        return _canonical([question_to_dict(item)
                           for item in filter_questions(state.bank, criteria)])

    @app.get("/v1/profiles")
    def profiles() -> Response:
        return _canonical([
            {**profile_to_dict(p), "size": len(p.question_ids)}
            for p in state.bank.profiles
        ])

    @app.get("/v1/profiles/{profile_id}")
    def profile_detail(profile_id: str) -> Response:
        questions = select_profile(state.bank, profile_id)  # raises UnknownProfile
        profile = state.bank.profile(profile_id)
        return _canonical({
            **profile_to_dict(profile),  # type: ignore[arg-type]
            "size": len(questions),
            "questions": [question_to_dict(item) for item in questions],
        })

    # -- sessions ----------------------------------------------------------

    @app.post("/v1/sessions")
    def new_session(payload: dict = Body(...)) -> Response:
        rejected = _reject_if_read_only()
        if rejected:
            return rejected
        profile_id = payload.get("profile")
        subject = payload.get("subject", "")
        if not isinstance(profile_id, str) or not profile_id:
            raise SchemaError("body must carry a 'profile' string")
        session = create_session(
            state.bank, profile_id, str(subject),
            session_id=payload.get("session_id"),
            threshold_override=payload.get("threshold"),
            evidence_override=payload.get("evidence_required"),
        )
        if state.store.exists(session.session_id):
            raise SchemaError(f"session id {session.session_id!r} already exists")
        with state.lock_for(session.session_id):
            state.sessions[session.session_id] = session
            state.store.save(session)
        return _canonical(_session_payload(state, session), status_code=201)

    @app.get("/v1/sessions/{session_id}")
    def get_session(session_id: str) -> Response:
        session = state.get_session(session_id)
        warnings = []
        if session.bank_version != state.bank.version:
            warnings.append(
                f"version mismatch: session was created against bank "
                f"{session.bank_version!r}, active bank is {state.bank.version!r}")
        return _canonical(_session_payload(state, session, warnings))

    @app.post("/v1/sessions/{session_id}/answers")
    def post_answer(session_id: str, payload: dict = Body(...)) -> Response:
        rejected = _reject_if_read_only()
        if rejected:
            return rejected
        question_id = payload.get("question_id")
        if not isinstance(question_id, str):
            raise SchemaError("body must carry a 'question_id' string")
        try:
            value = AnswerValue(payload.get("value"))
        except ValueError:
            raise SchemaError("'value' must be one of yes|no|na") from None
        record = AnswerRecord(
            value=value,
            evidence=str(payload.get("evidence") or ""),
            metric_value=payload.get("metric_value"),
            metric_unit=str(payload.get("metric_unit") or ""),
            answered_by=str(payload.get("answered_by") or ""),
        )
        with state.lock_for(session_id):
            session = state.get_session(session_id)
            session.record_answer(state.bank, question_id, record)
            state.store.save(session)
        return _canonical(_session_payload(state, session))

    @app.get("/v1/sessions/{session_id}/next")
    def get_next(session_id: str, k: int = 1) -> Response:
        if k < 1:
            raise SchemaError("k must be a positive integer")
        session = state.get_session(session_id)
        cursor = make_cursor(state.bank, session.profile_id, session.answer_values())
        items = next_questions(state.bank, cursor, session.answer_values(), k)
        return _canonical({"questions": [question_to_dict(item) for item in items]})

    @app.post("/v1/sessions/{session_id}/risks")
    def post_risk(session_id: str, payload: dict = Body(...)) -> Response:
        rejected = _reject_if_read_only()
        if rejected:
            return rejected
        impact = payload.get("impact")
        probability = payload.get("probability")
        rating = risk_rating(impact, probability)  # raises OutOfRange
        with state.lock_for(session_id):
            session = state.get_session(session_id)
            entry = RiskRegisterEntry(
                risk_id=str(payload.get("risk_id")
                            or f"R{len(session.risk_register) + 1:03d}"),
                category_id=str(payload.get("category_id") or ""),
                title=str(payload.get("title") or ""),
                description=str(payload.get("description") or ""),
                causes=str(payload.get("causes") or ""),
                existing_mitigations=str(payload.get("existing_mitigations") or ""),
                owner=str(payload.get("owner") or ""),
                linked_question_ids=tuple(payload.get("linked_question_ids") or ()),
                rating=rating,
            )
            session.add_risk(state.bank, entry)
            state.store.save(session)
        return _canonical({
            "risk": entry.to_dict(),
            "register": [e.to_dict() for e in session.risk_register],
        }, status_code=201)

    @app.get("/v1/sessions/{session_id}/score")
    def get_score(session_id: str, set: str = Query(...),
                  threshold: int | None = None) -> Response:
        session = state.get_session(session_id)
        rs = state.requirement_set(set)
        answers = session.answer_values()
        missing = [qid for qid in rs.mapped_question_ids() if qid not in answers]
        if missing:
            payload = {"set": rs.id, "result": None, "missing_answers": missing}
        else:
            result = score_requirement_set(
                rs, answers, threshold if threshold is not None
                else session.threshold_override)
            payload = {"set": rs.id, "result": result.to_dict(), "missing_answers": []}
        return _canonical(payload)

    @app.get("/v1/sessions/{session_id}/report")
    def get_report(session_id: str, format: str = "md",
                   set: str | None = None) -> Response:
        session = state.get_session(session_id)
        rs = state.requirement_set(set) if set else None
        document = render_assessment_report(session, state.bank, format, rs)
        media = "text/markdown" if format == "md" else "application/json"
        return Response(content=document.encode("utf-8"), media_type=media)

    @app.get("/v1/requirements/{set_id}/coverage")
    def get_coverage(set_id: str) -> Response:
        rs = state.requirement_set(set_id)
        return _canonical(coverage_check(rs, state.bank).to_dict())

    return app


def serve(config: ServiceConfig) -> None:
    """Run the service until interrupted; startup failures raise RaiError."""
    import uvicorn

    app = create_app(config)
    try:
        uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
    except (OSError, SystemExit) as exc:
        raise RaiError(f"cannot bind {config.bind}: {exc}") from exc
