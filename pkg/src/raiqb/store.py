"""One-file-per-session store with per-session write locking.

Layout: ``<store_dir>/<session_id>.json`` in canonical form.  Writes take a
non-blocking exclusive lock per session id and fail fast with
SessionContention when another writer holds it (last-writer-wins is
forbidden).  Reads of distinct sessions proceed concurrently.
"""

from __future__ import annotations

import json
import os
import re
from pathlib import Path
from typing import NamedTuple

from filelock import FileLock, Timeout

from .assessment import AssessmentSession
from .canonical import canonical_dumps
from .errors import NotFound, SessionContention, StoreIO

_SESSION_ID_RE = re.compile(r"^[A-Za-z0-9._-]+$")


class LoadedSession(NamedTuple):
    session: AssessmentSession
    warnings: list[str]


class SessionStore:
    def __init__(self, store_dir: str | Path) -> None:
        self.store_dir = Path(store_dir)
        try:
            self.store_dir.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise StoreIO(f"cannot create store directory {store_dir}: {exc}") from exc

    def _path(self, session_id: str) -> Path:
        if not _SESSION_ID_RE.match(session_id):
            raise StoreIO(f"invalid session id {session_id!r}")
        return self.store_dir / f"{session_id}.json"

    def _lock(self, session_id: str) -> FileLock:
        return FileLock(str(self._path(session_id)) + ".lock")

    def save(self, session: AssessmentSession) -> None:
        """Persist atomically (write-then-rename) under the session's lock."""
        path = self._path(session.session_id)
        lock = self._lock(session.session_id)
        try:
            lock.acquire(timeout=0)
        except Timeout:
            raise SessionContention(
                f"session {session.session_id} is being written by another writer") from None
        try:
            tmp = path.with_suffix(".json.tmp")
            tmp.write_text(canonical_dumps(session.to_dict()), encoding="utf-8")
            os.replace(tmp, path)
        except OSError as exc:
            raise StoreIO(f"cannot write session {session.session_id}: {exc}") from exc
        finally:
            lock.release()

    def load(self, session_id: str) -> AssessmentSession:
        path = self._path(session_id)
        if not path.exists():
            raise NotFound(f"no session with id {session_id!r}")
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
            return AssessmentSession.from_dict(raw)
        except (OSError, ValueError, KeyError) as exc:
            raise StoreIO(f"cannot read session {session_id}: {exc}") from exc

    def list_ids(self) -> list[str]:
        return sorted(p.stem for p in self.store_dir.glob("*.json"))

    def exists(self, session_id: str) -> bool:
        return self._path(session_id).exists()


def save_session(store: SessionStore, session: AssessmentSession) -> None:
    store.save(session)


def load_session(store: SessionStore, session_id: str,
                 active_bank_version: str | None = None) -> LoadedSession:
    """Load a session; a bank-version mismatch is a warning, not a failure."""
    session = store.load(session_id)
    warnings: list[str] = []
    if active_bank_version is not None and session.bank_version != active_bank_version:
        warnings.append(
            f"version mismatch: session was created against bank "
            f"{session.bank_version!r}, active bank is {active_bank_version!r}")
    return LoadedSession(session, warnings)
