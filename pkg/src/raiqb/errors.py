"""Exception hierarchy shared across the engine.

Every error carries a short machine-readable ``code`` used by the CLI
(``error[<CODE>]:`` prefix) and by the HTTP error envelope
(``{code, message, details}``).
"""

from __future__ import annotations

from typing import Any


class RaiError(Exception):
    """Base class for all engine errors."""

    code = "ERROR"

    def __init__(self, message: str, details: Any = None) -> None:
        super().__init__(message)
        self.message = message
        self.details = details


class BankSyntaxError(RaiError):
    """Document is not well-formed JSON (carries line/column)."""

    code = "SYNTAX"

    def __init__(self, message: str, line: int | None = None, column: int | None = None) -> None:
        super().__init__(message, details={"line": line, "column": column})
        self.line = line
        self.column = column


class SchemaError(RaiError):
    """Document is well-formed but violates the bank/requirement schema."""

    code = "SCHEMA"


class IntegrityError(RaiError):
    """Structurally valid document whose content fails bank invariants."""

    code = "INTEGRITY"


class InvalidBank(RaiError):
    """Operation precondition requires a bank that validates clean."""

    code = "INVALID_BANK"


class NotFound(RaiError):
    code = "NOT_FOUND"


class UnknownProfile(RaiError):
    code = "UNKNOWN_PROFILE"


class UnknownQuestion(RaiError):
    code = "UNKNOWN_QUESTION"


class UnknownFormat(RaiError):
    code = "UNKNOWN_FORMAT"


class MissingAnswer(RaiError):
    """Scoring requires an answer for every mapped question."""

    code = "MISSING_ANSWER"

    def __init__(self, unanswered: list[str]) -> None:
        super().__init__(
            f"{len(unanswered)} mapped question(s) unanswered: {', '.join(unanswered)}",
            details={"unanswered": unanswered},
        )
        self.unanswered = unanswered


class InvalidThreshold(RaiError):
    code = "INVALID_THRESHOLD"


class CoverageGap(RaiError):
    code = "COVERAGE_GAP"


class EvidenceRequired(RaiError):
    code = "EVIDENCE_REQUIRED"


class SessionClosed(RaiError):
    code = "SESSION_CLOSED"


class OutOfRange(RaiError):
    code = "OUT_OF_RANGE"


class StoreIO(RaiError):
    code = "STORE_IO"


class SessionContention(RaiError):
    """A concurrent writer holds the session; the write was not applied."""

    code = "SESSION_CONTENTION"
