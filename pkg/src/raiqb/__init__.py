"""Responsible-AI question bank engine.

Hierarchical risk-question registry, tiered assessment sessions with evidence
capture and a 3x3 risk register, and regulation-compliance scoring via
requirement-to-question mappings.
"""

from .assessment import (
    AnswerRecord,
    AssessmentSession,
    RiskRating,
    RiskRegisterEntry,
    create_session,
    principle_risk_summary,
    rank_principles_by_risk,
    risk_rating,
)
from .compliance import (
    AnswerValue,
    ComplianceLevel,
    ComplianceResult,
    Requirement,
    RequirementSet,
    compliance_level,
    compliance_report,
    compliance_score,
    coverage_check,
    score_requirement_set,
)
from .ingest import extend_bank, parse_bank, parse_extension, serialize_bank
from .model import (
    Gate,
    LifecycleStage,
    PrincipleId,
    Profile,
    Question,
    QuestionBank,
    find_question,
    principle_question,
    summarize,
    validate,
)
from .navigator import (
    FilterCriteria,
    NavigationCursor,
    filter_questions,
    make_cursor,
    next_questions,
    select_profile,
)
from .store import SessionStore, load_session, save_session

__version__ = "0.1.0"

__all__ = [
    "AnswerRecord",
    "AnswerValue",
    "AssessmentSession",
    "ComplianceLevel",
    "ComplianceResult",
    "FilterCriteria",
    "Gate",
    "LifecycleStage",
    "NavigationCursor",
    "PrincipleId",
    "Profile",
    "Question",
    "QuestionBank",
    "Requirement",
    "RequirementSet",
    "RiskRating",
    "RiskRegisterEntry",
    "SessionStore",
    "compliance_level",
    "compliance_report",
    "compliance_score",
    "coverage_check",
    "create_session",
    "extend_bank",
    "filter_questions",
    "find_question",
    "load_session",
    "make_cursor",
    "next_questions",
    "parse_bank",
    "parse_extension",
    "principle_question",
    "principle_risk_summary",
    "rank_principles_by_risk",
    "risk_rating",
    "save_session",
    "score_requirement_set",
    "select_profile",
    "serialize_bank",
    "summarize",
    "validate",
]
