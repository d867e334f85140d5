#!/usr/bin/env python3
"""Regenerate the committed seed data and test fixtures.

Builds the pre-regulation bank in code, folds in the EU-Act and ISO source
extensions through the real ``extend_bank`` path, attaches the shipped
profiles, and writes every JSON document in canonical form:

  src/raiqb/data/bank.json                       the shipped bank
  src/raiqb/data/extension_eu_act.json           25 candidates, 10 new
  src/raiqb/data/extension_iso.json              30 candidates, 22 new
  src/raiqb/data/requirements_*.json             three requirement sets
  tests/data/bank_pre_regulation.json            bank before the extensions
  tests/data/table1_mirror.json                  structural mirror fixture
  tests/data/all_yes.json                        all-Yes answers for eu-high-risk

Deterministic: running twice produces identical bytes.
"""

from __future__ import annotations

import sys
from dataclasses import replace
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from raiqb.compliance import Requirement, RequirementSet, serialize_requirement_set
from raiqb.ingest import (
    CandidateQuestion,
    SourceExtension,
    extend_bank,
    serialize_bank,
    serialize_extension,
)
from raiqb.canonical import canonical_dumps
from raiqb.model import (
    Gate,
    InternalId,
    LifecycleStage as St,
    Metric,
    PrincipleEntry,
    PrincipleId as P,
    Profile,
    Question,
    QuestionBank,
    RiskCategory,
    SourceFramework,
    SubCategory,
    summarize,
    validate,
)

BASE_SOURCES = (
    SourceFramework("NIST", "NIST AI Risk Management Framework"),
    SourceFramework("EU", "EU Assessment List for Trustworthy AI"),
    SourceFramework("AIA", "Canada Algorithmic Impact Assessment"),
    SourceFramework("NSW", "NSW AI Assurance Framework"),
    SourceFramework("MS", "Microsoft Responsible AI Impact Assessment"),
)


def q(gid: str, text: str, level: int, stage: St, principle: P, cat: str, sub: str,
      sources: tuple[str, ...] = (), refs: tuple[tuple[str, str], ...] = (),
      metric: Metric | None = None, evidence: bool = False,
      follow_ups: tuple[str, ...] = (), gate: Gate = Gate.ALWAYS) -> Question:
    return Question(
        global_id=gid, text=text, level=level, stage=stage, principle=principle,
        category_id=cat, subcategory_id=sub, sources=sources,
        internal_ids=tuple(InternalId(s, r) for s, r in refs),
        metric=metric, evidence_required=evidence, follow_ups=follow_ups, gate=gate,
    )


def pq(principle: P, text: str) -> Question:
    return Question(
        global_id=f"QB-{principle.value}-000", text=text, level=1,
        stage=St.PLANNING, principle=principle,
    )


def build_base_bank() -> QuestionBank:
    p1 = PrincipleEntry(
        P.P1,
        pq(P.P1, "Does the AI system benefit human, society and environment?"),
        (
            RiskCategory("environmental-impact", "Environmental Impact", P.P1, (
                SubCategory("impact-assessment", "Impact Assessment", (
                    q("QB-P1-001",
                      "Do you assess and document environmental impact and sustainability "
                      "of AI model training and management activities?",
                      1, St.PLANNING, P.P1, "environmental-impact", "impact-assessment",
                      ("NIST", "EU"), (("NIST", "NIST-ENV-01"), ("EU", "EU-ENV-01")),
                      follow_ups=("QB-P1-002",)),
                    q("QB-P1-002",
                      "Do you ensure measures to reduce the environmental impact of your "
                      "AI system’s life cycle?",
                      2, St.DESIGN, P.P1, "environmental-impact", "impact-assessment",
                      ("EU",), (("EU", "EU-ENV-02"),)),
                )),
                SubCategory("sustainability-measures", "Sustainability Measures", (
                    q("QB-P1-003",
                      "Do you set reduction targets for the energy consumed when training "
                      "and operating the AI system?",
                      2, St.DESIGN, P.P1, "environmental-impact", "sustainability-measures"),
                )),
            )),
            RiskCategory("social-impact", "Social Impact", P.P1, (
                SubCategory("impact-assessment", "Impact Assessment", (
                    q("QB-P1-004",
                      "Do you assess how the AI system's outcomes affect communities and "
                      "public wellbeing?",
                      2, St.REQUIREMENTS, P.P1, "social-impact", "impact-assessment"),
                    q("QB-P1-005",
                      "Do you consult affected community groups when planning the AI "
                      "system's deployment?",
                      3, St.PLANNING, P.P1, "social-impact", "impact-assessment"),
                    q("QB-P1-006",
                      "Do you measure the AI system's effect on employment and work "
                      "practices within the organisation?",
                      3, St.OPERATION, P.P1, "social-impact", "impact-assessment"),
                )),
            )),
            RiskCategory("human-impact", "Human Impact", P.P1, (
                SubCategory("impact-assessment", "Impact Assessment", (
                    q("QB-P1-007",
                      "Do you evaluate the AI system's impact on the physical and mental "
                      "wellbeing of its users?",
                      2, St.TESTING, P.P1, "human-impact", "impact-assessment"),
                    q("QB-P1-008",
                      "Do you monitor wellbeing outcomes for users after the AI system "
                      "is deployed?",
                      3, St.OPERATION, P.P1, "human-impact", "impact-assessment"),
                )),
            )),
        ),
    )

    p2 = PrincipleEntry(
        P.P2,
        pq(P.P2, "Does the AI system respect human rights, diversity and autonomy of individuals?"),
        (
            RiskCategory("human-rights", "Human Rights", P.P2, (
                SubCategory("regulatory-compliance", "Regulatory Compliance", (
                    q("QB-P2-001",
                      "Do you identify the human rights obligations that apply to the AI "
                      "system and document how each is met?",
                      2, St.REQUIREMENTS, P.P2, "human-rights", "regulatory-compliance"),
                    q("QB-P2-002",
                      "Do you assess whether the AI system could limit a person's access "
                      "to essential services?",
                      3, St.REQUIREMENTS, P.P2, "human-rights", "regulatory-compliance"),
                )),
            )),
            RiskCategory("human-oversight", "Human Oversight", P.P2, (
                SubCategory("oversight-mechanisms", "Oversight Mechanisms", (
                    q("QB-P2-003",
                      "Is the agent designed to have an appropriate level of oversight "
                      "and control for foundation models?",
                      2, St.DESIGN, P.P2, "human-oversight", "oversight-mechanisms",
                      ("EU",), (("EU", "EU-OVS-01"),)),
                    q("QB-P2-004",
                      "Do you monitor the AI system's operation, guard against "
                      "over-reliance, and enable operators to override, reverse or "
                      "interrupt its output?",
                      2, St.OPERATION, P.P2, "human-oversight", "oversight-mechanisms",
                      ("EU",), (("EU", "EU-OVS-02"),)),
                    q("QB-P2-005",
                      "Do you define who within the organisation can halt the AI system "
                      "and under what conditions?",
                      3, St.DESIGN, P.P2, "human-oversight", "oversight-mechanisms"),
                )),
            )),
            RiskCategory("human-agency", "Human Agency", P.P2, (
                SubCategory("task-allocation", "Task Allocation", (
                    q("QB-P2-006",
                      "Do you review the allocation of tasks between the AI system and "
                      "humans to keep a meaningful level of human control?",
                      2, St.DESIGN, P.P2, "human-agency", "task-allocation"),
                    q("QB-P2-007",
                      "Do you verify that the AI system augments rather than replaces "
                      "human decision-making where human judgement is required?",
                      3, St.IMPLEMENTATION, P.P2, "human-agency", "task-allocation"),
                )),
            )),
        ),
    )

    p3 = PrincipleEntry(
        P.P3,
        pq(P.P3, "Does the AI system treat people fairly, without discrimination against "
                 "individuals, communities or groups?"),
        (
            RiskCategory("bias-identification", "Bias Identification", P.P3, (
                SubCategory("bias-detection", "Bias Detection", (
                    q("QB-P3-001",
                      "Do you test training data for gender, racial, age and geographic "
                      "bias before model training?",
                      2, St.IMPLEMENTATION, P.P3, "bias-identification", "bias-detection"),
                    q("QB-P3-002",
                      "Do you measure decision variability under identical conditions and "
                      "its potential impact on fundamental rights?",
                      3, St.TESTING, P.P3, "bias-identification", "bias-detection"),
                    q("QB-P3-003",
                      "Do you share identified biases and their mitigations with affected "
                      "stakeholders?",
                      3, St.DEPLOYMENT, P.P3, "bias-identification", "bias-detection"),
                )),
            )),
            RiskCategory("fairness-impact", "Impact Assessment", P.P3, (
                SubCategory("diversity-inclusion", "Diversity and Inclusion", (
                    q("QB-P3-004",
                      "Do you involve diverse groups, including minorities and affected "
                      "communities, in the design and review of the AI system?",
                      2, St.DESIGN, P.P3, "fairness-impact", "diversity-inclusion"),
                    q("QB-P3-005",
                      "Do you source feedback and data from diverse user groups to reduce "
                      "representation gaps?",
                      3, St.IMPLEMENTATION, P.P3, "fairness-impact", "diversity-inclusion"),
                )),
                SubCategory("stakeholder-impact", "Stakeholder Impact", (
                    q("QB-P3-006",
                      "Do you identify all stakeholder groups affected by the AI system's "
                      "outputs, including those affected indirectly?",
                      2, St.REQUIREMENTS, P.P3, "fairness-impact", "stakeholder-impact"),
                )),
            )),
        ),
    )

    p4 = PrincipleEntry(
        P.P4,
        pq(P.P4, "Does the AI system protect privacy and remain secure throughout its operation?"),
        (
            RiskCategory("privacy-protection", "Privacy Protection", P.P4, (
                SubCategory("policy-compliance", "Policy Compliance", (
                    q("QB-P4-001",
                      "Do you review privacy policies and regulations to confirm the AI "
                      "system design complies with key requirements?",
                      2, St.REQUIREMENTS, P.P4, "privacy-protection", "policy-compliance"),
                    q("QB-P4-002",
                      "Do you limit the collection and retention of personal information "
                      "to what the AI system strictly needs?",
                      3, St.DESIGN, P.P4, "privacy-protection", "policy-compliance"),
                    q("QB-P4-003",
                      "Do you appoint a person accountable for privacy risks arising from "
                      "the AI system's data use?",
                      2, St.PLANNING, P.P4, "privacy-protection", "policy-compliance"),
                )),
            )),
            RiskCategory("data-protection", "Data Protection", P.P4, (
                SubCategory("access-control", "Access Control", (
                    q("QB-P4-004",
                      "Do you enforce rigorous access controls over personal and "
                      "sensitive data used by the AI system?",
                      2, St.IMPLEMENTATION, P.P4, "data-protection", "access-control"),
                )),
                SubCategory("cybersecurity", "Cybersecurity", (
                    q("QB-P4-005",
                      "Do you implement cybersecurity measures that keep the AI system "
                      "resilient against attempts to attack or manipulate it?",
                      2, St.IMPLEMENTATION, P.P4, "data-protection", "cybersecurity",
                      ("EU",), (("EU", "EU-SEC-01"),)),
                )),
                SubCategory("copyrighted-data", "Copyrighted Data", ()),
            )),
            RiskCategory("data-quality-management", "Data Quality Management", P.P4, (
                SubCategory("data-sources", "Data Sources", (
                    q("QB-P4-006",
                      "Do you assess dataset quality, examine possible biases, and "
                      "address data gaps or shortcomings before training?",
                      2, St.IMPLEMENTATION, P.P4, "data-quality-management", "data-sources",
                      ("EU", "AIA"), (("EU", "EU-DATA-01"), ("AIA", "AIA-DATA-01"))),
                    q("QB-P4-007",
                      "Do you document the provenance of every data source used to train "
                      "or operate the AI system?",
                      3, St.IMPLEMENTATION, P.P4, "data-quality-management", "data-sources"),
                )),
                SubCategory("data-processing", "Data Processing", (
                    q("QB-P4-008",
                      "Do you audit data processing steps for regulatory alignment from "
                      "collection through to disposal?",
                      3, St.OPERATION, P.P4, "data-quality-management", "data-processing"),
                )),
            )),
        ),
    )

    p5 = PrincipleEntry(
        P.P5,
        pq(P.P5, "Does the AI system reliably operate in accordance with its intended purpose?"),
        (
            RiskCategory("system-performance", "System Performance", P.P5, (
                SubCategory("performance-metrics", "Performance Metrics", (
                    q("QB-P5-001",
                      "Do you define accuracy targets and data quality thresholds the AI "
                      "system must meet before release?",
                      2, St.TESTING, P.P5, "system-performance", "performance-metrics"),
                    q("QB-P5-002",
                      "Do you compare the AI system's operating performance against its "
                      "pre-deployment benchmarks?",
                      3, St.OPERATION, P.P5, "system-performance", "performance-metrics"),
                )),
            )),
            RiskCategory("system-test", "System Test", P.P5, (
                SubCategory("model-evaluation", "Model Evaluation", (
                    q("QB-P5-003",
                      "Do you test the AI system against edge cases and document the "
                      "coverage of the test scenarios?",
                      2, St.TESTING, P.P5, "system-test", "model-evaluation"),
                )),
            )),
            RiskCategory("system-reliability", "System Reliability", P.P5, (
                SubCategory("reliability-monitoring", "Reliability Monitoring", (
                    q("QB-P5-004",
                      "Do you track the AI system's failure rate in operation and publish "
                      "reliability documentation?",
                      3, St.OPERATION, P.P5, "system-reliability", "reliability-monitoring"),
                )),
            )),
            RiskCategory("system-resilience", "System Resilience", P.P5, (
                SubCategory("fault-tolerance", "Fault Tolerance", (
                    q("QB-P5-005",
                      "Do you provide fallback or recovery procedures that keep service "
                      "continuity when the AI system fails?",
                      2, St.DESIGN, P.P5, "system-resilience", "fault-tolerance"),
                )),
            )),
            RiskCategory("adverse-impact", "Adverse Impact", P.P5, (
                SubCategory("harm-prevention", "Harm Prevention", (
                    q("QB-P5-006",
                      "Does the agent monitor and control adversarial inputs, harmful or "
                      "undesirable outputs to users and other components?",
                      2, St.OPERATION, P.P5, "adverse-impact", "harm-prevention",
                      ("EU",), (("EU", "EU-HARM-01"),)),
                    q("QB-P5-007",
                      "Do you restrict the AI system's behaviour in critical situations "
                      "to prevent harm to users and other stakeholders?",
                      2, St.DESIGN, P.P5, "adverse-impact", "harm-prevention"),
                )),
            )),
        ),
    )

    p6 = PrincipleEntry(
        P.P6,
        pq(P.P6, "Does the AI system make its operation transparent and its outcomes "
                 "explainable to the people it affects?"),
        (
            RiskCategory("transparency", "Transparency", P.P6, (
                SubCategory("technical-documentation", "Technical Documentation", (
                    q("QB-P6-001",
                      "Do you document and provide technical specification including the "
                      "intended purposes, potentially beneficial uses, limitations and "
                      "outputs of the agent?",
                      2, St.DESIGN, P.P6, "transparency", "technical-documentation",
                      ("NIST",), (("NIST", "NIST-DOC-01"),)),
                    q("QB-P6-002",
                      "Do you maintain a general description and a detailed design "
                      "specification of the AI system, covering its intended purpose and "
                      "architecture?",
                      2, St.DESIGN, P.P6, "transparency", "technical-documentation",
                      ("NIST", "EU"), (("NIST", "NIST-DOC-02"), ("EU", "EU-DOC-01"))),
                )),
                SubCategory("system-registration", "System Registration", (
                    q("QB-P6-003",
                      "Do you register the AI system in the required external databases "
                      "or public registers?",
                      3, St.DEPLOYMENT, P.P6, "transparency", "system-registration",
                      ("AIA",), (("AIA", "AIA-REG-01"),)),
                )),
            )),
            RiskCategory("explainability", "Explainability", P.P6, (
                SubCategory("outcome-clarity", "Outcome Clarity", (
                    q("QB-P6-004",
                      "Does the outcome result in something that all users can understand?",
                      1, St.REQUIREMENTS, P.P6, "explainability", "outcome-clarity",
                      ("EU",), (("EU", "EU-EXP-01"),), follow_ups=("QB-P6-005",)),
                    q("QB-P6-005",
                      "Do you design the AI system with interpretability in mind from "
                      "the start?",
                      2, St.DESIGN, P.P6, "explainability", "outcome-clarity",
                      ("EU",), (("EU", "EU-EXP-02"),), follow_ups=("QB-P6-006",)),
                    q("QB-P6-006",
                      "Do you research and try to use the simplest and most interpretable "
                      "model possible for the AI system?",
                      3, St.DESIGN, P.P6, "explainability", "outcome-clarity",
                      ("EU",), (("EU", "EU-EXP-03"),)),
                    q("QB-P6-007",
                      "Can the agent produce outcomes that all users can understand?",
                      2, St.TESTING, P.P6, "explainability", "outcome-clarity",
                      ("EU",), (("EU", "EU-EXP-04"),)),
                    q("QB-P6-008",
                      "Is the agent designed with interpretability in mind from the start?",
                      2, St.DESIGN, P.P6, "explainability", "outcome-clarity",
                      ("EU",), (("EU", "EU-EXP-05"),)),
                )),
            )),
            RiskCategory("communication", "Communication", P.P6, (
                SubCategory("user-instructions", "User Instructions", (
                    q("QB-P6-009",
                      "Do you provide user instructions covering provider details, "
                      "capabilities, limitations, intended purpose and performance of "
                      "the AI system?",
                      2, St.DEPLOYMENT, P.P6, "communication", "user-instructions",
                      ("EU",), (("EU", "EU-COM-01"),)),
                )),
                SubCategory("ai-disclosure", "AI Disclosure", (
                    q("QB-P6-010",
                      "Do you inform users that they are interacting with an AI system "
                      "and that content has been artificially generated or manipulated?",
                      2, St.OPERATION, P.P6, "communication", "ai-disclosure",
                      ("EU",), (("EU", "EU-COM-02"),)),
                )),
                SubCategory("stakeholder-communication", "Stakeholder Communication", (
                    q("QB-P6-011",
                      "Do you communicate the AI system's scope, goals and limitations to "
                      "all relevant stakeholders in plain language?",
                      2, St.DEPLOYMENT, P.P6, "communication", "stakeholder-communication"),
                    q("QB-P6-012",
                      "Do you provide timely and accurate channels for users to ask how "
                      "the AI system reached an outcome?",
                      3, St.OPERATION, P.P6, "communication", "stakeholder-communication"),
                    q("QB-P6-013",
                      "Do you publish disclosures about where AI is used in your products "
                      "and services?",
                      2, St.OPERATION, P.P6, "communication", "stakeholder-communication"),
                    q("QB-P6-014",
                      "Do you report externally on the AI system's performance against "
                      "its responsible AI commitments?",
                      3, St.OPERATION, P.P6, "communication", "stakeholder-communication"),
                )),
            )),
        ),
    )

    p7 = PrincipleEntry(
        P.P7,
        pq(P.P7, "Does the AI system provide timely processes for people to challenge "
                 "its use or outcomes?"),
        (
            RiskCategory("human-interfaces", "Human Interfaces", P.P7, (
                SubCategory("contest-mechanisms", "Contest Mechanisms", (
                    q("QB-P7-001",
                      "Do you provide a mechanism for users to contest decisions made by "
                      "the AI system?",
                      2, St.DESIGN, P.P7, "human-interfaces", "contest-mechanisms",
                      ("AIA",), (("AIA", "AIA-CON-01"),)),
                    q("QB-P7-002",
                      "Do you inform affected people how to raise a challenge when the AI "
                      "system significantly impacts them?",
                      2, St.DEPLOYMENT, P.P7, "human-interfaces", "contest-mechanisms",
                      ("NIST",), (("NIST", "NIST-CON-01"),)),
                )),
            )),
            RiskCategory("right-to-appeal", "Right to Appeal", P.P7, (
                SubCategory("review-process", "Review Process", (
                    q("QB-P7-003",
                      "Do you operate a process for reviewing contested AI decisions by a "
                      "person with authority to change them?",
                      3, St.OPERATION, P.P7, "right-to-appeal", "review-process",
                      ("AIA",), (("AIA", "AIA-CON-02"),)),
                )),
            )),
        ),
    )

    metric_risk = Metric(
        "Number of AI risk metrics",
        "Count of defined AI risk metrics (e.g., risk exposure index, risk severity score).",
        "count",
    )
    metric_incidents = Metric(
        "Number of AI incidents informed to external stakeholders",
        "Count of serious AI incidents reported beyond the company.",
        "count",
    )
    metric_roles = Metric(
        "Percentage of defined AI roles and responsibilities",
        "Share of AI-related roles with documented responsibility assignments.",
        "percentage",
    )

    p8 = PrincipleEntry(
        P.P8,
        pq(P.P8, "Are the people responsible for the different phases of the AI system's "
                 "lifecycle identifiable and accountable for its outcomes?"),
        (
            RiskCategory("auditability", "Auditability", P.P8, (
                SubCategory("audit-mechanisms", "Audit Mechanisms", (
                    q("QB-P8-001",
                      "Do you establish mechanisms that facilitate the system’s "
                      "auditability?",
                      2, St.DESIGN, P.P8, "auditability", "audit-mechanisms",
                      ("EU",), (("EU", "EU-AUD-01"),)),
                )),
                SubCategory("logging", "Logging", (
                    q("QB-P8-002",
                      "Does the agent have a logging function to record interactions or "
                      "data?",
                      2, St.IMPLEMENTATION, P.P8, "auditability", "logging",
                      ("EU",), (("EU", "EU-AUD-02"),), follow_ups=("QB-P8-003",)),
                    q("QB-P8-003",
                      "Does the agent record all the recommendations or decisions made by "
                      "the system?",
                      2, St.OPERATION, P.P8, "auditability", "logging",
                      ("AIA",), (("AIA", "AIA-AUD-01"),), follow_ups=("QB-P8-005",)),
                )),
                SubCategory("record-keeping", "Record Keeping", (
                    q("QB-P8-004",
                      "Do you keep records of all relevant documentation and information "
                      "needed to trace the AI system's decisions?",
                      2, St.OPERATION, P.P8, "auditability", "record-keeping",
                      ("AIA",), (("AIA", "AIA-AUD-02"),)),
                    q("QB-P8-005",
                      "Does the agent share the records with stakeholders when required?",
                      3, St.OPERATION, P.P8, "auditability", "record-keeping",
                      ("AIA",), (("AIA", "AIA-AUD-03"),)),
                )),
            )),
            RiskCategory("trade-offs-analysis", "Trade-offs Analysis", P.P8, (
                SubCategory("values-tradeoffs", "Values and Trade-offs", (
                    q("QB-P8-006",
                      "Do you identify the interests and values implicated by the AI "
                      "system and analyse trade-offs between them?",
                      2, St.DESIGN, P.P8, "trade-offs-analysis", "values-tradeoffs"),
                )),
            )),
            RiskCategory("redressibility", "Redressibility", P.P8, (
                SubCategory("redress-mechanisms", "Redress Mechanisms", (
                    q("QB-P8-007",
                      "Do you provide a process for users to seek redress when the AI "
                      "system causes harm or adverse impact?",
                      2, St.OPERATION, P.P8, "redressibility", "redress-mechanisms"),
                    q("QB-P8-008",
                      "Do you inform users and third parties about their opportunities "
                      "for redress?",
                      3, St.DEPLOYMENT, P.P8, "redressibility", "redress-mechanisms"),
                )),
            )),
            RiskCategory("accountability-framework", "Accountability Framework", P.P8, (
                SubCategory("roles-responsibilities", "Roles and Responsibilities", (
                    q("QB-P8-009",
                      "Does the company have designated responsibility for AI and RAI "
                      "within the organisation?",
                      1, St.PLANNING, P.P8, "accountability-framework",
                      "roles-responsibilities",
                      ("MS",), (("MS", "MS-ACC-01"),)),
                    q("QB-P8-010",
                      "Does the company have an accountability framework to ensure that "
                      "AI related roles and responsibilities are clearly defined?",
                      2, St.PLANNING, P.P8, "accountability-framework",
                      "roles-responsibilities",
                      ("MS",), (("MS", "MS-ACC-02"),), metric=metric_roles, evidence=True),
                )),
            )),
            RiskCategory("ai-management", "AI Management", P.P8, (
                SubCategory("risk-management", "Risk Management", (
                    q("QB-P8-011",
                      "Does the company establish methods and metrics to quantify and "
                      "measure the risks associated with its AI systems?",
                      2, St.PLANNING, P.P8, "ai-management", "risk-management",
                      ("MS",), (("MS", "MS-MGT-01"),), metric=metric_risk, evidence=True),
                )),
                SubCategory("incident-management", "Incident Management", (
                    q("QB-P8-012",
                      "Does the company have a clear reporting system or process in place "
                      "for serious AI incidents to inform external stakeholders (e.g., "
                      "market surveillance authorities, communities) beyond the company?",
                      2, St.OPERATION, P.P8, "ai-management", "incident-management",
                      ("MS",), (("MS", "MS-MGT-02"),), metric=metric_incidents,
                      evidence=True),
                )),
                SubCategory("conformity", "Conformity", (
                    q("QB-P8-013",
                      "Do you operate a conformity assessment and management process for "
                      "the AI system?",
                      2, St.TESTING, P.P8, "ai-management", "conformity",
                      ("NSW",), (("NSW", "NSW-GOV-01"),)),
                )),
                SubCategory("supply-chain", "Supply Chain", (
                    q("QB-P8-014",
                      "Do you register all components including external tools, agents "
                      "and models?",
                      2, St.IMPLEMENTATION, P.P8, "ai-management", "supply-chain"),
                    q("QB-P8-015",
                      "Does the AI agent verify the provenance of the components and "
                      "manage their execution?",
                      3, St.OPERATION, P.P8, "ai-management", "supply-chain"),
                )),
                SubCategory("project-management", "Project Management", ()),
                SubCategory("competency-management", "Competency Management", ()),
                SubCategory("leadership", "Leadership", ()),
            )),
        ),
    )

    return QuestionBank("2024.1", (p1, p2, p3, p4, p5, p6, p7, p8), (), BASE_SOURCES)


def c(ref: str, text: str, level: int, stage: St, principle: P, cat: str, sub: str,
      follow_ups: tuple[str, ...] = ()) -> CandidateQuestion:
    return CandidateQuestion(ref=ref, text=text, level=level, stage=stage,
                             principle=principle, category_id=cat, subcategory_id=sub,
                             follow_ups=follow_ups)


def build_eu_act_extension() -> SourceExtension:
    new = (
        c("EUA-01",
          "Do you establish an AI risk management system to conduct ongoing risk "
          "assessment and treatment?",
          2, St.PLANNING, P.P8, "ai-management", "risk-management"),
        c("EUA-02", "Does the model provider conduct ongoing risk assessment and treatment?",
          2, St.OPERATION, P.P8, "ai-management", "risk-management"),
        c("EUA-03", "Does the model provider involve external experts in risk management?",
          3, St.OPERATION, P.P8, "ai-management", "risk-management"),
        c("EUA-04", "Does the model provider assess the quality of the data sources used "
                    "for training?",
          2, St.IMPLEMENTATION, P.P4, "data-quality-management", "data-sources"),
        c("EUA-05", "Does the model provider document detailed summary of the use of "
                    "training data protected under copyright law?",
          3, St.IMPLEMENTATION, P.P4, "data-protection", "copyrighted-data"),
        c("EUA-06", "Does the model provider document and provide technical specification?",
          2, St.DESIGN, P.P6, "transparency", "technical-documentation"),
        c("EUA-07", "Does the model provider provide intelligible instructions for use?",
          2, St.DEPLOYMENT, P.P6, "communication", "user-instructions"),
        c("EUA-08", "Does the model provider assess and document environmental impact and "
                    "sustainability of AI model training and management activities?",
          2, St.OPERATION, P.P1, "environmental-impact", "impact-assessment"),
        c("EUA-09", "Does the model provider conduct and document model evaluation through "
                    "its lifecycle?",
          2, St.TESTING, P.P5, "system-test", "model-evaluation"),
        c("EUA-10", "Do you document the capabilities, limitations and systemic-risk "
                    "mitigations of any general-purpose AI model the system builds on?",
          3, St.DESIGN, P.P6, "transparency", "technical-documentation"),
    )
    overlaps = (
        ("EUA-11", "QB-P1-001"),
        ("EUA-12", "QB-P1-002"),
        ("EUA-13", "QB-P2-004"),
        ("EUA-14", "QB-P4-005"),
        ("EUA-15", "QB-P4-006"),
        ("EUA-16", "QB-P6-002"),
        ("EUA-17", "QB-P6-003"),
        ("EUA-18", "QB-P6-009"),
        ("EUA-19", "QB-P6-010"),
        ("EUA-20", "QB-P8-004"),
        ("EUA-21", "QB-P8-013"),
        ("EUA-22", "QB-P6-004"),
        ("EUA-23", "QB-P6-005"),
        ("EUA-24", "QB-P8-001"),
        ("EUA-25", "QB-P2-003"),
    )
    return SourceExtension(SourceFramework("EU-Act", "EU Artificial Intelligence Act"),
                           new, overlaps)


def build_iso_extension(risk_mgmt_system_gid: str) -> SourceExtension:
    new = (
        c("ISO-01", "Does the agent have risk management mechanisms to conduct ongoing "
                    "risk assessment and treatment?",
          2, St.DESIGN, P.P8, "ai-management", "risk-management"),
        c("ISO-02", "Does the agent conduct AI risk assessment?",
          2, St.OPERATION, P.P8, "ai-management", "risk-management"),
        c("ISO-03", "Does the agent implement the AI risk treatment plan?",
          3, St.OPERATION, P.P8, "ai-management", "risk-management"),
        c("ISO-04", "Do you define objectives, resources and success criteria for each AI "
                    "project before development starts?",
          2, St.PLANNING, P.P8, "ai-management", "project-management"),
        c("ISO-05", "Do you plan AI projects with documented milestones for risk and "
                    "quality checkpoints?",
          3, St.PLANNING, P.P8, "ai-management", "project-management"),
        c("ISO-06", "Do you track AI project changes through a controlled "
                    "change-management process?",
          3, St.IMPLEMENTATION, P.P8, "ai-management", "project-management"),
        c("ISO-07", "Do you review AI projects at defined intervals against their "
                    "management objectives?",
          3, St.OPERATION, P.P8, "ai-management", "project-management"),
        c("ISO-08", "Do you maintain an inventory of AI systems and their owners across "
                    "the organisation?",
          2, St.OPERATION, P.P8, "ai-management", "project-management"),
        c("ISO-09", "Do you define the competencies required for each role involved in "
                    "the AI system's lifecycle?",
          2, St.PLANNING, P.P8, "ai-management", "competency-management"),
        c("ISO-10", "Do you train staff on responsible AI duties relevant to their role?",
          3, St.IMPLEMENTATION, P.P8, "ai-management", "competency-management"),
        c("ISO-11", "Do you evaluate the effectiveness of AI competency training?",
          3, St.OPERATION, P.P8, "ai-management", "competency-management"),
        c("ISO-12", "Do you record the qualifications and training history of people "
                    "working on the AI system?",
          3, St.OPERATION, P.P8, "ai-management", "competency-management"),
        c("ISO-13", "Do you plan for succession and knowledge transfer on critical AI "
                    "roles?",
          3, St.PLANNING, P.P8, "ai-management", "competency-management"),
        c("ISO-14", "Does top management approve and periodically review the "
                    "organisation's AI policy?",
          2, St.PLANNING, P.P8, "ai-management", "leadership"),
        c("ISO-15", "Does leadership allocate the resources needed to run the AI "
                    "management system?",
          2, St.PLANNING, P.P8, "ai-management", "leadership"),
        c("ISO-16", "Does management review AI risk and compliance reports at planned "
                    "intervals?",
          3, St.OPERATION, P.P8, "ai-management", "leadership"),
        c("ISO-17", "Do you assign a management representative accountable for the AI "
                    "management system?",
          2, St.PLANNING, P.P8, "ai-management", "leadership"),
        c("ISO-18", "Does leadership communicate the importance of meeting AI management "
                    "requirements across the organisation?",
          3, St.DEPLOYMENT, P.P8, "ai-management", "leadership"),
        c("ISO-19", "Do you operate a documented quality management system covering the "
                    "AI system's lifecycle?",
          2, St.TESTING, P.P8, "ai-management", "conformity"),
        c("ISO-20", "Do you set risk acceptance criteria for AI risks and document "
                    "treatment decisions?",
          3, St.PLANNING, P.P8, "ai-management", "risk-management"),
        c("ISO-21", "Do you review residual AI risks after treatment and seek approval "
                    "from risk owners?",
          3, St.OPERATION, P.P8, "ai-management", "risk-management"),
        c("ISO-22", "Do you audit the AI management system internally at planned "
                    "intervals?",
          3, St.OPERATION, P.P8, "ai-management", "conformity"),
    )
    overlaps = (
        ("ISO-23", risk_mgmt_system_gid),
        ("ISO-24", "QB-P8-001"),
        ("ISO-25", "QB-P8-004"),
        ("ISO-26", "QB-P8-013"),
        ("ISO-27", "QB-P8-011"),
        ("ISO-28", "QB-P8-012"),
        ("ISO-29", "QB-P8-010"),
        ("ISO-30", "QB-P4-006"),
    )
    return SourceExtension(SourceFramework("ISO", "ISO/IEC 42001:2023 AI Management"),
                           new, overlaps)


def by_ref(bank: QuestionBank, code: str, ref: str) -> str:
    for question in bank.all_questions():
        for iid in question.internal_ids:
            if iid.source == code and iid.ref == ref:
                return question.global_id
    raise KeyError(f"{code}:{ref}")


def build_profiles(bank: QuestionBank, eu_mapping: list[tuple[str, str]]) -> tuple[Profile, ...]:
    agent_ids = tuple(
        [by_ref(bank, "ISO", r) for r in ("ISO-01", "ISO-02", "ISO-03")]
        + ["QB-P8-002", "QB-P8-003", "QB-P8-005",
           "QB-P6-007", "QB-P6-008", "QB-P6-001",
           "QB-P2-003", "QB-P5-006",
           "QB-P8-014", "QB-P8-015"]
    )
    fm_ids = tuple(by_ref(bank, "EU-Act", f"EUA-{i:02d}") for i in range(2, 10))
    esg_ids = tuple(
        [f"QB-P1-{i:03d}" for i in range(3, 9)]
        + ["QB-P2-001", "QB-P2-002", "QB-P2-005", "QB-P2-006", "QB-P2-007"]
        + [f"QB-P3-{i:03d}" for i in range(1, 7)]
        + ["QB-P4-001", "QB-P4-002", "QB-P4-003", "QB-P4-004", "QB-P4-007", "QB-P4-008"]
        + ["QB-P5-001", "QB-P5-002", "QB-P5-003", "QB-P5-004", "QB-P5-005", "QB-P5-007"]
        + [f"QB-P6-{i:03d}" for i in range(11, 15)]
        + ["QB-P7-001", "QB-P7-002", "QB-P7-003"]
        + ["QB-P8-006", "QB-P8-007", "QB-P8-008",
           "QB-P8-010", "QB-P8-011", "QB-P8-012"]
    )
    eu_ids = tuple(qid for _, qid in eu_mapping)
    return (
        Profile(
            id="agent-rai-plugins",
            name="AI Agent RAI Plugins",
            description="Thirteen probes covering the five agent-side responsibility "
                        "components: continuous risk assessor, black box recorder, "
                        "explainer, multimodal guardrail, and AIBOM registry.",
            question_ids=agent_ids,
        ),
        Profile(
            id="foundation-model",
            name="Foundation Model Assessment",
            description="Eight probes for judging a foundation model provider from the "
                        "agent developer's perspective.",
            question_ids=fm_ids,
        ),
        Profile(
            id="esg-deep-dive",
            name="ESG Deep Dive",
            description="Forty-two probes selected for ESG-aligned investor deep dives; "
                        "evidence is required for every Yes answer.",
            question_ids=esg_ids,
            evidence_required_override=True,
        ),
        Profile(
            id="eu-high-risk",
            name="EU High-Risk Compliance",
            description="The twenty-one questions mapped to the high-risk obligations "
                        "requirement set.",
            question_ids=eu_ids,
            threshold_default=11,
        ),
    )


def build_eu_requirement_set(bank: QuestionBank) -> RequirementSet:
    rows = [
        ("E01", "Risk management",
         "Risk management system shall be established, implemented, documented and "
         "maintained.",
         "Article 9", P.P8, by_ref(bank, "EU-Act", "EUA-01")),
        ("E02", "Data governance and management",
         "For datasets, should consider relevant data preparation, prior quality "
         "assessment, examination (e.g., biases), possible data gaps or shortcoming.",
         "Article 10", P.P4, "QB-P4-006"),
        ("E03", "Technical specification",
         "General description (e.g., intended purpose) and detailed description "
         "(e.g., design specification, architecture).",
         "Article 11", P.P6, "QB-P6-002"),
        ("E04", "Record keeping",
         "Record keeping of all relevant documentation and information for traceability.",
         "Article 12", P.P8, "QB-P8-004"),
        ("E05", "Transparency",
         "User instructions including provider details, capabilities and limitations, "
         "purposes, performance, specifications, etc.",
         "Article 13", P.P6, "QB-P6-009"),
        ("E06", "Transparency",
         "If the AI system is interacting with humans, the users should be informed that "
         "they are interacting with an AI system and the content has been artificially "
         "generated or manipulated.",
         "Article 50", P.P6, "QB-P6-010"),
        ("E07", "Human oversight",
         "Monitor its operation, consider over-reliance, override or reverse the output "
         "and intervene on the operation or interupt the system (e.g., through a "
         "“stop” button).",
         "Article 14", P.P2, "QB-P2-004"),
        ("E08", "Cybersecurity",
         "Cybersecurity and resilience to prevent and control for attacks.",
         "Article 15", P.P4, "QB-P4-005"),
        ("E09", "Register",
         "Register their systems in an EU-wide database in any external AI database "
         "(e.g., EU-wide database).",
         "Article 49", P.P6, "QB-P6-003"),
        ("E10", "Compliance",
         "Conformity assessment and management process.",
         "Article 43", P.P8, "QB-P8-013"),
        # E11..E21 stand in for the key requirements the source tables do not
        # enumerate; they are marked non-normative and mapped to existing probes.
        ("E11", "Fundamental rights",
         "[Synthetic placeholder, non-normative] Fundamental rights impact assessment "
         "covering persons affected by the high-risk AI system.",
         "synthetic", P.P2, "QB-P2-001"),
        ("E12", "Accuracy and robustness",
         "[Synthetic placeholder, non-normative] Appropriate levels of accuracy and "
         "robustness, declared and tested against targets.",
         "synthetic", P.P5, "QB-P5-001"),
        ("E13", "Quality management",
         "[Synthetic placeholder, non-normative] Quality management system covering the "
         "AI lifecycle.",
         "synthetic", P.P8, by_ref(bank, "ISO", "ISO-19")),
        ("E14", "Logging",
         "[Synthetic placeholder, non-normative] Automatic logging of events over the "
         "system's lifetime.",
         "synthetic", P.P8, "QB-P8-002"),
        ("E15", "Environmental documentation",
         "[Synthetic placeholder, non-normative] Assessment and documentation of "
         "environmental impact of model training and management.",
         "synthetic", P.P1, "QB-P1-001"),
        ("E16", "General-purpose AI",
         "[Synthetic placeholder, non-normative] Documentation of capabilities, "
         "limitations and systemic-risk mitigations for general-purpose models.",
         "synthetic", P.P6, by_ref(bank, "EU-Act", "EUA-10")),
        ("E17", "Incident reporting",
         "[Synthetic placeholder, non-normative] Reporting of serious incidents to "
         "market surveillance authorities.",
         "synthetic", P.P8, "QB-P8-012"),
        ("E18", "Data privacy",
         "[Synthetic placeholder, non-normative] Personal data minimisation for "
         "training, validation and testing datasets.",
         "synthetic", P.P4, "QB-P4-002"),
        ("E19", "Human oversight competence",
         "[Synthetic placeholder, non-normative] Assignment of oversight to persons "
         "with the competence and authority to intervene.",
         "synthetic", P.P2, "QB-P2-005"),
        ("E20", "Post-market monitoring",
         "[Synthetic placeholder, non-normative] Post-market monitoring of performance "
         "over the operational life of the system.",
         "synthetic", P.P5, "QB-P5-004"),
        ("E21", "Stakeholder transparency",
         "[Synthetic placeholder, non-normative] Communication of system scope, goals "
         "and limitations to stakeholders.",
         "synthetic", P.P6, "QB-P6-011"),
    ]
    return RequirementSet(
        id="eu-high-risk",
        name="EU AI Act High-Risk Requirements",
        requirements=tuple(Requirement(rid, cat, desc, sec, principle)
                           for rid, cat, desc, sec, principle, _ in rows),
        mapping=tuple((rid, qid) for rid, _, _, _, _, qid in rows),
        followups=(("QB-P1-001", "QB-P1-002"), ("QB-P2-004", "QB-P2-005")),
        default_threshold=11,
    )


def build_agent_requirement_set(bank: QuestionBank) -> RequirementSet:
    iso = [by_ref(bank, "ISO", r) for r in ("ISO-01", "ISO-02", "ISO-03")]
    reqs = (
        Requirement("AG01", "Continuous risk assessor", "Monitor and assess AI risks.",
                    "design-patterns", P.P8),
        Requirement("AG02", "Black box recorder", "Record and share the runtime data.",
                    "design-patterns", P.P8),
        Requirement("AG03", "Explainer",
                    "Articulate the agent’s roles, capabilities, limitations, the "
                    "rationale behind its intermediate or final outputs.",
                    "design-patterns", P.P6),
        Requirement("AG04", "Multimodal guardrail",
                    "Control the inputs and outputs of foundation models to meet "
                    "specific requirements.",
                    "design-patterns", P.P5),
        Requirement("AG05", "AIBOM registry",
                    "Records their supply chain details including AI risk metrics or "
                    "verifiable RAI credentials.",
                    "design-patterns", P.P8),
    )
    mapping = (
        ("AG01", iso[0]), ("AG01", iso[1]), ("AG01", iso[2]),
        ("AG02", "QB-P8-002"), ("AG02", "QB-P8-003"), ("AG02", "QB-P8-005"),
        ("AG03", "QB-P6-007"), ("AG03", "QB-P6-008"), ("AG03", "QB-P6-001"),
        ("AG04", "QB-P2-003"), ("AG04", "QB-P5-006"),
        ("AG05", "QB-P8-014"), ("AG05", "QB-P8-015"),
    )
    return RequirementSet("agent-rai-plugins", "AI Agent RAI Plugin Coverage",
                          reqs, mapping, (), None)


def build_fm_requirement_set(bank: QuestionBank) -> RequirementSet:
    fm = {i: by_ref(bank, "EU-Act", f"EUA-{i:02d}") for i in range(2, 10)}
    reqs = (
        Requirement("FM01", "Risk management",
                    "Risk management and involve external experts", "gpai", P.P8),
        Requirement("FM02", "Data governance",
                    "Suitability of the data sources, possible biases and appropriate "
                    "mitigation", "gpai", P.P4),
        Requirement("FM03", "Documentation",
                    "Documentation for downstream providers", "gpai", P.P6),
        Requirement("FM04", "Environmental impact",
                    "Measurement of environmental impact", "gpai", P.P1),
        Requirement("FM05", "Quality management",
                    "Model evaluation with documented analysis and extensive testing",
                    "gpai", P.P5),
    )
    mapping = (
        ("FM01", fm[2]), ("FM01", fm[3]),
        ("FM02", fm[4]), ("FM02", fm[5]),
        ("FM03", fm[6]), ("FM03", fm[7]),
        ("FM04", fm[8]),
        ("FM05", fm[9]),
    )
    return RequirementSet("foundation-model", "Foundation Model Requirements",
                          reqs, mapping, (), None)


# ---------------------------------------------------------------------------
# Structural mirror fixture
# ---------------------------------------------------------------------------

# Per-principle (categories, subcategories, subquestions, distinct sources).
MIRROR_ROWS = {
    P.P1: (3, 7, 14, 4),
    P.P2: (3, 5, 17, 3),
    P.P3: (2, 6, 32, 4),
    P.P4: (3, 9, 47, 6),
    P.P5: (5, 11, 42, 6),
    P.P6: (3, 9, 32, 4),
    P.P7: (2, 4, 4, 2),
    P.P8: (5, 14, 57, 6),
}

ALL_CODES = ("NIST", "EU", "AIA", "NSW", "MS", "EU-Act", "ISO")


def _split(total: int, parts: int) -> list[int]:
    base, extra = divmod(total, parts)
    return [base + (1 if i < extra else 0) for i in range(parts)]


def build_table1_mirror() -> QuestionBank:
    levels = (1, 2, 3)
    stages = tuple(St)
    entries = []
    for principle, (n_cat, n_sub, n_q, n_src) in MIRROR_ROWS.items():
        pool = ALL_CODES[:n_src]
        subs_per_cat = _split(n_sub, n_cat)
        qs_per_sub = _split(n_q, n_sub)
        p = principle.value.lower()
        qi = 0
        categories = []
        sub_index = 0
        for ci in range(n_cat):
            subcats = []
            for _ in range(subs_per_cat[ci]):
                questions = []
                for _ in range(qs_per_sub[sub_index]):
                    qi += 1
                    code = pool[(qi - 1) % n_src]
                    gid = f"QB-{principle.value}-{qi:03d}"
                    questions.append(Question(
                        global_id=gid,
                        text=f"Structural mirror probe {qi} for principle "
                             f"{principle.value}?",
                        level=levels[(qi - 1) % 3],
                        stage=stages[(qi - 1) % 7],
                        principle=principle,
                        category_id=f"{p}-cat{ci + 1}",
                        subcategory_id=f"sub{sub_index + 1}",
                        sources=(code,),
                        internal_ids=(InternalId(code, f"T1-{principle.value}-{qi:03d}"),),
                    ))
                subcats.append(SubCategory(f"sub{sub_index + 1}",
                                           f"Sub-category {sub_index + 1}",
                                           tuple(questions)))
                sub_index += 1
            categories.append(RiskCategory(f"{p}-cat{ci + 1}", f"Category {ci + 1}",
                                           principle, tuple(subcats)))
        entries.append(PrincipleEntry(
            principle,
            pq(principle, f"Does the system uphold {principle.display_name.lower()}?"),
            tuple(categories),
        ))
    return QuestionBank(
        "table1-mirror",
        tuple(entries),
        (),
        tuple(SourceFramework(code, code) for code in ALL_CODES),
    )


def main() -> None:
    data_dir = ROOT / "src" / "raiqb" / "data"
    tests_dir = ROOT / "tests" / "data"
    data_dir.mkdir(parents=True, exist_ok=True)
    tests_dir.mkdir(parents=True, exist_ok=True)

    base = build_base_bank()
    assert validate(base).ok, validate(base).errors

    euact = build_eu_act_extension()
    with_euact = extend_bank(base, euact)
    n_base = len(base.subquestions())
    n_euact = len(with_euact.subquestions())
    assert n_euact - n_base == 10, (n_base, n_euact)

    iso = build_iso_extension(by_ref(with_euact, "EU-Act", "EUA-01"))
    with_iso = extend_bank(with_euact, iso)
    assert len(with_iso.subquestions()) - n_euact == 22

    eu_set = build_eu_requirement_set(with_iso)
    final = replace(with_iso, version="2025.1",
                    profiles=build_profiles(with_iso, list(eu_set.mapping)))
    report = validate(final)
    assert report.ok and not report.warnings, report.violations

    agent_set = build_agent_requirement_set(final)
    fm_set = build_fm_requirement_set(final)

    for profile_id, expected in (("agent-rai-plugins", 13), ("foundation-model", 8),
                                 ("esg-deep-dive", 42), ("eu-high-risk", 21)):
        profile = final.profile(profile_id)
        assert profile is not None and len(profile.question_ids) == expected, profile_id

    mirror = build_table1_mirror()
    mirror_summary = summarize(mirror)
    assert mirror_summary.totals[:3] == (26, 65, 245), mirror_summary.totals
    for principle, row in MIRROR_ROWS.items():
        got = mirror_summary.row(principle)
        assert (got.categories, got.subcategories, got.subquestions,
                got.distinct_sources) == row, principle

    all_yes = {qid: "yes" for _, qid in eu_set.mapping}

    outputs = {
        data_dir / "bank.json": serialize_bank(final),
        data_dir / "extension_eu_act.json": serialize_extension(euact),
        data_dir / "extension_iso.json": serialize_extension(iso),
        data_dir / "requirements_eu_high_risk.json": serialize_requirement_set(eu_set),
        data_dir / "requirements_agent_plugins.json": serialize_requirement_set(agent_set),
        data_dir / "requirements_foundation_model.json": serialize_requirement_set(fm_set),
        tests_dir / "bank_pre_regulation.json": serialize_bank(base),
        tests_dir / "table1_mirror.json": serialize_bank(mirror),
        tests_dir / "all_yes.json": canonical_dumps(all_yes),
    }
    for path, text in outputs.items():
        path.write_text(text, encoding="utf-8")
        print(f"wrote {path.relative_to(ROOT)} ({len(text)} bytes)")


if __name__ == "__main__":
    main()
