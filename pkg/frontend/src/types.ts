// Payload shapes of the /v1 API. The console renders these verbatim and never
// recomputes scores or ratings on the client.

export type AnswerValue = "yes" | "no" | "na";

export interface Metric {
  name: string;
  description: string;
  unit: string;
}

export interface QuestionPayload {
  global_id: string;
  text: string;
  level: 1 | 2 | 3;
  stage: string;
  sources: string[];
  internal_ids: { source: string; ref: string }[];
  metric: Metric | null;
  evidence_required: boolean;
  follow_ups: string[];
  gate: "always" | "on_no" | "on_yes";
}

export interface AnswerRecord {
  value: AnswerValue;
  evidence: string;
  metric_value: number | null;
  metric_unit: string;
  answered_by: string;
  answered_at: string;
}

export interface RiskRating {
  impact: number;
  probability: number;
  score: number;
  level: "Low" | "Medium" | "High";
}

export interface RiskEntry {
  risk_id: string;
  category_id: string;
  title: string;
  description: string;
  causes: string;
  existing_mitigations: string;
  owner: string;
  linked_question_ids: string[];
  rating: RiskRating;
}

export interface SessionDoc {
  session_id: string;
  bank_version: string;
  profile_id: string;
  subject: string;
  created_at: string;
  updated_at: string;
  threshold_override: number | null;
  evidence_override: boolean | null;
  closed_at: string | null;
  answers: Record<string, AnswerRecord>;
  risk_register: RiskEntry[];
  audit_log: unknown[];
}

export interface SessionEnvelope {
  session: SessionDoc;
  open: number;
  warnings: string[];
}

export interface ComplianceResult {
  score: number;
  n_total: number;
  n_applicable: number;
  threshold: number;
  level: string;
  label: string;
}

export interface ScorePayload {
  set: string;
  result: ComplianceResult | null;
  missing_answers: string[];
}

export interface ProfileSummary {
  id: string;
  name: string;
  description: string;
  question_ids: string[];
  evidence_required_override: boolean | null;
  threshold_default: number | null;
  size: number;
}

export interface PrincipleRiskRow {
  principle: string;
  low: number;
  medium: number;
  high: number;
}

export interface ReportJson {
  subject: string;
  session_id: string;
  completion: { answered: number; total: number };
  principle_risks: PrincipleRiskRow[];
  compliance: Record<string, unknown> | null;
  unanswered: string[];
}

export interface ApiErrorBody {
  code: string;
  message: string;
  details: unknown;
}
