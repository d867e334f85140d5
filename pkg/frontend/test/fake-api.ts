// In-memory stand-in for the /v1 API, used by the unit tests. It intentionally
// mimics the server's behaviour for one linear profile with a single
// follow-up pair and an evidence-required question.

import { ApiError } from "../src/api.js";
import type { ConsoleApi } from "../src/state.js";
import type {
  AnswerValue,
  QuestionPayload,
  ReportJson,
  RiskEntry,
  ScorePayload,
  SessionDoc,
  SessionEnvelope,
} from "../src/types.js";

function question(id: string, overrides: Partial<QuestionPayload> = {}): QuestionPayload {
  return {
    global_id: id,
    text: `Probe ${id}?`,
    level: 2,
    stage: "design",
    sources: [],
    internal_ids: [],
    metric: null,
    evidence_required: false,
    follow_ups: [],
    gate: "always",
    ...overrides,
  };
}

export class FakeApi implements ConsoleApi {
  // Q1 -> Q2 is a follow-up pair; Q3 requires evidence on yes.
  readonly questions: QuestionPayload[] = [
    question("Q1", { follow_ups: ["Q2"], level: 1 }),
    question("Q2", { gate: "on_no" }),
    question("Q3", { evidence_required: true, level: 3 }),
  ];
  private session: SessionDoc | null = null;

  private envelope(): SessionEnvelope {
    if (!this.session) throw new ApiError(404, "NOT_FOUND", "no session");
    const open = this.eligible().length;
    return { session: structuredClone(this.session), open, warnings: [] };
  }

  private eligible(): QuestionPayload[] {
    if (!this.session) return [];
    const answers = this.session.answers;
    return this.questions.filter((q) => {
      if (q.global_id in answers) return false;
      const parents = this.questions.filter((p) => p.follow_ups.includes(q.global_id));
      return parents.every((p) => {
        const parent = answers[p.global_id];
        if (!parent) return false;
        if (q.gate === "always") return true;
        return q.gate === "on_no" ? parent.value === "no" : parent.value === "yes";
      });
    });
  }

  async createSession(profile: string, subject: string): Promise<SessionEnvelope> {
    if (profile !== "fake-profile") {
      throw new ApiError(404, "UNKNOWN_PROFILE", `no profile with id '${profile}'`);
    }
    this.session = {
      session_id: "fake01",
      bank_version: "test",
      profile_id: profile,
      subject,
      created_at: "2025-06-01T12:00:00+00:00",
      updated_at: "2025-06-01T12:00:00+00:00",
      threshold_override: null,
      evidence_override: null,
      closed_at: null,
      answers: {},
      risk_register: [],
      audit_log: [],
    };
    return this.envelope();
  }

  async getSession(): Promise<SessionEnvelope> {
    return this.envelope();
  }

  async nextQuestions(_: string, k = 1): Promise<{ questions: QuestionPayload[] }> {
    return { questions: this.eligible().slice(0, k) };
  }

  async submitAnswer(
    _: string,
    questionId: string,
    value: AnswerValue,
    evidence = "",
  ): Promise<SessionEnvelope> {
    if (!this.session) throw new ApiError(404, "NOT_FOUND", "no session");
    const q = this.questions.find((item) => item.global_id === questionId);
    if (!q) throw new ApiError(400, "UNKNOWN_QUESTION", "not in profile");
    if (q.evidence_required && value === "yes" && evidence.trim() === "") {
      throw new ApiError(400, "EVIDENCE_REQUIRED",
                         `question '${questionId}' requires evidence for a Yes answer`);
    }
    this.session.answers[questionId] = {
      value,
      evidence,
      metric_value: null,
      metric_unit: "",
      answered_by: "",
      answered_at: "2025-06-01T12:01:00+00:00",
    };
    return this.envelope();
  }

  async addRisk(
    _: string,
    entry: { category_id: string; title: string; impact: number; probability: number },
  ): Promise<{ risk: RiskEntry; register: RiskEntry[] }> {
    if (!this.session) throw new ApiError(404, "NOT_FOUND", "no session");
    if (entry.impact < 1 || entry.impact > 3 || entry.probability < 1 || entry.probability > 3) {
      throw new ApiError(400, "OUT_OF_RANGE", "impact must be an integer in 1..3");
    }
    const score = entry.impact * entry.probability;
    const level = score <= 2 ? "Low" : score <= 4 ? "Medium" : "High";
    const risk: RiskEntry = {
      risk_id: `R${this.session.risk_register.length + 1}`,
      category_id: entry.category_id,
      title: entry.title,
      description: "",
      causes: "",
      existing_mitigations: "",
      owner: "",
      linked_question_ids: [],
      rating: { impact: entry.impact, probability: entry.probability, score, level },
    };
    this.session.risk_register.push(risk);
    return { risk: structuredClone(risk), register: structuredClone(this.session.risk_register) };
  }

  async score(): Promise<ScorePayload> {
    if (!this.session) throw new ApiError(404, "NOT_FOUND", "no session");
    const answers = Object.values(this.session.answers);
    const missing = this.questions
      .map((q) => q.global_id)
      .filter((id) => !(id in this.session!.answers));
    if (missing.length > 0) {
      return { set: "fake-set", result: null, missing_answers: missing };
    }
    const applicable = answers.filter((a) => a.value !== "na");
    const score = applicable.filter((a) => a.value === "yes").length;
    const label = score === applicable.length ? "Full Compliance" : "Partial Compliance";
    return {
      set: "fake-set",
      result: {
        score,
        n_total: answers.length,
        n_applicable: applicable.length,
        threshold: 1,
        level: label.toLowerCase().replace(" ", "_"),
        label: `${label} (${score}/${applicable.length})`,
      },
      missing_answers: [],
    };
  }

  async reportJson(): Promise<ReportJson> {
    if (!this.session) throw new ApiError(404, "NOT_FOUND", "no session");
    return {
      subject: this.session.subject,
      session_id: this.session.session_id,
      completion: {
        answered: Object.keys(this.session.answers).length,
        total: this.questions.length,
      },
      principle_risks: [
        { principle: "P8", low: 0, medium: 1, high: 1 },
        { principle: "P1", low: 1, medium: 0, high: 0 },
      ],
      compliance: null,
      unanswered: [],
    };
  }
}
