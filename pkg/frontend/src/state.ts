// Session view-model. Every number shown in the console comes from the most
// recent API payload: the client never computes scores, levels, or ratings.
// Optimistic updates are deliberately absent; each mutation waits for the API
// and then re-derives the whole view.

import { ApiClient, ApiError } from "./api.js";
import type {
  AnswerValue,
  QuestionPayload,
  ReportJson,
  RiskEntry,
  ScorePayload,
  SessionEnvelope,
} from "./types.js";

export interface ConsoleApi {
  createSession(profile: string, subject: string): Promise<SessionEnvelope>;
  getSession(sessionId: string): Promise<SessionEnvelope>;
  nextQuestions(sessionId: string, k?: number): Promise<{ questions: QuestionPayload[] }>;
  submitAnswer(
    sessionId: string,
    questionId: string,
    value: AnswerValue,
    evidence?: string,
    metricValue?: number | null,
  ): Promise<SessionEnvelope>;
  addRisk(
    sessionId: string,
    entry: {
      category_id: string;
      title: string;
      description?: string;
      owner?: string;
      impact: number;
      probability: number;
    },
  ): Promise<{ risk: RiskEntry; register: RiskEntry[] }>;
  score(sessionId: string, set: string, threshold?: number): Promise<ScorePayload>;
  reportJson(sessionId: string, set?: string): Promise<ReportJson>;
}

export interface SessionView {
  phase: "idle" | "question" | "complete" | "review";
  sessionId: string | null;
  subject: string;
  profileId: string;
  answered: number;
  total: number;
  current: QuestionPayload | null;
  score: ScorePayload | null;
  register: RiskEntry[];
  report: ReportJson | null;
  banner: string | null;
  fieldError: string | null;
  warnings: string[];
}

export class SessionConsole {
  private readonly api: ConsoleApi;
  private readonly requirementSet: string | null;
  private envelope: SessionEnvelope | null = null;
  private current: QuestionPayload | null = null;
  private scorePayload: ScorePayload | null = null;
  private report: ReportJson | null = null;
  private banner: string | null = null;
  private fieldError: string | null = null;

  constructor(api: ConsoleApi, requirementSet: string | null = null) {
    this.api = api;
    this.requirementSet = requirementSet;
  }

  static connect(baseUrl: string, requirementSet: string | null = null): SessionConsole {
    return new SessionConsole(new ApiClient(baseUrl), requirementSet);
  }

  async start(profile: string, subject: string): Promise<SessionView> {
    this.banner = null;
    try {
      this.envelope = await this.api.createSession(profile, subject);
    } catch (error) {
      this.banner = describe(error);
      this.envelope = null;
      return this.view();
    }
    await this.refresh();
    return this.view();
  }

  /** Re-hydrate from the server, e.g. after a browser refresh. */
  async restore(sessionId: string): Promise<SessionView> {
    this.banner = null;
    try {
      this.envelope = await this.api.getSession(sessionId);
    } catch (error) {
      this.banner = describe(error);
      this.envelope = null;
      return this.view();
    }
    await this.refresh();
    return this.view();
  }

  async submitAnswer(
    value: AnswerValue,
    evidence = "",
    metricValue: number | null = null,
  ): Promise<SessionView> {
    if (!this.envelope || !this.current) {
      this.banner = "no question to answer";
      return this.view();
    }
    this.fieldError = null;
    try {
      this.envelope = await this.api.submitAnswer(
        this.envelope.session.session_id,
        this.current.global_id,
        value,
        evidence,
        metricValue,
      );
    } catch (error) {
      if (error instanceof ApiError && error.code === "EVIDENCE_REQUIRED") {
        // field-level validation message; the answer was not recorded
        this.fieldError = error.message;
        return this.view();
      }
      if (error instanceof ApiError && error.status === 409) {
        this.banner = "another writer holds this session; retry the answer";
        return this.view();
      }
      this.banner = describe(error);
      return this.view();
    }
    await this.refresh();
    return this.view();
  }

  async addRisk(entry: {
    category_id: string;
    title: string;
    description?: string;
    owner?: string;
    impact: number;
    probability: number;
  }): Promise<SessionView> {
    if (!this.envelope) {
      this.banner = "no active session";
      return this.view();
    }
    this.fieldError = null;
    try {
      // the register (with API-computed ratings) comes back in the envelope
      await this.api.addRisk(this.envelope.session.session_id, entry);
      this.envelope = await this.api.getSession(this.envelope.session.session_id);
    } catch (error) {
      if (error instanceof ApiError && error.code === "OUT_OF_RANGE") {
        this.fieldError = error.message;
        return this.view();
      }
      this.banner = describe(error);
      return this.view();
    }
    return this.view();
  }

  private async refresh(): Promise<void> {
    if (!this.envelope) return;
    const sessionId = this.envelope.session.session_id;
    const next = await this.api.nextQuestions(sessionId, 1);
    this.current = next.questions[0] ?? null;
    if (this.requirementSet) {
      this.scorePayload = await this.api.score(sessionId, this.requirementSet);
    }
    if (this.current === null) {
      this.report = await this.api.reportJson(
        sessionId,
        this.requirementSet ?? undefined,
      );
    } else {
      this.report = null;
    }
  }

  view(): SessionView {
    const session = this.envelope?.session ?? null;
    const answered = session ? Object.keys(session.answers).length : 0;
    const open = this.envelope?.open ?? 0;
    let phase: SessionView["phase"] = "idle";
    if (session) {
      if (session.closed_at !== null) phase = "review";
      else if (this.current) phase = "question";
      else phase = "complete";
    }
    return {
      phase,
      sessionId: session?.session_id ?? null,
      subject: session?.subject ?? "",
      profileId: session?.profile_id ?? "",
      answered,
      total: answered + open,
      current: this.current,
      score: this.scorePayload,
      register: session?.risk_register ?? [],
      report: this.report,
      banner: this.banner,
      fieldError: this.fieldError,
      warnings: this.envelope?.warnings ?? [],
    };
  }
}

function describe(error: unknown): string {
  if (error instanceof ApiError) {
    return `${error.code}: ${error.message}`;
  }
  return error instanceof Error ? error.message : String(error);
}
