// Typed client for the /v1 assessment API.

import type {
  AnswerValue,
  ProfileSummary,
  QuestionPayload,
  ReportJson,
  RiskEntry,
  ScorePayload,
  SessionEnvelope,
} from "./types.js";

export class ApiError extends Error {
  readonly code: string;
  readonly status: number;
  readonly details: unknown;

  constructor(status: number, code: string, message: string, details: unknown = null) {
    super(message);
    this.name = "ApiError";
    this.status = status;
    this.code = code;
    this.details = details;
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private readonly base: string;
  private readonly fetchFn: FetchLike;

  constructor(baseUrl: string, fetchFn?: FetchLike) {
    this.base = baseUrl.replace(/\/+$/, "");
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(`${this.base}${path}`, init);
    const text = await response.text();
    if (!response.ok) {
      let code = `HTTP_${response.status}`;
      let message = response.statusText || `request failed (${response.status})`;
      let details: unknown = null;
      try {
        const body = JSON.parse(text);
        if (body && typeof body.code === "string") {
          code = body.code;
          message = body.message ?? message;
          details = body.details ?? null;
        }
      } catch {
        // non-JSON error body; keep the HTTP fallback
      }
      throw new ApiError(response.status, code, message, details);
    }
    return JSON.parse(text) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  listProfiles(): Promise<ProfileSummary[]> {
    return this.request("/v1/profiles");
  }

  createSession(profile: string, subject: string): Promise<SessionEnvelope> {
    return this.post("/v1/sessions", { profile, subject });
  }

  getSession(sessionId: string): Promise<SessionEnvelope> {
    return this.request(`/v1/sessions/${encodeURIComponent(sessionId)}`);
  }

  nextQuestions(sessionId: string, k = 1): Promise<{ questions: QuestionPayload[] }> {
    return this.request(
      `/v1/sessions/${encodeURIComponent(sessionId)}/next?k=${k}`,
    );
  }

  submitAnswer(
    sessionId: string,
    questionId: string,
    value: AnswerValue,
    evidence = "",
    metricValue: number | null = null,
  ): Promise<SessionEnvelope> {
    return this.post(`/v1/sessions/${encodeURIComponent(sessionId)}/answers`, {
      question_id: questionId,
      value,
      evidence,
      metric_value: metricValue,
    });
  }

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
  ): Promise<{ risk: RiskEntry; register: RiskEntry[] }> {
    return this.post(`/v1/sessions/${encodeURIComponent(sessionId)}/risks`, entry);
  }

  score(sessionId: string, set: string, threshold?: number): Promise<ScorePayload> {
    const suffix = threshold === undefined ? "" : `&threshold=${threshold}`;
    return this.request(
      `/v1/sessions/${encodeURIComponent(sessionId)}/score?set=${encodeURIComponent(set)}${suffix}`,
    );
  }

  reportJson(sessionId: string, set?: string): Promise<ReportJson> {
    const suffix = set ? `&set=${encodeURIComponent(set)}` : "";
    return this.request(
      `/v1/sessions/${encodeURIComponent(sessionId)}/report?format=json${suffix}`,
    );
  }
}
