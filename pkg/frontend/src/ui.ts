// DOM rendering for a SessionView snapshot. Rendering is a pure projection of
// the view; all interactivity is wired through the callbacks given to mount().

import type { SessionView } from "./state.js";
import type { AnswerValue } from "./types.js";

export interface UiCallbacks {
  onStart(profile: string, subject: string): void;
  onAnswer(value: AnswerValue, evidence: string, metricValue: number | null): void;
  onAddRisk(entry: {
    category_id: string;
    title: string;
    impact: number;
    probability: number;
  }): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function render(container: HTMLElement, view: SessionView, cb: UiCallbacks): void {
  const doc = container.ownerDocument;
  container.replaceChildren();

  const header = el(doc, "header", "console-header");
  header.append(el(doc, "h1", undefined, "RAI Assessment Console"));
  if (view.sessionId) {
    header.append(
      el(doc, "div", "session-meta",
         `${view.subject} — ${view.profileId} — ${view.sessionId}`),
    );
  }
  container.append(header);

  if (view.banner) {
    container.append(el(doc, "div", "banner error-banner", view.banner));
  }
  for (const warning of view.warnings) {
    container.append(el(doc, "div", "banner warning-banner", warning));
  }

  if (view.phase === "idle") {
    container.append(renderStartForm(doc, cb));
    return;
  }

  container.append(renderProgress(doc, view));
  if (view.score) {
    container.append(renderScore(doc, view));
  }

  if (view.phase === "question" && view.current) {
    container.append(renderQuestionCard(doc, view, cb));
  } else if (view.phase === "complete") {
    container.append(renderCompletion(doc, view));
  } else if (view.phase === "review") {
    container.append(el(doc, "div", "review-note",
                        "Session is closed; review mode only."));
  }

  container.append(renderRegister(doc, view, cb));
}

function renderStartForm(doc: Document, cb: UiCallbacks): HTMLElement {
  const form = el(doc, "section", "start-form");
  const profile = el(doc, "input");
  profile.id = "profile-input";
  profile.placeholder = "profile id (e.g. agent-rai-plugins)";
  const subject = el(doc, "input");
  subject.id = "subject-input";
  subject.placeholder = "subject under assessment";
  const button = el(doc, "button", "primary", "Start session");
  button.id = "start-button";
  button.addEventListener("click", () => cb.onStart(profile.value, subject.value));
  form.append(profile, subject, button);
  return form;
}

function renderProgress(doc: Document, view: SessionView): HTMLElement {
  const wrap = el(doc, "section", "progress");
  const label = el(doc, "div", "progress-label",
                   `${view.answered}/${view.total} answered`);
  label.id = "progress-label";
  const bar = el(doc, "div", "progress-bar");
  const fill = el(doc, "div", "progress-fill");
  const pct = view.total > 0 ? Math.round((view.answered / view.total) * 100) : 0;
  fill.style.width = `${pct}%`;
  bar.append(fill);
  wrap.append(label, bar);
  return wrap;
}

function renderScore(doc: Document, view: SessionView): HTMLElement {
  const panel = el(doc, "section", "score-panel");
  panel.id = "score-panel";
  const score = view.score!;
  if (score.result) {
    panel.append(el(doc, "div", "score-label", score.result.label));
    panel.append(el(doc, "div", "score-detail",
                    `threshold ${score.result.threshold} over ` +
                    `${score.result.n_applicable} applicable`));
  } else {
    panel.append(el(doc, "div", "score-label score-pending",
                    `score pending — ${score.missing_answers.length} mapped ` +
                    "question(s) unanswered"));
  }
  return panel;
}

function renderQuestionCard(doc: Document, view: SessionView, cb: UiCallbacks): HTMLElement {
  const q = view.current!;
  const card = el(doc, "section", "question-card");
  card.id = "question-card";
  card.dataset.questionId = q.global_id;

  const badges = el(doc, "div", "badges");
  badges.append(el(doc, "span", `badge level-${q.level}`, `L${q.level}`));
  badges.append(el(doc, "span", "badge stage", q.stage));
  for (const source of q.sources) {
    badges.append(el(doc, "span", "badge source", source));
  }
  card.append(badges);
  card.append(el(doc, "p", "question-text", q.text));

  const evidence = el(doc, "textarea", "evidence-field");
  evidence.id = "evidence-input";
  evidence.placeholder = q.evidence_required
    ? "evidence (required for a Yes answer)"
    : "evidence (optional)";
  card.append(evidence);

  let metric: HTMLInputElement | null = null;
  if (q.metric) {
    card.append(el(doc, "label", "metric-prompt",
                   `${q.metric.name} (${q.metric.unit})`));
    metric = el(doc, "input");
    metric.id = "metric-input";
    metric.type = "number";
    card.append(metric);
  }

  if (view.fieldError) {
    const msg = el(doc, "div", "field-error", view.fieldError);
    msg.id = "field-error";
    card.append(msg);
  }

  const actions = el(doc, "div", "answer-actions");
  for (const value of ["yes", "no", "na"] as AnswerValue[]) {
    const button = el(doc, "button", `answer answer-${value}`, value.toUpperCase());
    button.id = `answer-${value}`;
    button.addEventListener("click", () => {
      const metricValue = metric && metric.value !== "" ? Number(metric.value) : null;
      cb.onAnswer(value, evidence.value, metricValue);
    });
    actions.append(button);
  }
  card.append(actions);
  return card;
}

function renderCompletion(doc: Document, view: SessionView): HTMLElement {
  const panel = el(doc, "section", "completion");
  panel.id = "completion-panel";
  panel.append(el(doc, "h2", undefined, "Assessment complete"));
  if (view.report) {
    const ranking = el(doc, "ol", "principle-ranking");
    ranking.id = "principle-ranking";
    for (const row of view.report.principle_risks) {
      ranking.append(el(doc, "li", undefined,
                        `${row.principle}: ${row.medium + row.high} medium+high ` +
                        `(${row.low} low)`));
    }
    panel.append(el(doc, "p", undefined, "Principles ranked by medium+high risk:"));
    panel.append(ranking);
  }
  return panel;
}

function renderRegister(doc: Document, view: SessionView, cb: UiCallbacks): HTMLElement {
  const section = el(doc, "section", "risk-register");
  section.append(el(doc, "h2", undefined, "Risk register"));

  const table = el(doc, "table", "register-table");
  table.id = "register-table";
  const head = el(doc, "tr");
  for (const title of ["ID", "Category", "Title", "Impact", "Probability", "Rating"]) {
    head.append(el(doc, "th", undefined, title));
  }
  table.append(head);
  for (const entry of view.register) {
    const row = el(doc, "tr");
    row.append(el(doc, "td", undefined, entry.risk_id));
    row.append(el(doc, "td", undefined, entry.category_id));
    row.append(el(doc, "td", undefined, entry.title));
    row.append(el(doc, "td", undefined, String(entry.rating.impact)));
    row.append(el(doc, "td", undefined, String(entry.rating.probability)));
    const cell = el(doc, "td",
                    `heat-cell heat-${entry.rating.level.toLowerCase()}`,
                    `${entry.rating.level} (${entry.rating.score})`);
    row.append(cell);
    table.append(row);
  }
  section.append(table);

  if (view.phase !== "review" && view.sessionId) {
    const form = el(doc, "div", "risk-form");
    const category = el(doc, "input");
    category.id = "risk-category";
    category.placeholder = "category id";
    const title = el(doc, "input");
    title.id = "risk-title";
    title.placeholder = "title";
    const impact = el(doc, "input");
    impact.id = "risk-impact";
    impact.type = "number";
    impact.placeholder = "impact 1-3";
    const probability = el(doc, "input");
    probability.id = "risk-probability";
    probability.type = "number";
    probability.placeholder = "probability 1-3";
    const add = el(doc, "button", undefined, "Add risk");
    add.id = "risk-add";
    add.addEventListener("click", () => cb.onAddRisk({
      category_id: category.value,
      title: title.value,
      impact: Number(impact.value),
      probability: Number(probability.value),
    }));
    form.append(category, title, impact, probability, add);
    section.append(form);
  }
  return section;
}
