// Entry point: wires the session console to the DOM. The API base defaults to
// the serving origin; override with ?api=http://host:port. A ?session=<id>
// parameter restores an existing session (the browser-refresh path).

import { SessionConsole } from "./state.js";
import { render } from "./ui.js";
import type { AnswerValue } from "./types.js";

const params = new URLSearchParams(window.location.search);
const apiBase = params.get("api") ?? window.location.origin;
const requirementSet = params.get("set");
const container = document.getElementById("app");

if (container) {
  const console_ = SessionConsole.connect(apiBase, requirementSet);

  const redraw = () => render(container, console_.view(), callbacks);

  const callbacks = {
    onStart(profile: string, subject: string) {
      void console_.start(profile, subject).then(() => {
        const view = console_.view();
        if (view.sessionId) {
          const url = new URL(window.location.href);
          url.searchParams.set("session", view.sessionId);
          window.history.replaceState(null, "", url);
        }
        redraw();
      });
    },
    onAnswer(value: AnswerValue, evidence: string, metricValue: number | null) {
      void console_.submitAnswer(value, evidence, metricValue).then(redraw);
    },
    onAddRisk(entry: { category_id: string; title: string; impact: number; probability: number }) {
      void console_.addRisk(entry).then(redraw);
    },
  };

  const existing = params.get("session");
  if (existing) {
    void console_.restore(existing).then(redraw);
  } else {
    redraw();
  }
}
