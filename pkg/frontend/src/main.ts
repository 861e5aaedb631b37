// DOM wiring for the review session: one pair at a time, keyboard-first.
// All state transitions live in logic.ts; the server is the source of truth
// for what has been judged.

import { ApiClient, tokenFromLocation } from "./api.js";
import {
  Draft,
  SessionView,
  acknowledge,
  applyKey,
  createView,
  draftBody,
  emptyDraft,
  isComplete,
  isTraining,
  moveCursor,
  pairHeadline,
  progressText,
  validateDraft,
} from "./logic.js";

const app = document.querySelector<HTMLElement>("#app");
if (!app) throw new Error("missing #app container");

const client = new ApiClient("", tokenFromLocation(window.location.search));

let view: SessionView;
let draft: Draft = { ...emptyDraft };
let note = "";
let busy = false;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function render(): void {
  app!.replaceChildren();

  const header = el("header");
  header.appendChild(el("h1", "", "Concept pair review"));
  const progress = el("div", "progress", progressText(view));
  header.appendChild(progress);
  const exportButton = el("button", "export", "Export CSV");
  exportButton.onclick = onExport;
  header.appendChild(exportButton);
  app!.appendChild(header);

  if (view.cursor === null || isComplete(view)) {
    const done = el("section", "done");
    done.appendChild(el("h2", "", "All pairs judged"));
    done.appendChild(
      el("p", "", "Every row is stored on the server. Export the CSV above."),
    );
    app!.appendChild(done);
    return;
  }

  const index = view.cursor;
  const row = view.rows[index];
  const card = el("section", "card");
  card.appendChild(el("div", "row-number", `Row ${index + 1} of ${view.total}`));
  card.appendChild(el("div", "pair", pairHeadline(row)));

  if (isTraining(view, index)) {
    card.appendChild(el("div", "training-flag", "Training sample (read-only)"));
    const pre = row.prefilled;
    if (pre) {
      const answer =
        pre.is_child === "yes"
          ? "Child? Yes"
          : pre.farther_away === "yes"
            ? "Farther away: Yes"
            : `Child? No${pre.reason ? " - " + pre.reason : ""}`;
      card.appendChild(el("div", "prefilled", answer));
    }
    const nav = el("div", "hint", "Use ArrowRight / ArrowLeft to browse.");
    card.appendChild(nav);
    app!.appendChild(card);
    return;
  }

  if (view.judged.has(index)) {
    card.appendChild(
      el("div", "judged-flag", "Already judged (stored on server); submitting overwrites."),
    );
  }

  const controls = el("div", "controls");
  const choices: Array<[string, string, boolean]> = [
    ["Y", "Child? Yes", draft.isChild === "yes"],
    ["F", "Farther away", draft.farther === "yes"],
    ["N", "No", draft.isChild === "no"],
  ];
  for (const [key, label, active] of choices) {
    const button = el("button", active ? "choice active" : "choice",
      `${label} (${key})`);
    button.onclick = () => {
      draft = applyKey(draft, key.toLowerCase());
      render();
    };
    controls.appendChild(button);
  }
  card.appendChild(controls);

  const reason = el("textarea", "reason") as HTMLTextAreaElement;
  reason.placeholder = "Reason if unrelated";
  reason.value = draft.reason;
  reason.rows = 3;
  reason.oninput = () => {
    draft = { ...draft, reason: reason.value };
  };
  card.appendChild(reason);

  const submit = el("button", "submit", "Submit (Enter)");
  submit.disabled = busy;
  submit.onclick = onSubmit;
  card.appendChild(submit);

  if (note) card.appendChild(el("div", "note", note));
  card.appendChild(
    el("div", "hint", "Keys: Y child, F farther away, N no (+ reason), Enter submit, arrows navigate."),
  );
  app!.appendChild(card);
}

async function onSubmit(): Promise<void> {
  if (busy || view.cursor === null || isTraining(view, view.cursor)) return;
  const check = validateDraft(draft);
  if (!check.ok) {
    note = check.message;
    render();
    return;
  }
  busy = true;
  const index = view.cursor;
  const result = await client.postJudgment(draftBody(index, draft));
  busy = false;
  if (!result.ok) {
    note = result.detail; // 422 keeps the cursor in place
    render();
    return;
  }
  // trust but verify: local state must match the server's progress
  const progress = await client.getProgress();
  view = { ...acknowledge(view, index), judged: new Set(progress.judged_indices) };
  view = { ...view, cursor: progress.next_index === null ? null : view.cursor };
  draft = { ...emptyDraft };
  note = "";
  render();
}

async function onExport(): Promise<void> {
  const csv = await client.exportCsv();
  const blob = new Blob([csv], { type: "text/csv;charset=utf-8" });
  const url = URL.createObjectURL(blob);
  const link = document.createElement("a");
  link.href = url;
  link.download = "judgments.csv";
  link.click();
  URL.revokeObjectURL(url);
}

function onKey(event: KeyboardEvent): void {
  if (event.target instanceof HTMLTextAreaElement) {
    if (event.key === "Enter" && !event.shiftKey) {
      event.preventDefault();
      void onSubmit();
    }
    return;
  }
  const key = event.key.toLowerCase();
  if (key === "y" || key === "f" || key === "n") {
    draft = applyKey(draft, key);
    note = "";
    render();
    if (key === "n") {
      document.querySelector<HTMLTextAreaElement>(".reason")?.focus();
    }
  } else if (event.key === "Enter") {
    void onSubmit();
  } else if (event.key === "ArrowRight") {
    view = moveCursor(view, 1);
    draft = { ...emptyDraft };
    render();
  } else if (event.key === "ArrowLeft") {
    view = moveCursor(view, -1);
    draft = { ...emptyDraft };
    render();
  }
}

async function boot(): Promise<void> {
  try {
    const [sheet, progress] = await Promise.all([
      client.getSheet(),
      client.getProgress(),
    ]);
    view = createView(sheet, progress);
    document.addEventListener("keydown", onKey);
    render();
  } catch (error) {
    const banner = el("section", "banner");
    banner.appendChild(el("h2", "", "Cannot reach the review server"));
    banner.appendChild(el("p", "", String(error)));
    const retry = el("button", "", "Retry");
    retry.onclick = () => void boot();
    banner.appendChild(retry);
    app!.replaceChildren(banner);
  }
}

void boot();
