// Pure session logic: cursor movement, verdict drafting, and the client-side
// judgment rules. Keeping this DOM-free is what makes the flow testable.

import type { Progress, Sheet, SheetRow } from "./api.js";

export const ISA_ARROW = "←IS-A-";

export interface Draft {
  isChild: "yes" | "no" | "";
  farther: "yes" | "";
  reason: string;
}

export const emptyDraft: Draft = { isChild: "", farther: "", reason: "" };

export interface SessionView {
  rows: SheetRow[];
  trainingPrefix: number;
  total: number;
  judged: Set<number>; // non-training rows acknowledged by the server
  cursor: number | null; // null when every row is judged
}

export function createView(sheet: Sheet, progress: Progress): SessionView {
  return {
    rows: sheet.pairs,
    trainingPrefix: sheet.training_prefix,
    total: sheet.total,
    judged: new Set(progress.judged_indices),
    cursor: progress.next_index,
  };
}

// the exact arrow framing the spreadsheet used; never the stratum
export function pairHeadline(row: SheetRow): string {
  return `${row.parent} ${ISA_ARROW} ${row.child}`;
}

export function isTraining(view: SessionView, index: number): boolean {
  return index < view.trainingPrefix;
}

export function isJudged(view: SessionView, index: number): boolean {
  return isTraining(view, index) || view.judged.has(index);
}

export function judgedCount(view: SessionView): number {
  return view.trainingPrefix + view.judged.size;
}

export function isComplete(view: SessionView): boolean {
  return judgedCount(view) >= view.total;
}

export function progressText(view: SessionView): string {
  return `${judgedCount(view)}/${view.total} judged`;
}

export function nextUnjudged(view: SessionView, from: number): number | null {
  for (let index = Math.max(from, view.trainingPrefix); index < view.total; index++) {
    if (!view.judged.has(index)) return index;
  }
  for (let index = view.trainingPrefix; index < from; index++) {
    if (!view.judged.has(index)) return index;
  }
  return null;
}

export function moveCursor(view: SessionView, delta: number): SessionView {
  if (view.cursor === null) return view;
  const target = Math.min(Math.max(view.cursor + delta, 0), view.total - 1);
  return { ...view, cursor: target };
}

// verdict keys: y = direct child, f = farther away, n = not related
export function applyKey(draft: Draft, key: string): Draft {
  switch (key) {
    case "y":
      return { ...draft, isChild: "yes", farther: "" };
    case "f":
      return { ...draft, isChild: "", farther: "yes" };
    case "n":
      return { ...draft, isChild: "no", farther: "" };
    default:
      return draft;
  }
}

export type DraftCheck = { ok: true } | { ok: false; message: string };

export function validateDraft(draft: Draft): DraftCheck {
  if (draft.isChild === "yes" && draft.farther === "yes") {
    return { ok: false, message: "Pick one: direct child or farther away." };
  }
  if (draft.isChild === "" && draft.farther === "") {
    return { ok: false, message: "Choose a verdict first (Y / F / N)." };
  }
  if (draft.isChild === "no" && draft.reason.trim() === "") {
    return {
      ok: false,
      message: 'A "No" needs a reason (the sheet\'s "Reason if unrelated" column).',
    };
  }
  return { ok: true };
}

// server acknowledged the judgment: record it and advance to the next
// unjudged row (wrapping), or finish
export function acknowledge(view: SessionView, index: number): SessionView {
  const judged = new Set(view.judged);
  if (index >= view.trainingPrefix) judged.add(index);
  const moved = { ...view, judged };
  return { ...moved, cursor: nextUnjudged(moved, index + 1) };
}

export function draftBody(index: number, draft: Draft) {
  return {
    pair_index: index,
    is_child: draft.isChild,
    farther_away: draft.farther,
    reason: draft.reason,
  };
}
