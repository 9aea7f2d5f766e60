// Reaction-time capture. Both timestamps must come from the same monotonic
// clock (performance.now() in the browser); the flow passes them through.

import { REACTION_CEILING_MS } from "./schema.js";

export interface ReactionResult {
  reactionMs: number;
  clamped: boolean;
}

export function captureReactionTime(
  displayedAtMs: number,
  readingStartedAtMs: number,
): ReactionResult {
  if (readingStartedAtMs < displayedAtMs) {
    throw new Error("reading onset precedes word display");
  }
  const raw = readingStartedAtMs - displayedAtMs;
  if (raw > REACTION_CEILING_MS) {
    return { reactionMs: REACTION_CEILING_MS, clamped: true };
  }
  return { reactionMs: raw, clamped: false };
}

export function now(): number {
  return typeof performance !== "undefined" ? performance.now() : Date.now();
}
