import { describe, expect, it } from "vitest";

import { AssessmentFlow } from "../../src/flow.js";
import {
  REACTION_CEILING_MS,
  SESSION_SCHEMA,
  validateSessionDoc,
} from "../../src/schema.js";
import { fakeWordlist } from "./helpers.js";

function runWholeSession(flow: AssessmentFlow, start = 0) {
  let t = start;
  flow.begin(t);
  for (let i = 0; i < flow.wordlist.items.length; i++) {
    t += 100;
    expect(flow.markOnset(t)).toBe(true);
    flow.setCorrect(i % 3 !== 0);
    if (i % 5 === 0) flow.toggleBacktrack();
    t += 50;
    expect(flow.next(t)).toBe(true);
  }
  return t;
}

describe("AssessmentFlow", () => {
  it("walks all words in list order and reaches review", () => {
    const flow = new AssessmentFlow(fakeWordlist(), "s1", 10);
    const seen: string[] = [];
    let t = 0;
    flow.begin(t);
    while (flow.phase === "running") {
      seen.push(flow.currentWord!.text);
      flow.markOnset((t += 10));
      flow.setCorrect(true);
      flow.next((t += 10));
    }
    expect(flow.phase).toBe("review");
    expect(seen).toEqual(fakeWordlist().items.map((w) => w.text));
  });

  it("onset before display is rejected and the timer unchanged", () => {
    const flow = new AssessmentFlow(fakeWordlist(4), "s2", 9);
    flow.begin(1000);
    expect(flow.markOnset(999)).toBe(false);
    expect(flow.currentDraft.onsetAtMs).toBeNull();
    expect(flow.currentDraft.reactionMs).toBeNull();
    expect(flow.markOnset(1200)).toBe(true);
    expect(flow.currentDraft.reactionMs).toBe(200);
  });

  it("double onset is rejected", () => {
    const flow = new AssessmentFlow(fakeWordlist(4), "s3", 9);
    flow.begin(0);
    expect(flow.markOnset(100)).toBe(true);
    expect(flow.markOnset(300)).toBe(false);
    expect(flow.currentDraft.reactionMs).toBe(100);
  });

  it("advance is blocked until onset and correctness are both in", () => {
    const flow = new AssessmentFlow(fakeWordlist(4), "s4", 9);
    flow.begin(0);
    expect(flow.next(10)).toBe(false);
    expect(flow.blockers()).toHaveLength(2);
    flow.setCorrect(true);
    expect(flow.next(20)).toBe(false);
    expect(flow.blockers()).toEqual(["reading onset (space)"]);
    flow.markOnset(30);
    expect(flow.next(40)).toBe(true);
    expect(flow.index).toBe(1);
  });

  it("reaction times stay within [0, ceiling] even for slow onsets", () => {
    const flow = new AssessmentFlow(fakeWordlist(4), "s5", 9);
    flow.begin(0);
    flow.markOnset(90_000); // 90 s later
    expect(flow.currentDraft.reactionMs).toBe(REACTION_CEILING_MS);
    expect(flow.currentDraft.clamped).toBe(true);
  });

  it("export is blocked while incomplete", () => {
    const flow = new AssessmentFlow(fakeWordlist(4), "s6", 9);
    flow.begin(0);
    flow.markOnset(5);
    flow.setCorrect(true);
    expect(() => flow.toSessionDoc()).toThrow(/incomplete/);
  });

  it("completed export validates and preserves word order", () => {
    const flow = new AssessmentFlow(fakeWordlist(), "s7", 11);
    runWholeSession(flow);
    const doc = flow.toSessionDoc();
    expect(doc.schema).toBe(SESSION_SCHEMA);
    expect(doc.wordlist_seed).toBe(5);
    expect(validateSessionDoc(doc)).toEqual([]);
    expect(doc.records.map((r) => r.text)).toEqual(
      fakeWordlist().items.map((w) => w.text));
    for (const record of doc.records) {
      expect(record.reaction_ms).toBeGreaterThanOrEqual(0);
      expect(record.reaction_ms).toBeLessThanOrEqual(REACTION_CEILING_MS);
    }
  });

  it("snapshot round-trips through restore", () => {
    const flow = new AssessmentFlow(fakeWordlist(), "s8", 12);
    flow.begin(0);
    flow.markOnset(150);
    flow.setCorrect(false);
    flow.toggleBacktrack();
    flow.next(200);
    const restored = AssessmentFlow.restore(flow.snapshot());
    expect(restored.index).toBe(1);
    expect(restored.phase).toBe("running");
    expect(restored.drafts[0]).toEqual(flow.drafts[0]);
    // the restored flow can finish the session
    for (let i = restored.index; i < restored.wordlist.items.length; i++) {
      restored.markOnset(1000 + i * 10);
      restored.setCorrect(true);
      restored.next(1005 + i * 10);
    }
    expect(restored.phase).toBe("review");
    expect(validateSessionDoc(restored.toSessionDoc())).toEqual([]);
  });

  it("submitted only from review", () => {
    const flow = new AssessmentFlow(fakeWordlist(4), "s9", 9);
    flow.begin(0);
    expect(() => flow.markSubmitted()).toThrow(/review/);
  });
});
