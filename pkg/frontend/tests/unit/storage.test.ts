import { describe, expect, it } from "vitest";

import { AssessmentFlow } from "../../src/flow.js";
import { clearDraft, listDraftIds, loadDraft, saveDraft } from "../../src/storage.js";
import { fakeWordlist } from "./helpers.js";

class FakeStorage {
  private map = new Map<string, string>();
  getItem(key: string) { return this.map.get(key) ?? null; }
  setItem(key: string, value: string) { this.map.set(key, value); }
  removeItem(key: string) { this.map.delete(key); }
  key(index: number) { return [...this.map.keys()][index] ?? null; }
  get length() { return this.map.size; }
}

describe("draft storage", () => {
  it("round-trips a mid-session snapshot", () => {
    const store = new FakeStorage();
    const flow = new AssessmentFlow(fakeWordlist(), "draft-1", 10);
    flow.begin(0);
    flow.markOnset(120);
    flow.setCorrect(true);
    flow.next(200);
    saveDraft(flow.snapshot(), store);

    const loaded = loadDraft("draft-1", store);
    expect(loaded).not.toBeNull();
    const resumed = AssessmentFlow.restore(loaded!);
    expect(resumed.index).toBe(1);
    expect(resumed.drafts[0]!.reactionMs).toBe(120);
  });

  it("lists and clears drafts by session id", () => {
    const store = new FakeStorage();
    const flow = new AssessmentFlow(fakeWordlist(4), "draft-2", 9);
    saveDraft(flow.snapshot(), store);
    expect(listDraftIds(store)).toEqual(["draft-2"]);
    clearDraft("draft-2", store);
    expect(listDraftIds(store)).toEqual([]);
    expect(loadDraft("draft-2", store)).toBeNull();
  });

  it("tolerates corrupted payloads", () => {
    const store = new FakeStorage();
    store.setItem("dysscreen-draft-bad", "{not json");
    expect(loadDraft("bad", store)).toBeNull();
  });

  it("is a no-op without any backing storage", () => {
    const flow = new AssessmentFlow(fakeWordlist(4), "draft-3", 9);
    expect(() => saveDraft(flow.snapshot())).not.toThrow();
    expect(loadDraft("draft-3")).toBeNull();
    expect(listDraftIds()).toEqual([]);
  });
});
