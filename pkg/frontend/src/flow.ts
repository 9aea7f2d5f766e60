// State machine for a live assessment: words shown strictly in list order,
// the examiner marks reading onset then tags each word, and the index only
// advances once onset and the correctness tag are in.

import {
  SESSION_SCHEMA,
  SessionDoc,
  SessionRecord,
  Wordlist,
} from "./schema.js";
import { captureReactionTime } from "./timing.js";

export type Phase = "setup" | "running" | "review" | "submitted";

export interface WordDraft {
  displayedAtMs: number | null;
  onsetAtMs: number | null;
  correct: boolean | null;
  backtrack: boolean;
  reactionMs: number | null;
  clamped: boolean;
}

export interface FlowSnapshot {
  sessionId: string;
  ageYears: number;
  wordlist: Wordlist;
  phase: Phase;
  index: number;
  drafts: WordDraft[];
}

function emptyDraft(): WordDraft {
  return {
    displayedAtMs: null,
    onsetAtMs: null,
    correct: null,
    backtrack: false,
    reactionMs: null,
    clamped: false,
  };
}

export class AssessmentFlow {
  readonly sessionId: string;
  readonly ageYears: number;
  readonly wordlist: Wordlist;
  phase: Phase = "setup";
  index = 0;
  drafts: WordDraft[];

  constructor(wordlist: Wordlist, sessionId: string, ageYears: number) {
    if (wordlist.items.length === 0) throw new Error("word list is empty");
    this.wordlist = wordlist;
    this.sessionId = sessionId;
    this.ageYears = ageYears;
    this.drafts = wordlist.items.map(emptyDraft);
  }

  get currentWord() {
    return this.wordlist.items[this.index];
  }

  get currentDraft(): WordDraft {
    const draft = this.drafts[this.index];
    if (!draft) throw new Error(`no draft at index ${this.index}`);
    return draft;
  }

  begin(nowMs: number): void {
    if (this.phase !== "setup") throw new Error(`cannot begin from phase ${this.phase}`);
    this.phase = "running";
    this.index = 0;
    this.currentDraft.displayedAtMs = nowMs;
  }

  /** Examiner keypress at reading onset. Rejected before display or twice. */
  markOnset(nowMs: number): boolean {
    if (this.phase !== "running") return false;
    const draft = this.currentDraft;
    if (draft.displayedAtMs === null || nowMs < draft.displayedAtMs) return false;
    if (draft.onsetAtMs !== null) return false;
    draft.onsetAtMs = nowMs;
    const { reactionMs, clamped } = captureReactionTime(draft.displayedAtMs, nowMs);
    draft.reactionMs = reactionMs;
    draft.clamped = clamped;
    return true;
  }

  setCorrect(correct: boolean): void {
    if (this.phase !== "running") return;
    this.currentDraft.correct = correct;
  }

  toggleBacktrack(): void {
    if (this.phase !== "running") return;
    this.currentDraft.backtrack = !this.currentDraft.backtrack;
  }

  /** What still blocks advancing past the current word, if anything. */
  blockers(): string[] {
    const draft = this.currentDraft;
    const missing: string[] = [];
    if (draft.onsetAtMs === null) missing.push("reading onset (space)");
    if (draft.correct === null) missing.push("correct tag (C or X)");
    return missing;
  }

  /** Advance to the next word; the last word moves the flow to review. */
  next(nowMs: number): boolean {
    if (this.phase !== "running") return false;
    if (this.blockers().length > 0) return false;
    if (this.index + 1 >= this.wordlist.items.length) {
      this.phase = "review";
      return true;
    }
    this.index += 1;
    this.currentDraft.displayedAtMs = nowMs;
    return true;
  }

  isComplete(): boolean {
    return this.drafts.every((d) => d.correct !== null && d.reactionMs !== null);
  }

  /** Export the completed session; blocked while any word is untagged. */
  toSessionDoc(label?: boolean): SessionDoc {
    if (!this.isComplete()) {
      throw new Error("session incomplete: every word needs onset and tags");
    }
    const records: SessionRecord[] = this.wordlist.items.map((item, i) => {
      const draft = this.drafts[i]!;
      return {
        text: item.text,
        kind: item.kind,
        bucket: item.bucket,
        correct: draft.correct!,
        backtrack: draft.backtrack,
        reaction_ms: draft.reactionMs!,
      };
    });
    const doc: SessionDoc = {
      schema: SESSION_SCHEMA,
      session_id: this.sessionId,
      age_years: this.ageYears,
      wordlist_seed: this.wordlist.seed,
      records,
    };
    if (label !== undefined) doc.label = label;
    return doc;
  }

  markSubmitted(): void {
    if (this.phase !== "review") throw new Error("submit only from review");
    this.phase = "submitted";
  }

  snapshot(): FlowSnapshot {
    return {
      sessionId: this.sessionId,
      ageYears: this.ageYears,
      wordlist: this.wordlist,
      phase: this.phase,
      index: this.index,
      drafts: this.drafts.map((d) => ({ ...d })),
    };
  }

  static restore(snapshot: FlowSnapshot): AssessmentFlow {
    const flow = new AssessmentFlow(
      snapshot.wordlist, snapshot.sessionId, snapshot.ageYears);
    flow.phase = snapshot.phase;
    flow.index = snapshot.index;
    flow.drafts = snapshot.drafts.map((d) => ({ ...d }));
    return flow;
  }
}
