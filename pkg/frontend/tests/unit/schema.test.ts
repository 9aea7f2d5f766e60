import { describe, expect, it } from "vitest";

import {
  HANDWRITING_SCHEMA,
  HandwritingDoc,
  RATING_NAMES,
  SESSION_SCHEMA,
  SessionDoc,
  validateHandwritingDoc,
  validateSessionDoc,
} from "../../src/schema.js";

function goodSession(): SessionDoc {
  return {
    schema: SESSION_SCHEMA,
    session_id: "s1",
    age_years: 9,
    wordlist_seed: 4,
    records: Array.from({ length: 32 }, (_, i) => ({
      text: `w${i}`,
      kind: i % 2 ? ("Pseudo" as const) : ("Real" as const),
      bucket: "Short" as const,
      correct: true,
      backtrack: false,
      reaction_ms: 500,
    })),
  };
}

function goodHand(): HandwritingDoc {
  return {
    schema: HANDWRITING_SCHEMA,
    sample_id: "h1",
    ratings: Object.fromEntries(RATING_NAMES.map((n) => [n, 0.3])) as
      HandwritingDoc["ratings"],
  };
}

describe("validateSessionDoc", () => {
  it("accepts a complete session", () => {
    expect(validateSessionDoc(goodSession())).toEqual([]);
  });

  it("flags record count, ranges, and schema", () => {
    const doc = goodSession();
    doc.records = doc.records.slice(0, 31);
    doc.records[0]!.reaction_ms = -1;
    (doc as { schema: string }).schema = "other";
    const errors = validateSessionDoc(doc);
    expect(errors.join("; ")).toMatch(/expected 32 records, found 31/);
    expect(errors.join("; ")).toMatch(/reaction_ms -1/);
    expect(errors.join("; ")).toMatch(/schema/);
  });

  it("flags reaction above the ceiling", () => {
    const doc = goodSession();
    doc.records[3]!.reaction_ms = 60_001;
    expect(validateSessionDoc(doc)).toHaveLength(1);
  });

  it("flags under-age sessions", () => {
    const doc = goodSession();
    doc.age_years = 5;
    expect(validateSessionDoc(doc).join()).toMatch(/age_years/);
  });
});

describe("validateHandwritingDoc", () => {
  it("accepts a complete sheet", () => {
    expect(validateHandwritingDoc(goodHand())).toEqual([]);
  });

  it("flags out-of-range and missing ratings", () => {
    const doc = goodHand();
    doc.ratings.slant = 1.2;
    delete (doc.ratings as Record<string, number>).pressure;
    const errors = validateHandwritingDoc(doc);
    expect(errors.join("; ")).toMatch(/slant/);
    expect(errors.join("; ")).toMatch(/pressure/);
  });

  it("flags unexpected rating keys", () => {
    const doc = goodHand();
    (doc.ratings as Record<string, number>).extra = 0.5;
    expect(validateHandwritingDoc(doc).join()).toMatch(/unexpected rating extra/);
  });
});
