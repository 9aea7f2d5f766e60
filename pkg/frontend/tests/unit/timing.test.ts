import { describe, expect, it } from "vitest";

import { REACTION_CEILING_MS } from "../../src/schema.js";
import { captureReactionTime } from "../../src/timing.js";

describe("captureReactionTime", () => {
  it("subtracts display from onset", () => {
    expect(captureReactionTime(1000, 1750)).toEqual({ reactionMs: 750, clamped: false });
  });

  it("onset at the display instant is zero", () => {
    expect(captureReactionTime(5000, 5000)).toEqual({ reactionMs: 0, clamped: false });
  });

  it("clamps at the 60 s ceiling with a flag", () => {
    const result = captureReactionTime(0, 61_000);
    expect(result.reactionMs).toBe(REACTION_CEILING_MS);
    expect(result.clamped).toBe(true);
  });

  it("exactly the ceiling is not flagged", () => {
    expect(captureReactionTime(0, REACTION_CEILING_MS).clamped).toBe(false);
  });

  it("rejects onset before display", () => {
    expect(() => captureReactionTime(1000, 999)).toThrow(/precedes/);
  });
});
