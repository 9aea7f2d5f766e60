import { describe, expect, it } from "vitest";

import { RatingForm, clampRating, RATING_ANCHORS } from "../../src/ratings.js";
import { RATING_NAMES, validateHandwritingDoc } from "../../src/schema.js";

describe("RatingForm", () => {
  it("all sliders touched at 0.5 gives a valid document", () => {
    const form = new RatingForm();
    for (const name of RATING_NAMES) form.setRating(name, 0.5);
    const doc = form.toHandwritingDoc("h1");
    expect(validateHandwritingDoc(doc)).toEqual([]);
    expect(Object.values(doc.ratings)).toEqual(new Array(8).fill(0.5));
  });

  it("out-of-bounds drags are clamped", () => {
    const form = new RatingForm();
    form.setRating("slant", 1.4);
    form.setRating("pressure", -0.2);
    expect(form.values.slant).toBe(1);
    expect(form.values.pressure).toBe(0);
    expect(clampRating(Number.NaN)).toBe(0);
  });

  it("submit is blocked naming untouched features", () => {
    const form = new RatingForm();
    for (const name of RATING_NAMES) {
      if (name !== "word_spacing") form.setRating(name, 0.4);
    }
    expect(form.missingRatings()).toEqual(["word_spacing"]);
    expect(() => form.toHandwritingDoc("h2")).toThrow(/word_spacing/);
  });

  it("every feature has three anchors", () => {
    for (const name of RATING_NAMES) {
      expect(RATING_ANCHORS[name]).toHaveLength(3);
    }
  });

  it("optional label lands in the document", () => {
    const form = new RatingForm();
    for (const name of RATING_NAMES) form.setRating(name, 0.7);
    expect(form.toHandwritingDoc("h3", true).label).toBe(true);
    expect(form.toHandwritingDoc("h3").label).toBeUndefined();
  });
});
