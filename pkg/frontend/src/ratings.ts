// Handwriting rating form: eight sliders in [0, 1], each anchored at
// 0 / 0.5 / 1. Submission is blocked until every slider has been touched.

import {
  HANDWRITING_SCHEMA,
  HandwritingDoc,
  RATING_NAMES,
  RatingName,
} from "./schema.js";

export const RATING_ANCHORS: Record<RatingName, [string, string, string]> = {
  slant: ["left slant", "upright", "right slant"],
  pressure: ["light", "medium", "heavy"],
  amplitude: ["small gap", "medium gap", "large gap"],
  letter_spacing: ["cursive/joined", "medium", "wide"],
  word_spacing: ["narrow", "medium", "wide"],
  slant_regularity: ["irregular", "mixed", "highly regular"],
  size_regularity: ["irregular", "mixed", "highly regular"],
  horizontal_regularity: ["wandering line", "mixed", "straight line"],
};

export function clampRating(value: number): number {
  if (Number.isNaN(value)) return 0;
  return Math.min(1, Math.max(0, value));
}

export class RatingForm {
  values: Record<RatingName, number>;
  private touched = new Set<RatingName>();

  constructor() {
    this.values = Object.fromEntries(
      RATING_NAMES.map((name) => [name, 0.5]),
    ) as Record<RatingName, number>;
  }

  setRating(name: RatingName, value: number): void {
    this.values[name] = clampRating(value);
    this.touched.add(name);
  }

  wasTouched(name: RatingName): boolean {
    return this.touched.has(name);
  }

  missingRatings(): RatingName[] {
    return RATING_NAMES.filter((name) => !this.touched.has(name));
  }

  /** Export the rating sheet; blocked while any slider is untouched. */
  toHandwritingDoc(sampleId: string, label?: boolean): HandwritingDoc {
    const missing = this.missingRatings();
    if (missing.length > 0) {
      throw new Error(`rate these features first: ${missing.join(", ")}`);
    }
    const doc: HandwritingDoc = {
      schema: HANDWRITING_SCHEMA,
      sample_id: sampleId,
      ratings: { ...this.values },
    };
    if (label !== undefined) doc.label = label;
    return doc;
  }
}
