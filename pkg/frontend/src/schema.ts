// Document types shared with the screening service, plus client-side
// validators so nothing malformed ever leaves the browser.

export const SESSION_SCHEMA = "dys-session/1";
export const HANDWRITING_SCHEMA = "dys-hand/1";
export const REACTION_CEILING_MS = 60_000;

export const RATING_NAMES = [
  "slant",
  "pressure",
  "amplitude",
  "letter_spacing",
  "word_spacing",
  "slant_regularity",
  "size_regularity",
  "horizontal_regularity",
] as const;

export type RatingName = (typeof RATING_NAMES)[number];

export type WordKind = "Real" | "Pseudo" | "EasyReal";
export type Bucket = "Short" | "Long";

export interface WordItem {
  text: string;
  kind: WordKind;
  bucket: Bucket;
}

export interface Wordlist {
  age_band: string;
  seed: number;
  items: WordItem[];
}

export interface SessionRecord {
  text: string;
  kind: WordKind;
  bucket: Bucket;
  correct: boolean;
  backtrack: boolean;
  reaction_ms: number;
}

export interface SessionDoc {
  schema: typeof SESSION_SCHEMA;
  session_id: string;
  age_years: number;
  wordlist_seed: number;
  records: SessionRecord[];
  label?: boolean;
}

export interface HandwritingDoc {
  schema: typeof HANDWRITING_SCHEMA;
  sample_id: string;
  ratings: Record<RatingName, number>;
  label?: boolean;
}

export interface ExplanationEntry {
  feature: string;
  value: number;
  note: string;
}

export interface PredictionResponse {
  probability: number;
  label: boolean;
  explanation: ExplanationEntry[];
}

const KINDS: WordKind[] = ["Real", "Pseudo", "EasyReal"];
const BUCKETS: Bucket[] = ["Short", "Long"];

export function validateSessionDoc(doc: SessionDoc, expectedWords = 32): string[] {
  const errors: string[] = [];
  if (doc.schema !== SESSION_SCHEMA) errors.push(`schema must be ${SESSION_SCHEMA}`);
  if (!doc.session_id) errors.push("session_id is empty");
  if (!Number.isInteger(doc.age_years) || doc.age_years < 6)
    errors.push("age_years must be an integer >= 6");
  if (!Number.isInteger(doc.wordlist_seed)) errors.push("wordlist_seed missing");
  if (doc.records.length !== expectedWords)
    errors.push(`expected ${expectedWords} records, found ${doc.records.length}`);
  doc.records.forEach((r, i) => {
    if (!r.text) errors.push(`record ${i}: empty text`);
    if (!KINDS.includes(r.kind)) errors.push(`record ${i}: bad kind ${r.kind}`);
    if (!BUCKETS.includes(r.bucket)) errors.push(`record ${i}: bad bucket ${r.bucket}`);
    if (typeof r.correct !== "boolean") errors.push(`record ${i}: correct must be boolean`);
    if (typeof r.backtrack !== "boolean") errors.push(`record ${i}: backtrack must be boolean`);
    if (!(r.reaction_ms >= 0 && r.reaction_ms <= REACTION_CEILING_MS))
      errors.push(`record ${i}: reaction_ms ${r.reaction_ms} outside [0, ${REACTION_CEILING_MS}]`);
  });
  return errors;
}

export function validateHandwritingDoc(doc: HandwritingDoc): string[] {
  const errors: string[] = [];
  if (doc.schema !== HANDWRITING_SCHEMA) errors.push(`schema must be ${HANDWRITING_SCHEMA}`);
  if (!doc.sample_id) errors.push("sample_id is empty");
  for (const name of RATING_NAMES) {
    const value = doc.ratings[name];
    if (typeof value !== "number" || !(value >= 0 && value <= 1))
      errors.push(`rating ${name} outside [0, 1]`);
  }
  const extras = Object.keys(doc.ratings).filter(
    (k) => !RATING_NAMES.includes(k as RatingName),
  );
  for (const extra of extras) errors.push(`unexpected rating ${extra}`);
  return errors;
}
