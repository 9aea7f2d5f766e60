// Original reference images for the rating anchors, drawn as inline SVG:
// a row of abstract "letter" strokes whose geometry varies with the rated
// feature, at the 0 / 0.5 / 1 positions of each scale.

import { RatingName } from "./schema.js";

export type AnchorLevel = 0 | 0.5 | 1;

const WIDTH = 72;
const HEIGHT = 30;
const BASELINE = 24;

// deterministic jitter so the "irregular" anchors look the same every render
function jitter(i: number, scale: number): number {
  const wobble = Math.sin(i * 12.9898) * 43_758.5453;
  return (wobble - Math.floor(wobble) - 0.5) * 2 * scale;
}

interface StrokeParams {
  slant: number;        // x-offset of the stroke top, px
  width: number;        // stroke width
  tallEvery: number;    // 0 = uniform height, else every n-th stroke ascends
  ascender: number;     // extra height of ascending strokes
  gap: number;          // distance between strokes
  wordGap: number;      // extra gap inserted mid-row
  slantJitter: number;
  sizeJitter: number;
  baselineJitter: number;
}

const BASE: StrokeParams = {
  slant: 0, width: 2, tallEvery: 2, ascender: 7, gap: 8, wordGap: 0,
  slantJitter: 0, sizeJitter: 0, baselineJitter: 0,
};

function paramsFor(name: RatingName, level: AnchorLevel): StrokeParams {
  const p = { ...BASE };
  switch (name) {
    case "slant":
      p.slant = (level - 0.5) * 12;
      break;
    case "pressure":
      p.width = 1 + level * 2.6;
      break;
    case "amplitude":
      p.ascender = 2 + level * 10;
      break;
    case "letter_spacing":
      p.gap = 5 + level * 7;
      break;
    case "word_spacing":
      p.wordGap = 3 + level * 14;
      break;
    case "slant_regularity":
      p.slantJitter = (1 - level) * 6;
      break;
    case "size_regularity":
      p.sizeJitter = (1 - level) * 6;
      break;
    case "horizontal_regularity":
      p.baselineJitter = (1 - level) * 5;
      break;
  }
  return p;
}

export function anchorSvg(name: RatingName, level: AnchorLevel): string {
  const p = paramsFor(name, level);
  const strokes: string[] = [];
  let x = 6;
  for (let i = 0; i < 6; i++) {
    if (i === 3) x += p.wordGap;
    const base = BASELINE + jitter(i + 1, p.baselineJitter);
    const tall = p.tallEvery > 0 && i % p.tallEvery === 0;
    const height = 10 + (tall ? p.ascender : 0) + jitter(i + 2, p.sizeJitter);
    const top = base - Math.max(4, height);
    const lean = p.slant + jitter(i + 3, p.slantJitter);
    strokes.push(
      `<line x1="${(x + lean).toFixed(1)}" y1="${top.toFixed(1)}" ` +
      `x2="${x.toFixed(1)}" y2="${base.toFixed(1)}" ` +
      `stroke="#2b3a4a" stroke-width="${p.width.toFixed(1)}" stroke-linecap="round"/>`,
    );
    x += p.gap;
  }
  return `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" width="${WIDTH}" height="${HEIGHT}" ` +
    `role="img" aria-label="${name} at ${level}">` +
    `<line x1="2" y1="${BASELINE + 2}" x2="${WIDTH - 2}" y2="${BASELINE + 2}" ` +
    `stroke="#d6dce2" stroke-width="1"/>${strokes.join("")}</svg>`;
}
