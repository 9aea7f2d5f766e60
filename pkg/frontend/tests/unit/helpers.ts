import { Wordlist } from "../../src/schema.js";

export function fakeWordlist(n = 32): Wordlist {
  const items = [];
  for (let i = 0; i < n; i++) {
    items.push({
      text: `word${String(i).padStart(2, "0")}`,
      kind: (i < 2 ? "EasyReal" : i % 2 ? "Pseudo" : "Real") as "Real",
      bucket: (i < 22 ? "Short" : "Long") as "Short",
    });
  }
  return { age_band: "Band2", seed: 5, items };
}
