// DOM wiring for the assessment app. One active assessment per tab.
// Keyboard during a session: space = reading onset, C/X = correct/incorrect,
// B = backtrack toggle, Enter = next word.

import { anchorSvg } from "./anchors.js";
import { ApiClient, ApiError } from "./api.js";
import { AssessmentFlow } from "./flow.js";
import { RatingForm, RATING_ANCHORS } from "./ratings.js";
import {
  PredictionResponse,
  RATING_NAMES,
  RatingName,
  validateSessionDoc,
} from "./schema.js";
import { clearDraft, listDraftIds, loadDraft, saveDraft } from "./storage.js";
import { now } from "./timing.js";

const api = new ApiClient("");
const root = document.getElementById("app")!;

let flow: AssessmentFlow | null = null;
const ratingForm = new RatingForm();

function el(html: string): HTMLElement {
  const template = document.createElement("template");
  template.innerHTML = html.trim();
  return template.content.firstElementChild as HTMLElement;
}

function newSessionId(): string {
  return `s-${Date.now().toString(36)}-${Math.random().toString(36).slice(2, 8)}`;
}

// ---------------------------------------------------------------------------
// setup screen

function renderSetup(message = ""): void {
  const drafts = listDraftIds();
  root.replaceChildren(el(`
    <section class="card">
      <h1>Reading assessment</h1>
      <p>Fetch the 32-word list for the child's age, then steer the session:
         press <kbd>space</kbd> when reading starts, tag each word, and submit.</p>
      <label>Age (years) <input id="age" type="number" min="6" value="9"></label>
      <label>List seed <input id="seed" type="number" value="1"></label>
      <button id="start">Start assessment</button>
      ${drafts.length ? `<p>Unfinished drafts: ${drafts
        .map((d) => `<button class="resume" data-id="${d}">resume ${d}</button>`)
        .join(" ")}</p>` : ""}
      <p class="error">${message}</p>
    </section>
  `));
  root.querySelector("#start")!.addEventListener("click", startAssessment);
  for (const button of root.querySelectorAll<HTMLButtonElement>(".resume")) {
    button.addEventListener("click", () => resumeDraft(button.dataset.id!));
  }
}

async function startAssessment(): Promise<void> {
  const age = Number((root.querySelector("#age") as HTMLInputElement).value);
  const seed = Number((root.querySelector("#seed") as HTMLInputElement).value);
  try {
    const wordlist = await api.fetchWordlist(age, seed);
    flow = new AssessmentFlow(wordlist, newSessionId(), age);
    flow.begin(now());
    saveDraft(flow.snapshot());
    renderRunning();
  } catch (error) {
    renderSetup(error instanceof Error ? error.message : String(error));
  }
}

function resumeDraft(sessionId: string): void {
  const snapshot = loadDraft(sessionId);
  if (!snapshot) return renderSetup(`draft ${sessionId} unreadable`);
  flow = AssessmentFlow.restore(snapshot);
  if (flow.phase === "setup") flow.begin(now());
  refresh();
}

function refresh(notice = ""): void {
  if (!flow) return renderSetup(notice);
  if (flow.phase === "review") renderReview(notice);
  else if (flow.phase === "running") renderRunning(notice);
  else renderSetup(notice);
}

// ---------------------------------------------------------------------------
// running screen

function renderRunning(notice = ""): void {
  if (!flow) return renderSetup();
  const draft = flow.currentDraft;
  const word = flow.currentWord!;
  const onset = draft.onsetAtMs !== null;
  const tagged = draft.correct !== null;
  root.replaceChildren(el(`
    <section class="card">
      <p class="progress">word ${flow.index + 1} / ${flow.wordlist.items.length}
        &middot; session ${flow.sessionId}</p>
      <div class="word">${word.text}</div>
      <p class="chips">
        <span class="chip ${onset ? "on" : ""}">onset ${onset
          ? `${draft.reactionMs!.toFixed(0)} ms${draft.clamped ? " (clamped)" : ""}`
          : "- press space"}</span>
        <span class="chip ${tagged ? "on" : ""}">${
          draft.correct === null ? "correct? C / X"
          : draft.correct ? "correct" : "incorrect"}</span>
        <span class="chip ${draft.backtrack ? "on" : ""}">backtrack ${
          draft.backtrack ? "yes" : "no"} (B)</span>
      </p>
      <p>space = reading onset &middot; C = correct &middot; X = incorrect
         &middot; B = backtrack &middot; Enter = next</p>
      <p class="error">${notice}</p>
    </section>
  `));
}

function handleKey(event: KeyboardEvent): void {
  if (!flow || flow.phase !== "running") return;
  if (event.target instanceof HTMLInputElement) return;
  let handled = true;
  if (event.key === " ") {
    if (!flow.markOnset(now())) handled = false;
  } else if (event.key === "c" || event.key === "C") {
    flow.setCorrect(true);
  } else if (event.key === "x" || event.key === "X") {
    flow.setCorrect(false);
  } else if (event.key === "b" || event.key === "B") {
    flow.toggleBacktrack();
  } else if (event.key === "Enter") {
    const blockers = flow.blockers();
    if (blockers.length > 0) {
      renderRunning(`before the next word: ${blockers.join(", ")}`);
      event.preventDefault();
      return;
    }
    flow.next(now());
  } else {
    return;
  }
  if (handled) event.preventDefault();
  saveDraft(flow.snapshot());
  refresh();
}

document.addEventListener("keydown", handleKey);

// ---------------------------------------------------------------------------
// review + submit

function renderReview(notice = ""): void {
  if (!flow) return renderSetup();
  const rows = flow.wordlist.items.map((item, i) => {
    const d = flow!.drafts[i]!;
    return `<tr><td>${i + 1}</td><td>${item.text}</td><td>${item.kind}</td>
      <td>${d.correct ? "yes" : "no"}</td><td>${d.backtrack ? "yes" : "no"}</td>
      <td>${d.reactionMs?.toFixed(0)} ms${d.clamped ? " *" : ""}</td></tr>`;
  }).join("");
  root.replaceChildren(el(`
    <section class="card">
      <h1>Review session ${flow.sessionId}</h1>
      <table>
        <tr><th>#</th><th>word</th><th>kind</th><th>correct</th>
            <th>backtrack</th><th>reaction</th></tr>
        ${rows}
      </table>
      <button id="submit">Submit session</button>
      <p class="error">${notice}</p>
    </section>
  `));
  root.querySelector("#submit")!.addEventListener("click", submitSession);
}

async function submitSession(): Promise<void> {
  if (!flow) return;
  const doc = flow.toSessionDoc();
  const problems = validateSessionDoc(doc, flow.wordlist.items.length);
  if (problems.length > 0) {
    return renderReview(`document invalid: ${problems.join("; ")}`);
  }
  try {
    const { id } = await api.submitSession(doc);
    flow.markSubmitted();
    clearDraft(flow.sessionId);
    let reading: PredictionResponse | null = null;
    try {
      reading = await api.predictDyslexia(doc);
    } catch {
      reading = null; // no dyslexia model configured; ratings still collected
    }
    renderRatings(id, reading);
  } catch (error) {
    // draft retained; offer retry
    const detail = error instanceof ApiError
      ? `service rejected the session (${error.status}): ${error.message}`
      : `network problem: ${error instanceof Error ? error.message : error}`;
    renderReview(`${detail} - the draft is saved, fix and retry`);
  }
}

// ---------------------------------------------------------------------------
// handwriting ratings

function anchorRow(name: RatingName): string {
  const [low, mid, high] = RATING_ANCHORS[name];
  return `
    <div class="rating" data-name="${name}">
      <label>${name.replaceAll("_", " ")}</label>
      <div class="anchors">
        <span>${anchorSvg(name, 0)}<br>0 &middot; ${low}</span>
        <span>${anchorSvg(name, 0.5)}<br>0.5 &middot; ${mid}</span>
        <span>${anchorSvg(name, 1)}<br>1 &middot; ${high}</span>
      </div>
      <input type="range" min="0" max="1" step="0.01" value="0.5" data-name="${name}">
      <output>untouched</output>
    </div>`;
}

function renderRatings(sessionStoreId: string, reading: PredictionResponse | null,
                       notice = ""): void {
  root.replaceChildren(el(`
    <section class="card">
      <h1>Handwriting ratings</h1>
      <p>Session stored as <code>${sessionStoreId}</code>.
         ${reading ? `Reading-task dyslexia likelihood:
           <strong>${(reading.probability * 100).toFixed(1)}%</strong>.` : ""}</p>
      <p>Rate the handwriting photo on each 0-1 scale; every slider must be
         touched at least once.</p>
      ${RATING_NAMES.map(anchorRow).join("")}
      <button id="rate">Submit ratings &amp; predict dysgraphia</button>
      <p class="error">${notice}</p>
    </section>
  `));
  for (const slider of root.querySelectorAll<HTMLInputElement>("input[type=range]")) {
    slider.addEventListener("input", () => {
      const name = slider.dataset.name as RatingName;
      ratingForm.setRating(name, Number(slider.value));
      const output = slider.parentElement!.querySelector("output")!;
      output.textContent = ratingForm.values[name].toFixed(2);
    });
  }
  root.querySelector("#rate")!.addEventListener("click",
    () => submitRatings(sessionStoreId, reading));
}

async function submitRatings(sessionStoreId: string,
                             reading: PredictionResponse | null): Promise<void> {
  const missing = ratingForm.missingRatings();
  if (missing.length > 0) {
    return renderRatings(sessionStoreId, reading,
      `still untouched: ${missing.join(", ")}`);
  }
  const doc = ratingForm.toHandwritingDoc(`h-${flow?.sessionId ?? newSessionId()}`);
  try {
    await api.submitSample(doc);
    const prediction = await api.predictDysgraphia(doc);
    renderResult(prediction, reading);
  } catch (error) {
    renderRatings(sessionStoreId, reading,
      error instanceof Error ? error.message : String(error));
  }
}

function renderResult(prediction: PredictionResponse,
                      reading: PredictionResponse | null): void {
  const rows = prediction.explanation.map((entry) =>
    `<tr><td>${entry.feature.replaceAll("_", " ")}</td>
     <td>${entry.value.toFixed(2)}</td><td>${entry.note}</td></tr>`).join("");
  root.replaceChildren(el(`
    <section class="card">
      <h1>Screening result</h1>
      ${reading ? `<p>Dyslexia likelihood (reading task):
        <strong>${(reading.probability * 100).toFixed(1)}%</strong></p>` : ""}
      <p>Dysgraphia likelihood (handwriting):
        <strong>${(prediction.probability * 100).toFixed(1)}%</strong>
        - ${prediction.label ? "screening positive" : "screening negative"}</p>
      <table><tr><th>feature</th><th>rating</th><th>analysis</th></tr>${rows}</table>
      <p>This is a screening aid, not a diagnosis.</p>
      <button id="again">New assessment</button>
    </section>
  `));
  root.querySelector("#again")!.addEventListener("click", () => {
    flow = null;
    renderSetup();
  });
}

renderSetup();
