// Draft persistence in browser local storage, keyed by session id, so an
// abandoned assessment can resume on the same machine.

import { FlowSnapshot } from "./flow.js";

const PREFIX = "dysscreen-draft-";

interface StorageLike {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
  key(index: number): string | null;
  readonly length: number;
}

function backing(store?: StorageLike): StorageLike | null {
  if (store) return store;
  return typeof localStorage !== "undefined" ? localStorage : null;
}

export function saveDraft(snapshot: FlowSnapshot, store?: StorageLike): void {
  const s = backing(store);
  if (!s) return;
  try {
    s.setItem(PREFIX + snapshot.sessionId, JSON.stringify(snapshot));
  } catch {
    // storage full or unavailable; the live flow keeps working
  }
}

export function loadDraft(sessionId: string, store?: StorageLike): FlowSnapshot | null {
  const s = backing(store);
  if (!s) return null;
  const raw = s.getItem(PREFIX + sessionId);
  if (!raw) return null;
  try {
    return JSON.parse(raw) as FlowSnapshot;
  } catch {
    return null;
  }
}

export function clearDraft(sessionId: string, store?: StorageLike): void {
  backing(store)?.removeItem(PREFIX + sessionId);
}

export function listDraftIds(store?: StorageLike): string[] {
  const s = backing(store);
  if (!s) return [];
  const ids: string[] = [];
  for (let i = 0; i < s.length; i++) {
    const key = s.key(i);
    if (key && key.startsWith(PREFIX)) ids.push(key.slice(PREFIX.length));
  }
  return ids;
}
