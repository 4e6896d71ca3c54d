// Append-only session history, persisted in browser local storage so the
// service can stay stateless. Selecting an item restores its prompt and
// config into the editor; nothing is ever rewritten in place.

import type { GenerateOptions, GenerateResponse } from "./api.js";

export interface SessionHistoryItem {
  prompt: string;
  config: GenerateOptions;
  response: GenerateResponse;
  timestamp: number;
}

const STORAGE_KEY = "wiregen-studio-history";

export class SessionHistory {
  private items: SessionHistoryItem[] = [];

  constructor(private storage: Storage, private limit = 50) {
    try {
      const raw = this.storage.getItem(STORAGE_KEY);
      if (raw) {
        const parsed = JSON.parse(raw);
        if (Array.isArray(parsed)) {
          this.items = parsed;
        }
      }
    } catch {
      this.items = [];
    }
  }

  get length(): number {
    return this.items.length;
  }

  all(): readonly SessionHistoryItem[] {
    return this.items;
  }

  at(index: number): SessionHistoryItem | undefined {
    return this.items[index];
  }

  append(item: SessionHistoryItem): void {
    this.items.push(item);
    if (this.items.length > this.limit) {
      this.items = this.items.slice(this.items.length - this.limit);
    }
    try {
      this.storage.setItem(STORAGE_KEY, JSON.stringify(this.items));
    } catch {
      // storage full or unavailable: history stays in memory for the session
    }
  }
}
