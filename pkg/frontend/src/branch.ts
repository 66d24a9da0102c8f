/** The "current branch": the path of statements followed to reach the
 * focused one. Revisiting an earlier entry (sidebar click) moves the
 * cursor without touching the stored path; the path is truncated only
 * when navigation diverges from it. */

import type { Form } from "./types.js";

export interface BranchEntry {
  statement: number;
  form: Form;
}

function same(a: BranchEntry, b: BranchEntry): boolean {
  return a.statement === b.statement && a.form === b.form;
}

export class BranchPath {
  entries: BranchEntry[] = [];
  cursor = -1;

  get current(): BranchEntry | null {
    return this.cursor >= 0 ? this.entries[this.cursor] : null;
  }

  /** Navigation from the page itself (clicking a child, a used-in row,
   * or landing on a fresh statement). Following the stored path forward
   * keeps it; anything else truncates beyond the cursor. */
  visit(entry: BranchEntry): void {
    const current = this.current;
    if (current && same(current, entry)) {
      return;
    }
    const next = this.entries[this.cursor + 1];
    if (next && same(next, entry)) {
      this.cursor += 1;
      return;
    }
    this.entries = this.entries.slice(0, this.cursor + 1);
    this.entries.push(entry);
    this.cursor = this.entries.length - 1;
  }

  /** Sidebar click on a stored entry: move the cursor, never truncate. */
  revisit(index: number): BranchEntry {
    if (index < 0 || index >= this.entries.length) {
      throw new RangeError(`no branch entry at ${index}`);
    }
    this.cursor = index;
    return this.entries[index];
  }

  /** Toggling the inverse view re-reads the same statement; the stored
   * entry follows the shown form rather than forking the path. */
  toggleForm(form: Form): void {
    if (this.cursor >= 0) {
      this.entries[this.cursor] = { ...this.entries[this.cursor], form };
    }
  }

  reset(entry: BranchEntry): void {
    this.entries = [entry];
    this.cursor = 0;
  }
}
