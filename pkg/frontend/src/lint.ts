/** Client-side mirror of the statement guidelines, for live feedback
 * while typing. The server re-checks on submit; this only drives the
 * form UI (disable submit on errors, show hints on warnings). */

export const MAX_TEXT_LEN = 120;
export const MAX_NEGATED_TEXT_LEN = 126;

const INDEXICAL_WORDS = new Set([
  "i", "me", "my", "we", "us", "our", "you", "your",
  "this", "that", "these", "those", "it", "here", "there", "also",
]);

const CONJUNCTIONS = [" and ", " but ", ";"];

export type LintErrorCode = "empty_text" | "too_long" | "is_question";

export interface LintWarning {
  kind: "indexical_reference" | "conjunction_candidate";
  token: string;
  position: number;
}

export interface LintReport {
  errors: LintErrorCode[];
  warnings: LintWarning[];
}

export function lintStatementText(text: string, maxLen = MAX_TEXT_LEN): LintReport {
  const errors: LintErrorCode[] = [];
  const warnings: LintWarning[] = [];
  const trimmed = text.trim();

  if (!trimmed) {
    return { errors: ["empty_text"], warnings };
  }
  if (trimmed.length > maxLen) {
    errors.push("too_long");
  }
  if (trimmed.endsWith("?")) {
    errors.push("is_question");
  }

  const lowered = text.toLowerCase();
  for (const match of lowered.matchAll(/[a-z]+/g)) {
    if (INDEXICAL_WORDS.has(match[0])) {
      warnings.push({
        kind: "indexical_reference",
        token: match[0],
        position: match.index ?? 0,
      });
    }
  }
  for (const token of CONJUNCTIONS) {
    let from = 0;
    for (;;) {
      const at = lowered.indexOf(token, from);
      if (at < 0) break;
      warnings.push({
        kind: "conjunction_candidate",
        token: token.trim() || token,
        position: at + (token.startsWith(" ") ? 1 : 0),
      });
      from = at + 1;
    }
  }
  warnings.sort((a, b) => a.position - b.position);
  return { errors, warnings };
}

export function lintOk(report: LintReport): boolean {
  return report.errors.length === 0;
}
