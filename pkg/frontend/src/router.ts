/** URL handling: representative statement paths, the form query, and
 * the highlight fragments #comment-{id} / #relation-{edge id}. */

import type { Form } from "./types.js";

export interface Route {
  page: "home" | "statement" | "inbox" | "moderation";
  statementId?: number;
  form: Form;
  highlightComment: number | null;
  highlightRelation: number | null;
}

const STATEMENT_RE = /^\/statement\/(\d+)(?:\/[^/]*)?$/;

export function parseFragment(hash: string): {
  comment: number | null;
  relation: number | null;
} {
  const comment = /^#comment-(\d+)$/.exec(hash);
  const relation = /^#relation-(\d+)$/.exec(hash);
  return {
    comment: comment ? Number(comment[1]) : null,
    relation: relation ? Number(relation[1]) : null,
  };
}

export function parseRoute(pathname: string, search: string, hash: string): Route {
  const params = new URLSearchParams(search);
  const form: Form = params.get("form") === "negated" ? "negated" : "normal";
  const fragment = parseFragment(hash);
  const base: Omit<Route, "page"> = {
    form,
    highlightComment: fragment.comment,
    highlightRelation: fragment.relation,
  };
  const match = STATEMENT_RE.exec(pathname);
  if (match) {
    return { page: "statement", statementId: Number(match[1]), ...base };
  }
  if (pathname === "/inbox") {
    return { page: "inbox", ...base };
  }
  if (pathname === "/moderation") {
    return { page: "moderation", ...base };
  }
  return { page: "home", ...base };
}

export function statementPath(self: string, form: Form): string {
  return form === "negated" ? `${self}?form=negated` : self;
}
