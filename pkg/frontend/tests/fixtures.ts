// Shared View fixtures mirroring the API's payload shapes, plus a fetch
// stub that serves them.

import type { View, ViewEntry } from "../src/types.js";

export function entry(partial: Partial<ViewEntry> & { edge: number }): ViewEntry {
  return {
    statement: 100 + partial.edge,
    form: "normal",
    text: `Child of edge ${partial.edge}`,
    slug: `child-of-edge-${partial.edge}`,
    relation_statement: 200 + partial.edge,
    underlying_count: 0,
    belief_counts: { normal: 0, negated: 0 },
    status: "approved",
    ...partial,
  };
}

export const supportingEntries: ViewEntry[] = [
  entry({ edge: 1, text: "Smoking seriously harms the health of smokers" }),
  entry({ edge: 2, text: "Smoking bans reduce national healthcare costs" }),
];

export const opposingEntries: ViewEntry[] = [
  entry({
    edge: 3,
    text: "Governments should defend freedom of choice of its citizens",
  }),
];

export const normalView: View = {
  statement: 657,
  form: "normal",
  kind: "plain",
  status: "approved",
  rendered_text: "Governments should ban smoking",
  text_normal: "Governments should ban smoking",
  text_negated: "Governments should not ban smoking",
  slug: "governments-should-ban-smoking",
  self: "/statement/657/governments-should-ban-smoking",
  supporting: supportingEntries,
  opposing: opposingEntries,
  used_in: [],
  belief_counts: { normal: 3, negated: 1 },
  comment_count: 0,
  your_belief: null,
};

// The server derives the negated view by swapping the lists.
export const negatedView: View = {
  ...normalView,
  form: "negated",
  rendered_text: "Governments should not ban smoking",
  supporting: opposingEntries,
  opposing: supportingEntries,
};

export function json(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

export function viewServer(
  views: Record<string, View>,
  log: Array<{ url: string; init?: RequestInit }> = [],
): typeof fetch {
  return async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    log.push({ url, init });
    const match = /\/api\/v1\/statements\/(\d+)\?form=(\w+)/.exec(url);
    if (match) {
      const view = views[`${match[1]}:${match[2]}`];
      if (view) return json(view);
      return json({ error: { code: "unknown_statement", detail: "missing" } }, 404);
    }
    if (/\/comments$/.test(url)) {
      return json({ comments: [] });
    }
    return json({ error: { code: "http_error", detail: `unmocked ${url}` } }, 500);
  };
}
