/** DOM builders for the statement page and its panels.
 *
 * The supporting/opposing columns are rendered verbatim from the View
 * payload — the client never re-derives the duality swap. Both columns
 * share one container class so they keep an identical hue; polarity is
 * conveyed by the headings and layout only.
 */

import type { BranchEntry } from "./branch.js";
import type {
  CommentPayload,
  NotificationPayload,
  SearchResult,
  StatementSummary,
  View,
  ViewEntry,
} from "./types.js";

export interface RenderContext {
  branch: BranchEntry[];
  cursor: number;
  authenticated: boolean;
  isModerator: boolean;
}

type Attrs = Record<string, string | number | boolean | undefined>;

export function el(
  tag: string,
  attrs: Attrs = {},
  children: Array<Node | string> = [],
): HTMLElement {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (value === undefined || value === false) continue;
    if (value === true) node.setAttribute(key, "");
    else node.setAttribute(key, String(value));
  }
  for (const child of children) {
    node.append(child);
  }
  return node;
}

function dropletLabel(count: number): string {
  return `\u{1F4A7} ${count}`;
}

function leafLabel(count: number): string {
  return `\u{1F343} ${count}`;
}

function draftBadge(): HTMLElement {
  return el("span", { class: "badge badge-draft" }, ["draft"]);
}

function childEntry(entry: ViewEntry): HTMLElement {
  const beliefCount =
    entry.form === "normal" ? entry.belief_counts.normal : entry.belief_counts.negated;
  const meta: Array<Node | string> = [
    el("span", { class: "droplet-count", title: "believers of this form" }, [
      dropletLabel(beliefCount),
    ]),
    el("span", { class: "leaf-count", title: "underlying statements" }, [
      leafLabel(entry.underlying_count),
    ]),
  ];
  if (entry.relation_statement !== null) {
    meta.push(
      el(
        "a",
        {
          class: "stalk",
          href: `/statement/${entry.relation_statement}`,
          "data-action": "open-stalk",
          "data-statement": entry.relation_statement,
          title: "discuss whether this statement is relevant here",
        },
        ["stalk"],
      ),
    );
  }
  const line: Array<Node | string> = [
    el(
      "a",
      {
        class: "child-text",
        href: `/statement/${entry.statement}/${entry.slug}`,
        "data-action": "open-child",
        "data-statement": entry.statement,
        "data-form": entry.form,
      },
      [entry.text],
    ),
  ];
  if (entry.status === "draft") {
    line.push(draftBadge());
  }
  return el(
    "li",
    {
      class: "child-entry",
      "data-edge": entry.edge,
      "data-statement": entry.statement,
      "data-form": entry.form,
      id: `relation-${entry.edge}`,
    },
    [
      el("div", { class: "child-line" }, line),
      el("div", { class: "child-meta" }, meta),
    ],
  );
}

function column(kind: "supporting" | "opposing", entries: ViewEntry[]): HTMLElement {
  const heading = kind === "supporting" ? "Supporting" : "Opposing";
  // Polarity is expressed against the form being shown; the server
  // canonicalizes it against the parent's normal form.
  const polarity = kind === "supporting" ? "support" : "oppose";
  return el(
    "section",
    { class: "children-column", "data-column": kind },
    [
      el("h2", {}, [heading]),
      el("ul", { class: "child-list" }, entries.map(childEntry)),
      el(
        "button",
        {
          class: "add-child",
          "data-action": "add-child",
          "data-column": kind,
          "data-polarity": polarity,
        },
        [`Add ${kind} statement`],
      ),
    ],
  );
}

function header(view: View): HTMLElement {
  const shownCount =
    view.form === "normal" ? view.belief_counts.normal : view.belief_counts.negated;
  const pieces: Array<Node | string> = [];
  if (view.status === "draft") {
    pieces.push(draftBadge());
  }
  if (view.kind === "relation") {
    pieces.push(el("span", { class: "badge badge-relation" }, ["statement relation"]));
  }
  pieces.push(el("h1", { class: "statement-title" }, [view.rendered_text]));
  pieces.push(
    el(
      "button",
      {
        class: "inverse-toggle",
        "data-action": "toggle-form",
        title: "show the negated form; supporting and opposing swap",
      },
      ["⇄ inverse"],
    ),
  );
  const droplet = el(
    "button",
    {
      class: "droplet droplet-none",
      "data-action": "toggle-belief",
      "data-statement": view.statement,
      title: "believe this form (also subscribes you to changes)",
    },
    [dropletLabel(shownCount)],
  );
  const actions = el("div", { class: "statement-actions" }, [
    droplet,
    el("span", { class: "leaf-count" }, [
      leafLabel(view.supporting.length + view.opposing.length),
    ]),
    el("button", { "data-action": "share", class: "share-button" }, ["share"]),
    el("a", { href: "#comments", class: "comment-link" }, [
      `comments (${view.comment_count})`,
    ]),
  ]);
  return el("header", { class: "statement-header" }, [...pieces, actions]);
}

function sidebar(view: View, ctx: RenderContext): HTMLElement {
  const branchItems = ctx.branch.map((entry, index) =>
    el(
      "li",
      {
        class: index === ctx.cursor ? "branch-entry current" : "branch-entry",
        "data-action": "revisit",
        "data-index": index,
        "data-statement": entry.statement,
        "data-form": entry.form,
      },
      [`${entry.statement}${entry.form === "negated" ? " (inverse)" : ""}`],
    ),
  );
  const usedInItems = view.used_in.map((used) =>
    el(
      "li",
      { class: "used-in-entry" },
      [
        el(
          "a",
          {
            href: `/statement/${used.statement}`,
            "data-action": "open-used-in",
            "data-statement": used.statement,
          },
          [
            `${used.polarity === "support" ? "supports" : "opposes"}: ${used.text}` +
              (used.form === "negated" ? " (as inverse)" : ""),
          ],
        ),
      ],
    ),
  );
  return el("aside", { class: "sidebar" }, [
    el("section", { class: "current-branch" }, [
      el("h3", {}, ["Current branch"]),
      el("ol", {}, branchItems),
    ]),
    el("section", { class: "used-in" }, [
      el("h3", {}, ["Used in"]),
      usedInItems.length ? el("ul", {}, usedInItems) : el("p", { class: "empty" }, ["nowhere else"]),
    ]),
  ]);
}

export function renderStatementPage(view: View, ctx: RenderContext): HTMLElement {
  const page = el(
    "article",
    {
      class: "statement-page",
      "data-statement": view.statement,
      "data-form": view.form,
      "data-kind": view.kind,
    },
    [header(view)],
  );
  if (view.kind === "relation" && view.relation) {
    page.append(
      el("p", { class: "relation-note" }, [
        "This statement reifies a relation; argue here whether ",
        el(
          "a",
          {
            href: `/statement/${view.relation.child}`,
            "data-action": "open-child",
            "data-statement": view.relation.child,
            "data-form": view.relation.child_form,
          },
          ["the child"],
        ),
        " is relevant to ",
        el(
          "a",
          {
            href: `/statement/${view.relation.parent}`,
            "data-action": "open-child",
            "data-statement": view.relation.parent,
            "data-form": "normal",
          },
          ["the parent"],
        ),
        ".",
      ]),
    );
  }
  if (view.status === "draft") {
    page.append(
      el("p", { class: "draft-note" }, [
        "This statement is a draft under review; it cannot be related to ",
        "others yet and its children are hidden.",
      ]),
    );
    if (ctx.isModerator) {
      page.append(
        el("div", { class: "moderation-actions" }, [
          el("button", { "data-action": "approve" }, ["approve"]),
        ]),
      );
    }
  } else if (ctx.isModerator) {
    page.append(
      el("div", { class: "moderation-actions" }, [
        el("button", { "data-action": "demote" }, ["demote to draft"]),
      ]),
    );
  }
  page.append(
    el("div", { class: "columns" }, [
      column("supporting", view.supporting),
      column("opposing", view.opposing),
    ]),
  );
  page.append(sidebar(view, ctx));
  page.append(
    el("section", { class: "comments-panel", id: "comments" }, [
      el("h3", {}, ["Comments"]),
      el("ul", { class: "comment-list" }, []),
      ctx.authenticated
        ? el("form", { class: "comment-form", "data-action": "comment-form" }, [
            el("textarea", { name: "body", rows: 2, placeholder: "Question, clarify, or add resources" }),
            el("button", { type: "submit" }, ["comment"]),
          ])
        : el("p", { class: "empty" }, ["sign in to comment"]),
    ]),
  );
  return page;
}

export function renderComments(
  listNode: HTMLElement,
  comments: CommentPayload[],
  highlightId: number | null,
): void {
  listNode.replaceChildren(
    ...comments.map((comment) =>
      el(
        "li",
        {
          class: comment.id === highlightId ? "comment highlight" : "comment",
          id: `comment-${comment.id}`,
        },
        [
          el("span", { class: "comment-author" }, [comment.author_username]),
          el("span", { class: "comment-body" }, [comment.body]),
        ],
      ),
    ),
  );
}

/** Search results for the add flow: each hit offers both forms, since
 * which one to relate depends on the argument being made. */
export function renderSearchResults(results: SearchResult[]): HTMLElement {
  const rows: HTMLElement[] = [];
  for (const hit of results) {
    for (const form of ["normal", "negated"] as const) {
      rows.push(
        el(
          "li",
          {
            class: "search-hit",
            "data-statement": hit.id,
            "data-form": form,
          },
          [
            el(
              "button",
              {
                class: "pick-form",
                "data-action": "pick-search-hit",
                "data-statement": hit.id,
                "data-form": form,
              },
              [form === "normal" ? hit.text_normal : hit.text_negated],
            ),
            form === "normal" && hit.status === "draft" ? draftBadge() : "",
          ],
        ),
      );
    }
  }
  return el("ul", { class: "search-results" }, rows);
}

export function renderInbox(notifications: NotificationPayload[]): HTMLElement {
  if (!notifications.length) {
    return el("p", { class: "empty" }, ["Inbox is empty."]);
  }
  const describe = (n: NotificationPayload): string => {
    switch (n.kind) {
      case "child_added":
        return "a statement was related to one you believe in";
      case "comment_added":
        return "new comment on a statement you believe in";
      default:
        return `statement status changed to ${n.new_status}`;
    }
  };
  return el(
    "ul",
    { class: "inbox-list" },
    notifications.map((n) =>
      el(
        "li",
        { class: n.read ? "notification read" : "notification unread" },
        [
          el(
            "a",
            {
              href: `/statement/${n.subject}`,
              "data-action": "open-child",
              "data-statement": n.subject,
              "data-form": "normal",
            },
            [describe(n)],
          ),
          n.read
            ? ""
            : el(
                "button",
                { "data-action": "mark-read", "data-notification": n.id },
                ["mark read"],
              ),
        ],
      ),
    ),
  );
}

export function renderModerationQueue(drafts: StatementSummary[]): HTMLElement {
  if (!drafts.length) {
    return el("p", { class: "empty" }, ["No drafts waiting."]);
  }
  return el(
    "ul",
    { class: "moderation-queue" },
    drafts.map((draft) =>
      el("li", { class: "queued-draft", "data-statement": draft.id }, [
        el(
          "a",
          {
            href: draft.self,
            "data-action": "open-child",
            "data-statement": draft.id,
            "data-form": "normal",
          },
          [draft.text_normal],
        ),
        el("button", { "data-action": "approve-queued", "data-statement": draft.id }, [
          "approve",
        ]),
        el(
          "a",
          {
            href: `${draft.self}#comments`,
            "data-action": "open-child",
            "data-statement": draft.id,
            "data-form": "normal",
            class: "comment-link",
          },
          ["give feedback"],
        ),
      ]),
    ),
  );
}

export function supportingColumn(root: ParentNode): HTMLElement {
  return root.querySelector('[data-column="supporting"]') as HTMLElement;
}

export function opposingColumn(root: ParentNode): HTMLElement {
  return root.querySelector('[data-column="opposing"]') as HTMLElement;
}

export function columnEntries(columnNode: HTMLElement): Array<{ edge: number; text: string }> {
  return Array.from(columnNode.querySelectorAll(".child-entry")).map((node) => ({
    edge: Number((node as HTMLElement).dataset.edge),
    text: (node.querySelector(".child-text") as HTMLElement).textContent ?? "",
  }));
}
