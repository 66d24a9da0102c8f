/** Typed client for the JSON API. All calls are asynchronous; the session
 * token is kept in localStorage so reloads stay signed in. */

import type {
  CommentPayload,
  EdgePayload,
  Form,
  NotificationPayload,
  Polarity,
  SearchResult,
  SessionInfo,
  StatementSummary,
  View,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    public detail: string,
    public extra: Record<string, unknown> = {},
  ) {
    super(`${code}: ${detail}`);
  }
}

const TOKEN_KEY = "socle-token";

export class ApiClient {
  constructor(
    private base: string = "",
    private fetcher: typeof fetch = (...args) => fetch(...args),
  ) {}

  get token(): string | null {
    try {
      return localStorage.getItem(TOKEN_KEY);
    } catch {
      return null;
    }
  }

  set token(value: string | null) {
    try {
      if (value === null) localStorage.removeItem(TOKEN_KEY);
      else localStorage.setItem(TOKEN_KEY, value);
    } catch {
      /* storage unavailable: stay logged out across reloads */
    }
  }

  get authenticated(): boolean {
    return this.token !== null;
  }

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
    headers: Record<string, string> = {},
  ): Promise<T> {
    const init: RequestInit = { method, headers: { ...headers } };
    if (body !== undefined) {
      (init.headers as Record<string, string>)["Content-Type"] = "application/json";
      init.body = JSON.stringify(body);
    }
    const token = this.token;
    if (token) {
      (init.headers as Record<string, string>)["Authorization"] = `Bearer ${token}`;
    }
    const response = await this.fetcher(`${this.base}${path}`, init);
    if (!response.ok) {
      let code = "http_error";
      let detail = response.statusText;
      let extra: Record<string, unknown> = {};
      try {
        const payload = await response.json();
        ({ code, detail, ...extra } = payload.error);
      } catch {
        /* non-JSON error body */
      }
      throw new ApiError(response.status, code, detail, extra);
    }
    return (await response.json()) as T;
  }

  // -- auth ----------------------------------------------------------

  async register(username: string, credential: string): Promise<SessionInfo> {
    const session = await this.request<SessionInfo>(
      "POST", "/api/v1/auth/register", { username, credential });
    this.token = session.token;
    return session;
  }

  async login(username: string, credential: string): Promise<SessionInfo> {
    const session = await this.request<SessionInfo>(
      "POST", "/api/v1/auth/login", { username, credential });
    this.token = session.token;
    return session;
  }

  async logout(): Promise<void> {
    try {
      await this.request("POST", "/api/v1/auth/logout");
    } finally {
      this.token = null;
    }
  }

  me(): Promise<{
    id: number;
    username: string;
    is_moderator: boolean;
    agreement_received: number;
    approved_statements: number;
    unread_notifications: number;
  }> {
    return this.request("GET", "/api/v1/me");
  }

  // -- statements ------------------------------------------------------

  view(id: number, form: Form): Promise<View> {
    return this.request("GET", `/api/v1/statements/${id}?form=${form}`);
  }

  recent(limit = 20): Promise<{ statements: StatementSummary[] }> {
    return this.request("GET", `/api/v1/statements?limit=${limit}`);
  }

  search(query: string, limit = 20): Promise<{ results: SearchResult[] }> {
    const q = encodeURIComponent(query);
    return this.request("GET", `/api/v1/search?q=${q}&limit=${limit}`);
  }

  createStatement(
    textNormal: string,
    textNegatedCustom: string | null,
    duplicatesReviewed: boolean,
  ): Promise<StatementSummary> {
    return this.request("POST", "/api/v1/statements", {
      text_normal: textNormal,
      text_negated_custom: textNegatedCustom,
      duplicates_reviewed: duplicatesReviewed,
    });
  }

  addRelation(args: {
    child: number;
    childForm: Form;
    parent: number;
    parentForm: Form;
    polarity: Polarity;
  }): Promise<{ edge: EdgePayload; relation_statement: StatementSummary | null }> {
    return this.request("POST", "/api/v1/relations", {
      child: args.child,
      child_form: args.childForm,
      parent: args.parent,
      parent_form: args.parentForm,
      polarity: args.polarity,
    });
  }

  // -- beliefs -----------------------------------------------------

  setBelief(id: number, form: Form): Promise<{ form: Form; belief_counts: { normal: number; negated: number } }> {
    const body: Record<string, string> = { form };
    if (form === "negated") {
      // The inverse-view gate: the droplet for the negated form only
      // exists on the inverse view, so clicking it attests to having
      // rendered that view.
      body.viewed_form = "negated";
    }
    return this.request("PUT", `/api/v1/statements/${id}/belief`, body);
  }

  removeBelief(id: number): Promise<{ form: null; belief_counts: { normal: number; negated: number } }> {
    return this.request("DELETE", `/api/v1/statements/${id}/belief`);
  }

  // -- comments, inbox, moderation, sharing ------------------------------

  comments(id: number): Promise<{ comments: CommentPayload[] }> {
    return this.request("GET", `/api/v1/statements/${id}/comments`);
  }

  addComment(id: number, body: string): Promise<CommentPayload> {
    return this.request("POST", `/api/v1/statements/${id}/comments`, { body });
  }

  inbox(): Promise<{ unread: number; notifications: NotificationPayload[] }> {
    return this.request("GET", "/api/v1/inbox");
  }

  markRead(notificationId: number): Promise<{ ok: boolean }> {
    return this.request("POST", `/api/v1/inbox/${notificationId}/read`);
  }

  approve(id: number): Promise<StatementSummary> {
    return this.request("POST", `/api/v1/statements/${id}/approve`);
  }

  demote(id: number): Promise<StatementSummary> {
    return this.request("POST", `/api/v1/statements/${id}/demote`);
  }

  moderationDrafts(): Promise<{ drafts: StatementSummary[] }> {
    return this.request("GET", "/api/v1/moderation/drafts");
  }

  shareLink(id: number): Promise<{ url: string; title: string; link: string }> {
    return this.request("GET", `/api/v1/statements/${id}/share-link`);
  }
}
