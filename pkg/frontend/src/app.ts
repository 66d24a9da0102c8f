/** Application controller: navigation, event delegation, and the flows
 * (inverse toggle, belief clicks, search-first add, comments, inbox,
 * moderation). Rendering itself lives in render.ts; this file decides
 * when to fetch and what to re-render. */

import { ApiClient, ApiError } from "./api.js";
import { BranchPath } from "./branch.js";
import { BeliefControl } from "./droplet.js";
import { lintOk, lintStatementText, MAX_NEGATED_TEXT_LEN } from "./lint.js";
import {
  columnEntries,
  el,
  renderComments,
  renderInbox,
  renderModerationQueue,
  renderSearchResults,
  renderStatementPage,
} from "./render.js";
import { parseRoute, statementPath } from "./router.js";
import type { Form, Polarity, SearchResult, View } from "./types.js";
import { inverse } from "./types.js";

export interface AppOptions {
  root: HTMLElement;
  api?: ApiClient;
  navigateHistory?: boolean;
}

export class App {
  api: ApiClient;
  root: HTMLElement;
  branch = new BranchPath();
  view: View | null = null;
  belief: BeliefControl | null = null;
  isModerator = false;
  username: string | null = null;
  private history: boolean;

  constructor(options: AppOptions) {
    this.api = options.api ?? new ApiClient();
    this.root = options.root;
    this.history = options.navigateHistory ?? true;
    this.root.addEventListener("click", (event) => this.onClick(event));
    this.root.addEventListener("submit", (event) => this.onSubmit(event));
  }

  // -- bootstrapping -----------------------------------------------------

  async start(): Promise<void> {
    if (this.api.authenticated) {
      try {
        const me = await this.api.me();
        this.isModerator = me.is_moderator;
        this.username = me.username;
      } catch {
        this.api.token = null;
      }
    }
    const route = parseRoute(
      window.location.pathname, window.location.search, window.location.hash);
    if (route.page === "statement" && route.statementId !== undefined) {
      await this.openStatement(route.statementId, route.form, {
        push: false,
        highlightComment: route.highlightComment,
        highlightRelation: route.highlightRelation,
      });
    } else if (route.page === "inbox") {
      await this.openInbox(false);
    } else if (route.page === "moderation") {
      await this.openModeration(false);
    } else {
      await this.openHome(false);
    }
  }

  // -- navigation ---------------------------------------------------------

  async openStatement(
    id: number,
    form: Form,
    opts: {
      push?: boolean;
      viaSidebar?: boolean;
      highlightComment?: number | null;
      highlightRelation?: number | null;
    } = {},
  ): Promise<void> {
    let view: View;
    try {
      view = await this.api.view(id, form);
    } catch (error) {
      this.renderFailure(error, id);
      return;
    }
    this.view = view;
    if (!opts.viaSidebar) {
      this.branch.visit({ statement: id, form });
    }
    this.belief = new BeliefControl(
      this.api,
      view.statement,
      {
        belief: view.your_belief ? view.your_belief.form : null,
        counts: { ...view.belief_counts },
      },
      () => this.refreshDroplet(),
      (error) => this.flash(describeError(error)),
    );
    if (opts.push ?? true) {
      this.pushUrl(statementPath(view.self, form));
    }
    this.renderPage(opts.highlightComment ?? null, opts.highlightRelation ?? null);
    void this.loadComments(opts.highlightComment ?? null);
  }

  private renderFailure(error: unknown, statementId: number): void {
    if (error instanceof ApiError && error.status === 404) {
      this.root.replaceChildren(
        this.topBar(),
        el("section", { class: "not-found" }, [
          el("h1", {}, ["Statement not found"]),
          el("p", {}, [
            `No statement ${statementId} exists (it may never have, or the `,
            "link is stale).",
          ]),
          el("a", { href: "/", "data-action": "open-home" }, ["back to recent statements"]),
        ]),
      );
      return;
    }
    // Network-level failure: keep whatever is on screen, show a banner.
    const banner = el("div", { class: "offline-banner", "data-role": "offline" }, [
      "The service is unreachable; showing the last loaded state. ",
      el("button", { "data-action": "retry", "data-statement": statementId }, [
        "retry",
      ]),
    ]);
    const existing = this.root.querySelector('[data-role="offline"]');
    if (existing) existing.remove();
    this.root.prepend(banner);
  }

  private renderPage(
    highlightComment: number | null,
    highlightRelation: number | null,
  ): void {
    if (!this.view) return;
    const page = renderStatementPage(this.view, {
      branch: this.branch.entries,
      cursor: this.branch.cursor,
      authenticated: this.api.authenticated,
      isModerator: this.isModerator,
    });
    this.root.replaceChildren(this.topBar(), page);
    this.refreshDroplet();
    if (highlightRelation !== null) {
      const node = this.root.querySelector(`#relation-${highlightRelation}`);
      if (node) node.classList.add("highlight");
    }
  }

  private async loadComments(highlightId: number | null): Promise<void> {
    if (!this.view) return;
    const list = this.root.querySelector(".comment-list");
    if (!list) return;
    try {
      const { comments } = await this.api.comments(this.view.statement);
      renderComments(list as HTMLElement, comments, highlightId);
      if (highlightId !== null) {
        const node = this.root.querySelector(`#comment-${highlightId}`);
        if (node && "scrollIntoView" in node) {
          (node as HTMLElement).scrollIntoView();
        }
      }
    } catch {
      /* comments panel stays empty when offline */
    }
  }

  async openHome(push = true): Promise<void> {
    const { statements } = await this.api.recent(25);
    if (push) this.pushUrl("/");
    const list = el(
      "ul",
      { class: "recent-list" },
      statements.map((s) =>
        el("li", {}, [
          el(
            "a",
            {
              href: s.self,
              "data-action": "open-child",
              "data-statement": s.id,
              "data-form": "normal",
            },
            [s.text_normal],
          ),
        ]),
      ),
    );
    this.root.replaceChildren(
      this.topBar(),
      el("section", { class: "home" }, [
        el("h1", {}, ["Recent statements"]),
        this.searchBox(),
        list,
      ]),
    );
  }

  async openInbox(push = true): Promise<void> {
    if (!this.api.authenticated) {
      this.flash("sign in to see notifications");
      return;
    }
    const { notifications } = await this.api.inbox();
    if (push) this.pushUrl("/inbox");
    this.root.replaceChildren(
      this.topBar(),
      el("section", { class: "inbox" }, [
        el("h1", {}, ["Inbox"]),
        renderInbox(notifications),
      ]),
    );
  }

  async openModeration(push = true): Promise<void> {
    if (!this.isModerator) {
      this.flash("moderators only");
      return;
    }
    const { drafts } = await this.api.moderationDrafts();
    if (push) this.pushUrl("/moderation");
    this.root.replaceChildren(
      this.topBar(),
      el("section", { class: "moderation" }, [
        el("h1", {}, ["Drafts awaiting review"]),
        renderModerationQueue(drafts),
      ]),
    );
  }

  private pushUrl(url: string): void {
    if (this.history && typeof window !== "undefined" && window.history) {
      window.history.pushState({}, "", url);
    }
  }

  // -- top bar -------------------------------------------------------------

  private topBar(): HTMLElement {
    const items: Array<Node | string> = [
      el("a", { href: "/", "data-action": "open-home", class: "brand" }, ["socle"]),
    ];
    if (this.username) {
      items.push(
        el("span", { class: "top-user" }, [this.username]),
        el("a", { href: "/inbox", "data-action": "open-inbox", class: "top-inbox" }, [
          "inbox",
        ]),
        el("span", { class: "top-stats", "data-role": "stats" }, [""]),
      );
      if (this.isModerator) {
        items.push(
          el("a", { href: "/moderation", "data-action": "open-moderation" }, [
            "moderation",
          ]),
        );
      }
      items.push(el("button", { "data-action": "logout" }, ["sign out"]));
    } else {
      items.push(
        el("form", { class: "login-form", "data-action": "login-form" }, [
          el("input", { name: "username", placeholder: "username" }),
          el("input", { name: "credential", type: "password", placeholder: "password" }),
          el("button", { type: "submit", "data-mode": "login" }, ["sign in"]),
          el("button", { type: "submit", "data-mode": "register" }, ["register"]),
        ]),
      );
    }
    items.push(el("span", { class: "flash", "data-role": "flash" }, [""]));
    const bar = el("nav", { class: "top-bar" }, items);
    if (this.username) void this.fillStats(bar);
    return bar;
  }

  private async fillStats(bar: HTMLElement): Promise<void> {
    try {
      const me = await this.api.me();
      const stats = bar.querySelector('[data-role="stats"]');
      if (stats) {
        stats.textContent =
          `${dropletGlyph()} ${me.agreement_received} received · ` +
          `${me.approved_statements} approved · ` +
          `${me.unread_notifications} unread`;
      }
    } catch {
      /* stats are decorative */
    }
  }

  flash(message: string): void {
    const node = this.root.querySelector('[data-role="flash"]');
    if (node) node.textContent = message;
  }

  private refreshDroplet(): void {
    if (!this.view || !this.belief) return;
    const button = this.root.querySelector('[data-action="toggle-belief"]');
    if (!button) return;
    const state = this.belief.state(this.view.form);
    button.classList.remove("droplet-none", "droplet-held", "droplet-inverse");
    button.classList.add(`droplet-${state}`);
    const counts = this.belief.model.counts;
    const count = this.view.form === "normal" ? counts.normal : counts.negated;
    button.textContent = state === "inverse"
      ? `− ${count}`
      : `${dropletGlyph()} ${count}`;
  }

  // -- event delegation -----------------------------------------------------

  private onClick(event: Event): void {
    const target = (event.target as HTMLElement).closest("[data-action]");
    if (!target) return;
    const action = (target as HTMLElement).dataset.action;
    if (!action) return;
    const statement = Number((target as HTMLElement).dataset.statement ?? "0");
    const form = ((target as HTMLElement).dataset.form ?? "normal") as Form;
    const handledLink = ["open-child", "open-stalk", "open-used-in", "open-home",
                         "open-inbox", "open-moderation"];
    if (handledLink.includes(action) || (target as HTMLElement).tagName === "A") {
      event.preventDefault();
    }

    switch (action) {
      case "open-child":
      case "open-stalk":
      case "open-used-in":
        void this.openStatement(statement, action === "open-child" ? form : "normal");
        break;
      case "open-home":
        void this.openHome();
        break;
      case "open-inbox":
        void this.openInbox();
        break;
      case "open-moderation":
        void this.openModeration();
        break;
      case "toggle-form":
        void this.toggleForm();
        break;
      case "toggle-belief":
        void this.toggleBelief();
        break;
      case "revisit":
        this.revisit(Number((target as HTMLElement).dataset.index));
        break;
      case "add-child":
        this.openAddFlow(
          ((target as HTMLElement).dataset.polarity ?? "support") as Polarity,
        );
        break;
      case "share":
        void this.share();
        break;
      case "approve":
        void this.moderate("approve");
        break;
      case "demote":
        void this.moderate("demote");
        break;
      case "approve-queued":
        void this.api
          .approve(statement)
          .then(() => this.openModeration(false))
          .catch((error) => this.flash(describeError(error)));
        break;
      case "mark-read":
        void this.api
          .markRead(Number((target as HTMLElement).dataset.notification))
          .then(() => this.openInbox(false))
          .catch((error) => this.flash(describeError(error)));
        break;
      case "logout":
        void this.api.logout().then(() => {
          this.username = null;
          this.isModerator = false;
          void this.openHome(false);
        });
        break;
      case "pick-search-hit":
        void this.pickSearchHit(statement, form);
        break;
      case "retry":
        void this.openStatement(statement, this.view?.form ?? "normal");
        break;
      default:
        break;
    }
  }

  private onSubmit(event: Event): void {
    const form = event.target as HTMLFormElement;
    const action = form.dataset.action;
    if (!action) return;
    event.preventDefault();
    if (action === "login-form") {
      const submitter = (event as SubmitEvent).submitter as HTMLElement | null;
      const mode = submitter?.dataset.mode === "register" ? "register" : "login";
      void this.signIn(form, mode);
    } else if (action === "comment-form") {
      void this.submitComment(form);
    } else if (action === "add-search") {
      void this.runAddSearch(form);
    } else if (action === "add-create") {
      void this.createAndRelate(form);
    }
  }

  // -- flows ----------------------------------------------------------------

  async toggleForm(): Promise<void> {
    if (!this.view) return;
    const next = inverse(this.view.form);
    this.branch.toggleForm(next);
    await this.openStatement(this.view.statement, next, { viaSidebar: true });
  }

  async toggleBelief(): Promise<void> {
    if (!this.view || !this.belief) return;
    if (!this.api.authenticated) {
      this.flash("sign in to add droplets");
      return;
    }
    if (this.view.status === "draft") {
      this.flash("drafts cannot receive droplets yet");
      return;
    }
    await this.belief.toggle(this.view.form);
  }

  revisit(index: number): void {
    const entry = this.branch.revisit(index);
    void this.openStatement(entry.statement, entry.form, { viaSidebar: true });
  }

  async share(): Promise<void> {
    if (!this.view) return;
    try {
      const { url } = await this.api.shareLink(this.view.statement);
      if (typeof window !== "undefined" && window.open) {
        window.open(url, "_blank");
      }
      this.flash(`share link ready: ${url}`);
    } catch (error) {
      this.flash(describeError(error));
    }
  }

  async moderate(action: "approve" | "demote"): Promise<void> {
    if (!this.view) return;
    try {
      if (action === "approve") await this.api.approve(this.view.statement);
      else await this.api.demote(this.view.statement);
      await this.openStatement(this.view.statement, this.view.form, {
        viaSidebar: true, push: false,
      });
    } catch (error) {
      this.flash(describeError(error));
    }
  }

  async signIn(form: HTMLFormElement, mode: "login" | "register"): Promise<void> {
    const data = new FormData(form);
    const username = String(data.get("username") ?? "");
    const credential = String(data.get("credential") ?? "");
    try {
      const session =
        mode === "register"
          ? await this.api.register(username, credential)
          : await this.api.login(username, credential);
      this.username = session.user.username;
      this.isModerator = session.user.is_moderator;
      if (this.view) {
        await this.openStatement(this.view.statement, this.view.form, {
          viaSidebar: true, push: false,
        });
      } else {
        await this.openHome(false);
      }
    } catch (error) {
      this.flash(describeError(error));
    }
  }

  async submitComment(form: HTMLFormElement): Promise<void> {
    if (!this.view) return;
    const body = String(new FormData(form).get("body") ?? "");
    try {
      await this.api.addComment(this.view.statement, body);
      form.reset();
      await this.loadComments(null);
    } catch (error) {
      this.flash(describeError(error));
    }
  }

  // -- the search-first add flow ---------------------------------------------

  private addFlowState: { polarity: Polarity } | null = null;

  openAddFlow(polarity: Polarity): void {
    if (!this.view) return;
    if (!this.api.authenticated) {
      this.flash("sign in to add statements");
      return;
    }
    this.addFlowState = { polarity };
    const modal = el("div", { class: "add-flow", "data-role": "add-flow" }, [
      el("h3", {}, [polarity === "support" ? "Add a supporting statement" : "Add an opposing statement"]),
      el("p", { class: "hint" }, [
        "Search first: pick an existing statement (either form) or create a new one.",
      ]),
      el("form", { "data-action": "add-search", class: "add-search" }, [
        el("input", { name: "q", placeholder: "search existing statements" }),
        el("button", { type: "submit" }, ["search"]),
      ]),
      el("div", { class: "search-results-holder" }, []),
      el("form", { "data-action": "add-create", class: "add-create" }, [
        el("textarea", { name: "text_normal", rows: 2, placeholder: "new statement text" }),
        el("textarea", {
          name: "text_negated_custom",
          rows: 2,
          placeholder: "custom negated text (optional)",
        }),
        el("div", { class: "lint-output", "data-role": "lint" }, []),
        el("label", {}, [
          el("input", { type: "checkbox", name: "duplicates_reviewed" }),
          " I searched and reviewed similar statements",
        ]),
        el("button", { type: "submit", disabled: true, "data-role": "create" }, [
          "create and relate",
        ]),
      ]),
      el("div", { class: "duplicate-candidates", "data-role": "candidates" }, []),
    ]);
    const existing = this.root.querySelector('[data-role="add-flow"]');
    if (existing) existing.remove();
    this.root.append(modal);

    const textInput = modal.querySelector('[name="text_normal"]') as HTMLTextAreaElement;
    const negatedInput = modal.querySelector(
      '[name="text_negated_custom"]') as HTMLTextAreaElement;
    const liveLint = () => this.runLiveLint(modal, textInput, negatedInput);
    textInput.addEventListener("input", liveLint);
    negatedInput.addEventListener("input", liveLint);
  }

  private runLiveLint(
    modal: HTMLElement,
    textInput: HTMLTextAreaElement,
    negatedInput: HTMLTextAreaElement,
  ): void {
    const report = lintStatementText(textInput.value);
    const negated = negatedInput.value.trim()
      ? lintStatementText(negatedInput.value, MAX_NEGATED_TEXT_LEN)
      : { errors: [], warnings: [] };
    const output = modal.querySelector('[data-role="lint"]') as HTMLElement;
    const problems: HTMLElement[] = [];
    for (const error of [...report.errors, ...negated.errors]) {
      problems.push(el("p", { class: "lint-error" }, [`error: ${error}`]));
    }
    for (const warning of [...report.warnings, ...negated.warnings]) {
      problems.push(
        el("p", { class: "lint-warning" }, [
          `hint: ${warning.kind} "${warning.token}"`,
        ]),
      );
    }
    output.replaceChildren(...problems);
    const button = modal.querySelector('[data-role="create"]') as HTMLButtonElement;
    button.disabled = !(lintOk(report) && lintOk(negated));
  }

  async runAddSearch(form: HTMLFormElement): Promise<void> {
    const query = String(new FormData(form).get("q") ?? "");
    const holder = this.root.querySelector(".search-results-holder");
    if (!holder) return;
    try {
      const { results } = await this.api.search(query);
      holder.replaceChildren(renderSearchResults(results));
    } catch (error) {
      this.flash(describeError(error));
    }
  }

  async pickSearchHit(childId: number, childForm: Form): Promise<void> {
    if (this.addFlowState && this.view) {
      await this.relateChild(childId, childForm);
      return;
    }
    await this.openStatement(childId, childForm);
  }

  async createAndRelate(form: HTMLFormElement): Promise<void> {
    if (!this.view || !this.addFlowState) return;
    const data = new FormData(form);
    const textNormal = String(data.get("text_normal") ?? "");
    const custom = String(data.get("text_negated_custom") ?? "").trim() || null;
    const reviewed = data.get("duplicates_reviewed") === "on";
    try {
      const statement = await this.api.createStatement(textNormal, custom, reviewed);
      if (statement.status === "draft") {
        this.flash("created as a draft; it can be related once approved");
        this.closeAddFlow();
        return;
      }
      await this.relateChild(statement.id, "normal");
    } catch (error) {
      if (error instanceof ApiError && error.code === "review_duplicates") {
        const holder = this.root.querySelector('[data-role="candidates"]');
        if (holder) {
          holder.replaceChildren(
            el("p", {}, ["Similar statements exist — pick one or confirm review:"]),
            renderSearchResults(
              (error.extra.candidates ?? []) as SearchResult[],
            ),
          );
        }
        return;
      }
      this.flash(describeError(error));
    }
  }

  private async relateChild(childId: number, childForm: Form): Promise<void> {
    if (!this.view || !this.addFlowState) return;
    // The polarity button reflects the currently shown form; the server
    // canonicalizes against the parent's normal form.
    try {
      await this.api.addRelation({
        child: childId,
        childForm,
        parent: this.view.statement,
        parentForm: this.view.form,
        polarity: this.addFlowState.polarity,
      });
      this.closeAddFlow();
      await this.openStatement(this.view.statement, this.view.form, {
        viaSidebar: true, push: false,
      });
    } catch (error) {
      this.flash(describeError(error));
    }
  }

  private closeAddFlow(): void {
    this.addFlowState = null;
    const modal = this.root.querySelector('[data-role="add-flow"]');
    if (modal) modal.remove();
  }

  private searchBox(): HTMLElement {
    return el("form", { "data-action": "add-search", class: "home-search" }, [
      el("input", { name: "q", placeholder: "search statements" }),
      el("button", { type: "submit" }, ["search"]),
      el("div", { class: "search-results-holder" }, []),
    ]);
  }
}

function dropletGlyph(): string {
  return "\u{1F4A7}";
}

export function describeError(error: unknown): string {
  if (error instanceof ApiError) {
    return `${error.code}: ${error.detail}`;
  }
  return error instanceof Error ? error.message : String(error);
}
