/** Payload shapes of the JSON API under /api/v1. */

export type Form = "normal" | "negated";
export type Polarity = "support" | "oppose";
export type StatementStatus = "draft" | "approved";
export type StatementKind = "plain" | "relation";

export interface BeliefCounts {
  normal: number;
  negated: number;
}

export interface ViewEntry {
  edge: number;
  statement: number;
  form: Form;
  text: string;
  slug: string;
  relation_statement: number | null;
  underlying_count: number;
  belief_counts: BeliefCounts;
  status: StatementStatus;
}

export interface UsedIn {
  statement: number;
  form: Form;
  polarity: Polarity;
  edge: number;
  text: string;
}

export interface RelationPayload {
  child: number;
  child_form: Form;
  parent: number;
  polarity: Polarity;
}

export interface View {
  statement: number;
  form: Form;
  kind: StatementKind;
  status: StatementStatus;
  rendered_text: string;
  text_normal: string;
  text_negated: string;
  slug: string;
  self: string;
  supporting: ViewEntry[];
  opposing: ViewEntry[];
  used_in: UsedIn[];
  belief_counts: BeliefCounts;
  comment_count: number;
  relation?: RelationPayload;
  your_belief?: { form: Form } | null;
}

export interface StatementSummary {
  id: number;
  kind: StatementKind;
  status: StatementStatus;
  text_normal: string;
  text_negated: string;
  slug: string;
  self: string;
  created_at: number;
  belief_counts: BeliefCounts;
  comment_count: number;
  relation?: RelationPayload;
}

export interface SearchResult extends StatementSummary {
  score: number;
  matched_form: Form;
}

export interface CommentPayload {
  id: number;
  statement: number;
  author_username: string;
  body: string;
  created_at: number;
}

export interface NotificationPayload {
  id: number;
  kind: "child_added" | "comment_added" | "status_changed";
  subject: number;
  ref: number | null;
  new_status: string | null;
  read: boolean;
  created_at: number;
}

export interface SessionUser {
  id: number;
  username: string;
  is_moderator: boolean;
}

export interface SessionInfo {
  token: string;
  expires_at: number;
  user: SessionUser;
}

export interface EdgePayload {
  id: number;
  child: number;
  child_form: Form;
  parent: number;
  polarity: Polarity;
  relation_statement: number | null;
  created_at: number;
}

export function inverse(form: Form): Form {
  return form === "normal" ? "negated" : "normal";
}
