/** Belief droplet state machine.
 *
 * Three visual states against the currently shown form:
 *   "none"    — no opinion (grayed out)
 *   "held"    — believes the shown form (filled droplet)
 *   "inverse" — believes the other form (minus)
 *
 * Clicking cycles none -> held and held -> none; on "inverse" the click
 * switches belief to the shown form. Updates are optimistic and roll
 * back if the API call fails.
 */

import type { ApiClient } from "./api.js";
import { optimistic } from "./optimistic.js";
import type { BeliefCounts, Form } from "./types.js";
import { inverse } from "./types.js";

export type DropletState = "none" | "held" | "inverse";

export function dropletState(belief: Form | null, shownForm: Form): DropletState {
  if (belief === null) return "none";
  return belief === shownForm ? "held" : "inverse";
}

export interface DropletModel {
  belief: Form | null;
  counts: BeliefCounts;
}

function bump(counts: BeliefCounts, form: Form, delta: number): void {
  if (form === "normal") counts.normal += delta;
  else counts.negated += delta;
}

export class BeliefControl {
  constructor(
    private api: ApiClient,
    private statementId: number,
    public model: DropletModel,
    private onChange: () => void = () => {},
    private onError: (error: unknown) => void = () => {},
  ) {}

  state(shownForm: Form): DropletState {
    return dropletState(this.model.belief, shownForm);
  }

  /** Handle a click on the droplet while `shownForm` is rendered. */
  async toggle(shownForm: Form): Promise<boolean> {
    const model = this.model;
    const state = this.state(shownForm);
    return optimistic(
      () => ({ belief: model.belief, counts: { ...model.counts } }),
      () => {
        if (state === "held") {
          model.belief = null;
          bump(model.counts, shownForm, -1);
        } else {
          if (state === "inverse") {
            bump(model.counts, inverse(shownForm), -1);
          }
          model.belief = shownForm;
          bump(model.counts, shownForm, 1);
        }
        this.onChange();
      },
      () =>
        state === "held"
          ? this.api.removeBelief(this.statementId)
          : this.api.setBelief(this.statementId, shownForm),
      (previous) => {
        model.belief = previous.belief;
        model.counts = previous.counts;
        this.onChange();
      },
      this.onError,
    );
  }
}
