/** Editor session: wires pointer input to server-side previews and
 * commits. The editor never decides placement itself — every ghost and
 * every commit comes back from the service, so what the user sees is by
 * construction what the kernel will do.
 */

import { ApiClient, type CommitOutcome } from "./api.js";
import { pointerToWorld, type ViewState } from "./view.js";
import type { OpRequest, PreviewResult } from "./types.js";

export const PREVIEW_DEBOUNCE_MS = 50;

export interface OpeningToolOptions {
  widthMm: number;
  heightMm: number;
  gostType: number;
}

export class EditorSession {
  revision = 0;
  toasts: string[] = [];
  private debounceTimer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private readonly client: ApiClient,
    private readonly modelId: string,
    public view: ViewState,
  ) {}

  /** Opening-tool pointer move: snap against the model on the server
   * and stash the returned ghost; returns the raw preview for tests. */
  async openingPointerMove(
    px: number,
    py: number,
    options: OpeningToolOptions,
  ): Promise<PreviewResult | null> {
    const [wx, wy] = pointerToWorld(this.view, px, py);
    const preview = await this.client.preview(this.modelId, {
      op: "snap_opening_preview",
      params: {
        cursor: [Math.round(wx), Math.round(wy)],
        width_mm: options.widthMm,
        height_mm: options.heightMm,
        gost_type: options.gostType,
      },
    });
    if (preview === null) {
      return null; // a newer pointer move superseded this one
    }
    this.view = {
      ...this.view,
      ghost:
        preview.placement === null
          ? null
          : { primitives: preview.ghost.primitives, badge: "" },
    };
    return preview;
  }

  /** Debounced variant for high-frequency pointer streams. */
  openingPointerMoveDebounced(
    px: number,
    py: number,
    options: OpeningToolOptions,
  ): Promise<PreviewResult | null> {
    return new Promise((resolve) => {
      if (this.debounceTimer !== null) {
        clearTimeout(this.debounceTimer);
      }
      this.debounceTimer = setTimeout(() => {
        this.debounceTimer = null;
        void this.openingPointerMove(px, py, options).then(resolve);
      }, PREVIEW_DEBOUNCE_MS);
    });
  }

  /** Commit any op at the tracked revision; 409 is retried once inside
   * the client, 422 becomes a toast with the kernel error name. */
  async commit(request: OpRequest): Promise<CommitOutcome> {
    const outcome = await this.client.commitOp(
      this.modelId,
      request,
      this.revision,
    );
    if (outcome.kind === "applied") {
      this.revision = outcome.result.revision;
      this.view = { ...this.view, ghost: null };
    } else if (outcome.kind === "domain-error") {
      this.toasts.push(outcome.error);
    }
    return outcome;
  }

  /** Commit the currently snapped opening ghost. */
  async commitOpening(
    preview: PreviewResult,
    options: OpeningToolOptions,
  ): Promise<CommitOutcome> {
    if (preview.placement === null) {
      throw new Error("nothing snapped to commit");
    }
    return this.commit({
      op: "place_opening",
      params: {
        partition: preview.placement.partition_id,
        offset_mm: preview.placement.offset_mm,
        along_x: preview.placement.along_x,
        rot180: preview.placement.rot180,
        gost_type: options.gostType,
        width_mm: options.widthMm,
        height_mm: options.heightMm,
      },
    });
  }
}
