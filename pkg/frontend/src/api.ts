/** Client for the drafting service with optimistic concurrency.
 *
 * Commits carry the revision they were computed against. On a 409 the
 * client refetches the current revision and replays the op exactly
 * once; on a 422 it surfaces the kernel error name for a toast and
 * leaves local state alone.
 */

import {
  conflictSchema,
  displaySchema,
  kernelErrorSchema,
  opResultSchema,
  previewSchema,
  type DisplayDoc,
  type OpRequest,
  type OpResult,
  type PreviewResult,
} from "./types.js";

export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<{ status: number; json(): Promise<unknown> }>;

export type CommitOutcome =
  | { kind: "applied"; result: OpResult }
  | { kind: "domain-error"; error: string; detail: string }
  | { kind: "conflict"; current: number };

export class ApiClient {
  readonly baseUrl: string;
  private readonly fetchImpl: FetchLike;
  private previewSeq = 0;

  constructor(baseUrl: string, fetchImpl?: FetchLike) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
    this.fetchImpl = fetchImpl ?? (fetch as unknown as FetchLike);
  }

  private async post(path: string, body: unknown) {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    return { status: response.status, body: await response.json() };
  }

  private async get(path: string) {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`);
    if (response.status !== 200) {
      throw new Error(`GET ${path} failed with ${response.status}`);
    }
    return response.json();
  }

  async createModel(doc: unknown): Promise<{ id: string; revision: number }> {
    const { status, body } = await this.post("/models", doc);
    if (status !== 200) {
      throw new Error(`model upload rejected with ${status}`);
    }
    return body as { id: string; revision: number };
  }

  async getModel(modelId: string): Promise<unknown> {
    return this.get(`/models/${modelId}`);
  }

  async getDisplay(modelId: string, rev?: number): Promise<DisplayDoc> {
    const query = rev === undefined ? "" : `?rev=${rev}`;
    return displaySchema.parse(await this.get(`/models/${modelId}/display${query}`));
  }

  async currentRevision(modelId: string): Promise<number> {
    const doc = await this.getDisplay(modelId);
    return doc.revision ?? 0;
  }

  /**
   * Apply one op at the expected revision. A stale revision triggers a
   * single refetch-and-retry; a second conflict is reported to the
   * caller instead of looping.
   */
  async commitOp(
    modelId: string,
    request: OpRequest,
    expectedRevision: number,
  ): Promise<CommitOutcome> {
    let expected = expectedRevision;
    for (let attempt = 0; attempt < 2; attempt++) {
      const { status, body } = await this.post(`/models/${modelId}/ops`, {
        ...request,
        expected_revision: expected,
      });
      if (status === 200) {
        return { kind: "applied", result: opResultSchema.parse(body) };
      }
      if (status === 409) {
        const conflict = conflictSchema.parse(body);
        if (attempt === 0) {
          expected = conflict.current;
          continue;
        }
        return { kind: "conflict", current: conflict.current };
      }
      const kernelError = kernelErrorSchema.parse(body);
      return {
        kind: "domain-error",
        error: kernelError.error,
        detail: kernelError.detail,
      };
    }
    throw new Error("unreachable");
  }

  /**
   * Ghost preview; only the latest in-flight request wins. Stale
   * responses resolve to null so the UI never paints an outdated ghost.
   */
  async preview(
    modelId: string,
    request: OpRequest,
  ): Promise<PreviewResult | null> {
    const seq = ++this.previewSeq;
    const { status, body } = await this.post(
      `/models/${modelId}/preview`,
      request,
    );
    if (seq !== this.previewSeq) {
      return null;
    }
    if (status !== 200) {
      const kernelError = kernelErrorSchema.parse(body);
      throw new Error(`${kernelError.error}: ${kernelError.detail}`);
    }
    return previewSchema.parse(body);
  }
}
