export { ApiClient, type CommitOutcome, type FetchLike } from "./api.js";
export { dragAxisCount, MAX_AXES } from "./axisTool.js";
export { EditorSession, PREVIEW_DEBOUNCE_MS } from "./editor.js";
export { renderScene, type DrawCommand } from "./render.js";
export {
  fitView,
  makeView,
  panBy,
  pointerToWorld,
  worldToPointer,
  zoomAt,
  type ViewState,
} from "./view.js";
export * from "./types.js";
