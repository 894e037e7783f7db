/** Drag-to-count axis placement: the user anchors the first axis and
 * drags; the distance divided by the chosen step gives the axis count,
 * and a badge shows the number of spans while the ghost grid follows.
 */

export const MAX_AXES = 99;

export interface AxisDragState {
  orientation: "h" | "v";
  originMm: [number, number]; // world point of the first axis
  stepMm: number;
  labelStart: string;
}

export interface AxisDragResult {
  count: number;
  badge: string; // span count shown next to the cursor
  request: {
    op: "upsert_axis_group";
    params: {
      orientation: "h" | "v";
      count: number;
      step_mm: number;
      label_start: string;
    };
  };
}

export function dragAxisCount(
  state: AxisDragState,
  cursorMm: [number, number],
): AxisDragResult {
  // Horizontal axes stack along Y, vertical axes along X.
  const travel =
    state.orientation === "h"
      ? cursorMm[1] - state.originMm[1]
      : cursorMm[0] - state.originMm[0];
  const raw = Math.floor(Math.max(travel, 0) / state.stepMm) + 1;
  const count = Math.min(raw, MAX_AXES);
  return {
    count,
    badge: String(count - 1),
    request: {
      op: "upsert_axis_group",
      params: {
        orientation: state.orientation,
        count,
        step_mm: state.stepMm,
        label_start: state.labelStart,
      },
    },
  };
}
