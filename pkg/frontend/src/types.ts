/** Wire types for the drafting service, validated with zod. */

import { z } from "zod";

const point = z.tuple([z.number(), z.number()]);
const style = z.object({ weight: z.string(), pattern: z.string() });

export const segmentSchema = z.object({
  type: z.literal("segment"),
  p1: point,
  p2: point,
  style,
});

export const circleSchema = z.object({
  type: z.literal("circle"),
  center: point,
  r: z.number(),
  style,
});

export const arcSchema = z.object({
  type: z.literal("arc"),
  center: point,
  r: z.number(),
  a0_deg: z.number(),
  a1_deg: z.number(),
  style,
});

export const textSchema = z.object({
  type: z.literal("text"),
  origin: point,
  height_mm: z.number(),
  content: z.string(),
});

export const dimLinearSchema = z.object({
  type: z.literal("dim_linear"),
  p1: point,
  p2: point,
  offset_mm: z.number(),
  text: z.string(),
  side: z.number(),
});

export const axisBubbleSchema = z.object({
  type: z.literal("axis_bubble"),
  center: point,
  r: z.number(),
  label: z.string(),
});

export const leaderSchema = z.object({
  type: z.literal("leader"),
  points: z.array(point),
  text: z.string(),
});

export const primitiveSchema = z.discriminatedUnion("type", [
  segmentSchema,
  circleSchema,
  arcSchema,
  textSchema,
  dimLinearSchema,
  axisBubbleSchema,
  leaderSchema,
]);

export const displaySchema = z.object({
  primitives: z.array(primitiveSchema),
  bbox: z.tuple([z.number(), z.number(), z.number(), z.number()]),
  revision: z.number().optional(),
});

export const opResultSchema = z.object({
  revision: z.number(),
  affected_ids: z.array(z.number()),
});

export const conflictSchema = z.object({
  error: z.literal("RevisionConflict"),
  expected: z.number().nullable(),
  current: z.number(),
});

export const kernelErrorSchema = z.object({
  error: z.string(),
  detail: z.string(),
});

export const previewSchema = z.object({
  placement: z
    .object({
      partition_id: z.number(),
      offset_mm: z.number(),
      along_x: z.boolean(),
      rot180: z.boolean(),
    })
    .nullable(),
  ghost: z.object({ primitives: z.array(primitiveSchema) }),
});

export type Point = z.infer<typeof point>;
export type Primitive = z.infer<typeof primitiveSchema>;
export type DisplayDoc = z.infer<typeof displaySchema>;
export type OpResult = z.infer<typeof opResultSchema>;
export type PreviewResult = z.infer<typeof previewSchema>;

export interface OpRequest {
  op: string;
  params: Record<string, unknown>;
}
