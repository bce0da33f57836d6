// Annotation sidecar wire format. This mirrors the guidance engine's own
// validator: everything written through writeSidecar must load there without
// warnings, and the schema is the contract between the two packages.

import { writeFileSync, renameSync } from 'fs';
import { z } from 'zod';

export const CANONICAL_WIDTH = 640;
export const CANONICAL_HEIGHT = 426;

const finite = z.number().finite();

export const FaceBoxSchema = z
  .object({
    x: z.number().int().min(0),
    y: z.number().int().min(0),
    w: z.number().int().min(1),
    h: z.number().int().min(1),
  })
  .refine(b => b.x + b.w <= CANONICAL_WIDTH && b.y + b.h <= CANONICAL_HEIGHT, {
    message: 'face box must lie within the canonical frame',
  });

const PointSchema = z.tuple([
  z.number().int().min(0).max(CANONICAL_WIDTH - 1),
  z.number().int().min(0).max(CANONICAL_HEIGHT - 1),
]);

export const LineSchema = z
  .tuple([PointSchema, PointSchema])
  .refine(([p0, p1]) => p0[0] !== p1[0] || p0[1] !== p1[1], {
    message: 'line endpoints coincide',
  });

export const SidecarSchema = z
  .object({
    id: z.string().min(1),
    embedding: z.array(finite).min(1).optional(),
    aesthetic_score: finite.optional(),
    faces: z.array(FaceBoxSchema).optional(),
    sh_coeffs: z.array(finite).length(9).optional(),
    azimuth_intensity: z.array(finite.min(0)).length(36).optional(),
    semantic_lines: z.array(LineSchema).optional(),
  })
  .passthrough(); // the engine ignores unknown fields, so the schema does too

export type Sidecar = z.infer<typeof SidecarSchema>;

export function parseSidecar(doc: unknown): Sidecar {
  return SidecarSchema.parse(doc);
}

// Fixed key order and a trailing newline keep serialization byte-stable;
// write-then-rename keeps partially written files out of consumer view.
export function writeSidecar(path: string, sidecar: Sidecar): void {
  parseSidecar(sidecar);
  const tmp = path + '.tmp';
  writeFileSync(tmp, JSON.stringify(sidecar, null, 2) + '\n');
  renameSync(tmp, path);
}
