// Synthetic fixture generator: seeded images plus annotation sidecars, no
// models involved. Even indices are landscapes (azimuth distribution and a
// semantic line), odd indices are portraits (face box and SH coefficients);
// every fixture carries a unit-norm embedding and an aesthetic score so the
// set feeds index building directly.

import { mkdirSync, writeFileSync, renameSync } from 'fs';
import { join } from 'path';
import { encodeBmp } from './bmp.js';
import { fixtureRng, randInt, randNormal, Rng } from './rng.js';
import { CANONICAL_HEIGHT, CANONICAL_WIDTH, Sidecar, writeSidecar } from './sidecar.js';

export const IMAGE_WIDTH = 320; // canonical frame at half scale
export const IMAGE_HEIGHT = 213;

export interface FixtureOptions {
  seed: number;
  count: number;
  dim: number;
  out: string;
}

function round(value: number, places: number): number {
  const f = 10 ** places;
  return Math.round(value * f) / f;
}

function unitEmbedding(rng: Rng, dim: number, landscape: boolean): number[] {
  // Offset the first component by mode so embeddings cluster the way real
  // image embeddings cluster by content; nearest-neighbor queries then stay
  // within one mode.
  const e = new Array<number>(dim);
  e[0] = (landscape ? 2.5 : -2.5) + 0.5 * randNormal(rng);
  for (let j = 1; j < dim; j++) e[j] = randNormal(rng);
  let norm = Math.sqrt(e.reduce((s, v) => s + v * v, 0));
  return e.map(v => v / norm);
}

function landscapeSidecar(rng: Rng, id: string, dim: number): Sidecar {
  const embedding = unitEmbedding(rng, dim, true);
  const score = round(3 + 6 * rng(), 2);
  const bins = new Array<number>(36);
  for (let b = 0; b < 36; b++) bins[b] = round(0.05 + 0.45 * rng(), 4);
  bins[randInt(rng, 0, 36)] += 3; // one dominant light direction
  const y0 = randInt(rng, 30, 396);
  const y1 = randInt(rng, 30, 396);
  return {
    id,
    embedding,
    aesthetic_score: score,
    azimuth_intensity: bins,
    semantic_lines: [[[0, y0], [CANONICAL_WIDTH - 1, y1]]],
  };
}

function portraitSidecar(rng: Rng, id: string, dim: number): Sidecar {
  const embedding = unitEmbedding(rng, dim, false);
  const score = round(3 + 6 * rng(), 2);
  const face = {
    x: randInt(rng, 120, 400),
    y: randInt(rng, 60, 220),
    w: randInt(rng, 60, 160),
    h: randInt(rng, 80, 180),
  };
  const sh = new Array<number>(9);
  sh[0] = round(0.6 + 0.8 * rng(), 4);
  for (let j = 1; j < 9; j++) sh[j] = round(0.5 * randNormal(rng), 4);
  return { id, embedding, aesthetic_score: score, faces: [face], sh_coeffs: sh };
}

function clamp8(v: number): number {
  return v < 0 ? 0 : v > 255 ? 255 : v;
}

// Integer-arithmetic pixel patterns: a graded sky lit from one side for
// landscapes, a bright face rectangle on a dim ground for portraits.
function renderImage(rng: Rng, index: number, sidecar: Sidecar): Uint8Array {
  const px = new Uint8Array(IMAGE_WIDTH * IMAGE_HEIGHT * 3);
  const tintR = randInt(rng, -30, 31);
  const tintB = randInt(rng, -30, 31);
  if (index % 2 === 0) {
    const litRight = randInt(rng, 0, 2) === 1;
    for (let y = 0; y < IMAGE_HEIGHT; y++) {
      const base = 200 - Math.floor((y * 120) / (IMAGE_HEIGHT - 1));
      for (let x = 0; x < IMAGE_WIDTH; x++) {
        const side = Math.floor((x * 40) / (IMAGE_WIDTH - 1));
        const lum = base + (litRight ? side : 40 - side);
        const o = (y * IMAGE_WIDTH + x) * 3;
        px[o] = clamp8(lum + tintR);
        px[o + 1] = clamp8(lum);
        px[o + 2] = clamp8(lum + tintB);
      }
    }
  } else {
    const box = sidecar.faces![0];
    const fx0 = box.x >> 1, fy0 = box.y >> 1; // canonical frame at half scale
    const fx1 = (box.x + box.w) >> 1, fy1 = (box.y + box.h) >> 1;
    for (let y = 0; y < IMAGE_HEIGHT; y++) {
      for (let x = 0; x < IMAGE_WIDTH; x++) {
        const inFace = x >= fx0 && x < fx1 && y >= fy0 && y < fy1;
        const lum = inFace ? 190 : 70 + ((x + y * 3) % 17);
        const o = (y * IMAGE_WIDTH + x) * 3;
        px[o] = clamp8(lum + (inFace ? 20 : tintR));
        px[o + 1] = clamp8(lum);
        px[o + 2] = clamp8(lum + (inFace ? -10 : tintB));
      }
    }
  }
  return px;
}

export function makeFixtures(opts: FixtureOptions): string[] {
  if (opts.dim < 2) throw new Error('dim must be at least 2');
  if (opts.count < 1) throw new Error('count must be at least 1');
  mkdirSync(opts.out, { recursive: true });

  const names: string[] = [];
  for (let i = 0; i < opts.count; i++) {
    const rng = fixtureRng(opts.seed, i);
    const name = `fixture-${String(i).padStart(3, '0')}`;
    const sidecar =
      i % 2 === 0
        ? landscapeSidecar(rng, name, opts.dim)
        : portraitSidecar(rng, name, opts.dim);
    const bmp = encodeBmp({
      width: IMAGE_WIDTH,
      height: IMAGE_HEIGHT,
      pixels: renderImage(rng, i, sidecar),
    });
    const imagePath = join(opts.out, name + '.bmp');
    writeFileSync(imagePath + '.tmp', bmp);
    renameSync(imagePath + '.tmp', imagePath);
    writeSidecar(join(opts.out, name + '.json'), sidecar);
    names.push(name);
  }
  return names;
}
