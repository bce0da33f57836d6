// Offline sidecar extraction. Model-backed extractors (CLIP-style embedders,
// aesthetic scorers, face detectors, SH estimators) are configuration, not
// code we ship: naming one raises until an adapter is registered. Fixture
// mode runs pixel-statistic stand-ins that need no assets, which is what CI
// uses to exercise the full sidecar path.

import { readFileSync, mkdirSync } from 'fs';
import { basename, extname, join } from 'path';
import { decodeBmp, RasterRgb } from './bmp.js';
import { writeSidecar } from './sidecar.js';

export interface ExtractionConfig {
  out: string;
  fixtureMode: boolean;
  dim: number;
  models?: Record<string, string>; // extractor name -> model identifier/path
}

export interface ExtractResult {
  written: string[];
  failed: string[];
}

const FIXTURE_EXTRACTORS = {
  embedder: 'strip-luma/1',
  aesthetic: 'mean-luma/1',
  faces: 'none/1',
  lighting: 'column-luma/1',
};

function luma(px: Uint8Array, o: number): number {
  return 0.299 * px[o] + 0.587 * px[o + 1] + 0.114 * px[o + 2];
}

// Embedding stand-in: mean luminance of `dim` vertical strips, biased off
// zero, unit-normalized. Crude, deterministic, and shaped like the real thing.
function stripEmbedding(image: RasterRgb, dim: number): number[] {
  const { width, height, pixels } = image;
  const e = new Array<number>(dim);
  for (let j = 0; j < dim; j++) {
    const x0 = Math.floor((j * width) / dim);
    const x1 = Math.floor(((j + 1) * width) / dim);
    if (x1 <= x0) {
      e[j] = 1;
      continue;
    }
    let sum = 0;
    for (let y = 0; y < height; y++) {
      for (let x = x0; x < x1; x++) sum += luma(pixels, (y * width + x) * 3);
    }
    e[j] = sum / ((x1 - x0) * height) + 1;
  }
  const norm = Math.sqrt(e.reduce((s, v) => s + v * v, 0));
  return e.map(v => v / norm);
}

function meanLumaScore(image: RasterRgb): number {
  const { width, height, pixels } = image;
  let sum = 0;
  for (let o = 0; o < width * height * 3; o += 3) sum += luma(pixels, o);
  return 1 + (9 * sum) / (width * height * 255);
}

// Lighting stand-in: column means over the top third of the frame, mapped to
// a 90 degree field of view centered behind the camera (the same convention
// the guidance engine's own fallback uses).
function columnLumaAzimuth(image: RasterRgb): number[] {
  const { width, height, pixels } = image;
  if (width < 2) throw new Error('image too narrow for azimuth binning');
  const rows = Math.max(1, Math.floor(height / 3));
  const bins = new Array<number>(36).fill(0);
  for (let x = 0; x < width; x++) {
    let sum = 0;
    for (let y = 0; y < rows; y++) sum += luma(pixels, (y * width + x) * 3);
    const azimuth = 180 + (x / (width - 1) - 0.5) * 90;
    bins[Math.min(35, Math.floor(azimuth / 10))] += sum / rows;
  }
  return bins;
}

function extractOne(path: string, config: ExtractionConfig): string {
  const image = decodeBmp(readFileSync(path));
  const id = basename(path, extname(path));
  const sidecar = {
    id,
    embedding: stripEmbedding(image, config.dim),
    aesthetic_score: meanLumaScore(image),
    faces: [], // the fixture detector finds no one
    azimuth_intensity: columnLumaAzimuth(image),
    extractors: FIXTURE_EXTRACTORS,
  };
  const outPath = join(config.out, id + '.json');
  writeSidecar(outPath, sidecar);
  return outPath;
}

export function extract(imagePaths: string[], config: ExtractionConfig): ExtractResult {
  if (!config.fixtureMode) {
    const wanted = Object.entries(config.models ?? {});
    if (wanted.length === 0) {
      throw new Error('no extractors configured: use fixture mode or name models');
    }
    const listed = wanted.map(([k, v]) => `${k}=${v}`).join(', ');
    throw new Error(`model extractors are not bundled (${listed}); register an adapter or use fixture mode`);
  }
  if (config.dim < 2) throw new Error('dim must be at least 2');
  mkdirSync(config.out, { recursive: true });

  const result: ExtractResult = { written: [], failed: [] };
  for (const path of imagePaths) {
    try {
      result.written.push(extractOne(path, config));
    } catch (err) {
      console.error(`skipping ${path}: ${err instanceof Error ? err.message : err}`);
      result.failed.push(path);
    }
  }
  if (imagePaths.length > 0 && result.written.length === 0) {
    throw new Error('all images failed extraction');
  }
  return result;
}
