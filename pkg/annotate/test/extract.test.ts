import { mkdtempSync, readFileSync, readdirSync, rmSync, writeFileSync } from 'fs';
import { tmpdir } from 'os';
import { join } from 'path';
import { afterAll, describe, expect, test } from 'vitest';
import { extract } from '../src/extract.js';
import { makeFixtures } from '../src/fixtures.js';
import { parseSidecar, Sidecar } from '../src/sidecar.js';

const root = mkdtempSync(join(tmpdir(), 'annotate-extract-'));
afterAll(() => rmSync(root, { recursive: true, force: true }));

const imagesDir = join(root, 'images');
makeFixtures({ seed: 21, count: 4, dim: 8, out: imagesDir });
const bmps = readdirSync(imagesDir)
  .filter(n => n.endsWith('.bmp'))
  .map(n => join(imagesDir, n));

function readSidecar(path: string): Sidecar {
  return parseSidecar(JSON.parse(readFileSync(path, 'utf8')));
}

describe('extract in fixture mode', () => {
  test('writes one schema-valid sidecar per image', () => {
    const out = join(root, 'out-basic');
    const result = extract(bmps, { out, fixtureMode: true, dim: 8 });
    expect(result.failed).toEqual([]);
    expect(result.written).toHaveLength(4);
    for (const path of result.written) {
      const doc = readSidecar(path);
      expect(doc.embedding).toHaveLength(8);
      const norm = Math.sqrt(doc.embedding!.reduce((s, v) => s + v * v, 0));
      expect(Math.abs(norm - 1)).toBeLessThan(1e-6);
      expect(doc.aesthetic_score).toBeGreaterThanOrEqual(1);
      expect(doc.aesthetic_score).toBeLessThanOrEqual(10);
      expect(doc.faces).toEqual([]); // no detector in fixture mode
      expect(doc.azimuth_intensity).toHaveLength(36);
      expect(doc.sh_coeffs).toBeUndefined();
      expect((doc as Record<string, unknown>).extractors).toMatchObject({
        embedder: 'strip-luma/1',
      });
    }
    expect(readdirSync(out).filter(n => n.endsWith('.tmp'))).toEqual([]);
  });

  test('is deterministic for the same inputs', () => {
    const a = join(root, 'det-a');
    const b = join(root, 'det-b');
    extract(bmps, { out: a, fixtureMode: true, dim: 8 });
    extract(bmps, { out: b, fixtureMode: true, dim: 8 });
    for (const name of readdirSync(a)) {
      expect(readFileSync(join(a, name)).equals(readFileSync(join(b, name)))).toBe(true);
    }
  });

  test('skips unreadable images but keeps going', () => {
    const out = join(root, 'out-skip');
    const missing = join(root, 'nope.bmp');
    const result = extract([missing, bmps[0]], { out, fixtureMode: true, dim: 8 });
    expect(result.failed).toEqual([missing]);
    expect(result.written).toHaveLength(1);
  });

  test('skips non-BMP files', () => {
    const junk = join(root, 'junk.bmp');
    writeFileSync(junk, 'not an image');
    const out = join(root, 'out-junk');
    const result = extract([junk, bmps[1]], { out, fixtureMode: true, dim: 8 });
    expect(result.failed).toEqual([junk]);
    expect(result.written).toHaveLength(1);
  });

  test('throws when every image fails', () => {
    const out = join(root, 'out-allfail');
    expect(() => extract([join(root, 'a.bmp'), join(root, 'b.bmp')], {
      out,
      fixtureMode: true,
      dim: 8,
    })).toThrow('all images failed');
  });

  test('rejects dim below 2', () => {
    expect(() => extract(bmps, { out: join(root, 'x'), fixtureMode: true, dim: 1 })).toThrow(
      'dim must be at least 2',
    );
  });
});

describe('extract with model config', () => {
  test('names the unbundled models it will not run', () => {
    expect(() =>
      extract(bmps, {
        out: join(root, 'x'),
        fixtureMode: false,
        dim: 8,
        models: { embedder: 'clip-vit-b32.onnx' },
      }),
    ).toThrow('embedder=clip-vit-b32.onnx');
  });

  test('requires either fixture mode or models', () => {
    expect(() => extract(bmps, { out: join(root, 'x'), fixtureMode: false, dim: 8 })).toThrow(
      'no extractors configured',
    );
  });
});
