import { describe, expect, test } from 'vitest';
import { decodeBmp, encodeBmp } from '../src/bmp.js';

function gradient(width: number, height: number): Uint8Array {
  const px = new Uint8Array(width * height * 3);
  for (let y = 0; y < height; y++) {
    for (let x = 0; x < width; x++) {
      const o = (y * width + x) * 3;
      px[o] = (x * 5) % 256;
      px[o + 1] = (y * 9) % 256;
      px[o + 2] = (x + y) % 256;
    }
  }
  return px;
}

describe('encodeBmp', () => {
  test('writes a 24-bit header with padded rows', () => {
    const buf = encodeBmp({ width: 3, height: 2, pixels: gradient(3, 2) });
    expect(buf.toString('ascii', 0, 2)).toBe('BM');
    expect(buf.readUInt32LE(10)).toBe(54); // pixel offset
    expect(buf.readInt32LE(18)).toBe(3);
    expect(buf.readInt32LE(22)).toBe(2);
    expect(buf.readUInt16LE(28)).toBe(24);
    // 3 px * 3 bytes = 9, padded to 12 per row
    expect(buf.length).toBe(54 + 12 * 2);
    expect(buf.readUInt32LE(2)).toBe(buf.length);
  });

  test('stores rows bottom-up in BGR order', () => {
    const px = new Uint8Array([
      10, 20, 30, 40, 50, 60, // top row: two RGB pixels
      70, 80, 90, 100, 110, 120,
    ]);
    const buf = encodeBmp({ width: 2, height: 2, pixels: px });
    // first stored row is the bottom image row, first pixel (70,80,90) as BGR
    expect([buf[54], buf[55], buf[56]]).toEqual([90, 80, 70]);
  });

  test('rejects mismatched buffer sizes', () => {
    expect(() => encodeBmp({ width: 4, height: 4, pixels: new Uint8Array(5) })).toThrow(
      'does not match',
    );
  });
});

describe('decodeBmp', () => {
  test('round-trips encode output exactly', () => {
    for (const [w, h] of [[1, 1], [3, 2], [16, 9], [37, 11]] as const) {
      const pixels = gradient(w, h);
      const decoded = decodeBmp(encodeBmp({ width: w, height: h, pixels }));
      expect(decoded.width).toBe(w);
      expect(decoded.height).toBe(h);
      expect(Buffer.from(decoded.pixels).equals(Buffer.from(pixels))).toBe(true);
    }
  });

  test('rejects non-BMP data', () => {
    expect(() => decodeBmp(Buffer.from('PNG not really'))).toThrow('not a BMP');
  });

  test('rejects unsupported depth', () => {
    const buf = encodeBmp({ width: 2, height: 2, pixels: gradient(2, 2) });
    buf.writeUInt16LE(8, 28);
    expect(() => decodeBmp(buf)).toThrow('unsupported BMP variant');
  });

  test('rejects truncated pixel data', () => {
    const buf = encodeBmp({ width: 8, height: 8, pixels: gradient(8, 8) });
    expect(() => decodeBmp(buf.subarray(0, buf.length - 10))).toThrow('truncated');
  });
});
