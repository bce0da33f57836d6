// Minimal 24-bit BMP codec. BMP is the one raster format the guidance engine
// ingests that needs no compression, so fixture images can be written (and
// read back) with nothing but header arithmetic.

const FILE_HEADER_SIZE = 14;
const INFO_HEADER_SIZE = 40;
const PIXEL_OFFSET = FILE_HEADER_SIZE + INFO_HEADER_SIZE;

export interface RasterRgb {
  width: number;
  height: number;
  pixels: Uint8Array; // row-major from the top, RGB triplets
}

function rowStride(width: number): number {
  return Math.ceil((width * 3) / 4) * 4;
}

export function encodeBmp(image: RasterRgb): Buffer {
  const { width, height, pixels } = image;
  if (width < 1 || height < 1) {
    throw new Error('bmp needs positive dimensions');
  }
  if (pixels.length !== width * height * 3) {
    throw new Error('pixel buffer size does not match dimensions');
  }
  const stride = rowStride(width);
  const buf = Buffer.alloc(PIXEL_OFFSET + stride * height);

  buf.write('BM', 0, 'ascii');
  buf.writeUInt32LE(buf.length, 2);
  buf.writeUInt32LE(PIXEL_OFFSET, 10);
  buf.writeUInt32LE(INFO_HEADER_SIZE, 14);
  buf.writeInt32LE(width, 18);
  buf.writeInt32LE(height, 22); // positive height = bottom-up rows
  buf.writeUInt16LE(1, 26); // planes
  buf.writeUInt16LE(24, 28); // bits per pixel
  buf.writeUInt32LE(stride * height, 34);
  buf.writeInt32LE(2835, 38); // 72 dpi, for viewers that care
  buf.writeInt32LE(2835, 42);

  for (let y = 0; y < height; y++) {
    let src = y * width * 3;
    let dst = PIXEL_OFFSET + (height - 1 - y) * stride;
    for (let x = 0; x < width; x++) {
      buf[dst] = pixels[src + 2]; // BGR on disk
      buf[dst + 1] = pixels[src + 1];
      buf[dst + 2] = pixels[src];
      src += 3;
      dst += 3;
    }
  }
  return buf;
}

export function decodeBmp(data: Buffer): RasterRgb {
  if (data.length < PIXEL_OFFSET || data.toString('ascii', 0, 2) !== 'BM') {
    throw new Error('not a BMP file');
  }
  const offset = data.readUInt32LE(10);
  const width = data.readInt32LE(18);
  const rawHeight = data.readInt32LE(22);
  const bpp = data.readUInt16LE(28);
  const compression = data.readUInt32LE(30);
  if (bpp !== 24 || compression !== 0) {
    throw new Error(`unsupported BMP variant (${bpp} bpp, compression ${compression})`);
  }
  const height = Math.abs(rawHeight);
  const bottomUp = rawHeight > 0;
  const stride = rowStride(width);
  if (data.length < offset + stride * height) {
    throw new Error('truncated BMP pixel data');
  }
  const pixels = new Uint8Array(width * height * 3);
  for (let y = 0; y < height; y++) {
    let src = offset + (bottomUp ? height - 1 - y : y) * stride;
    let dst = y * width * 3;
    for (let x = 0; x < width; x++) {
      pixels[dst] = data[src + 2];
      pixels[dst + 1] = data[src + 1];
      pixels[dst + 2] = data[src];
      src += 3;
      dst += 3;
    }
  }
  return { width, height, pixels };
}
