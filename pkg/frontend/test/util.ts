import { inflateSync } from "node:zlib";

import { heatColor } from "../src/plots.js";
import type { RGB } from "../src/raster.js";

export interface PngChunk {
  type: string;
  data: Buffer;
}

export interface DecodedPng {
  width: number;
  height: number;
  pixels: Uint8Array;
  chunks: PngChunk[];
}

const SIGNATURE = [0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a];

export function decodePng(buf: Buffer): DecodedPng {
  for (let i = 0; i < 8; i++) {
    if (buf[i] !== SIGNATURE[i]) throw new Error("bad signature");
  }
  const chunks: PngChunk[] = [];
  let off = 8;
  while (off < buf.length) {
    const len = buf.readUInt32BE(off);
    const type = buf.toString("latin1", off + 4, off + 8);
    chunks.push({ type, data: buf.subarray(off + 8, off + 8 + len) });
    off += 12 + len;
  }
  const ihdr = chunks.find((c) => c.type === "IHDR");
  if (!ihdr) throw new Error("no IHDR");
  const width = ihdr.data.readUInt32BE(0);
  const height = ihdr.data.readUInt32BE(4);
  if (ihdr.data[8] !== 8 || ihdr.data[9] !== 2) throw new Error("expected 8-bit RGB");
  const idat = Buffer.concat(chunks.filter((c) => c.type === "IDAT").map((c) => c.data));
  const raw = inflateSync(idat);
  const stride = width * 3;
  const pixels = new Uint8Array(width * height * 3);
  for (let y = 0; y < height; y++) {
    if (raw[y * (stride + 1)] !== 0) throw new Error(`scanline ${y} uses filter ${raw[y * (stride + 1)]}`);
    pixels.set(raw.subarray(y * (stride + 1) + 1, (y + 1) * (stride + 1)), y * stride);
  }
  return { width, height, pixels, chunks };
}

export function pixelAt(img: DecodedPng, x: number, y: number): RGB {
  const i = (y * img.width + x) * 3;
  return [img.pixels[i], img.pixels[i + 1], img.pixels[i + 2]];
}

export function hasColor(img: DecodedPng, color: RGB): boolean {
  for (let i = 0; i < img.pixels.length; i += 3) {
    if (img.pixels[i] === color[0] && img.pixels[i + 1] === color[1] && img.pixels[i + 2] === color[2]) {
      return true;
    }
  }
  return false;
}

export function softwareTag(img: DecodedPng): string | undefined {
  const text = img.chunks.find((c) => c.type === "tEXt");
  if (!text) return undefined;
  const zero = text.data.indexOf(0);
  if (text.data.toString("latin1", 0, zero) !== "Software") return undefined;
  return text.data.toString("latin1", zero + 1);
}

const RAMP: RGB[] = Array.from({ length: 257 }, (_, i) => heatColor(i / 256));

/** Nearest colormap position for a pixel, for reading values back off a heatmap. */
export function nearestT(color: RGB): number {
  let best = 0;
  let bestDist = Infinity;
  RAMP.forEach((c, i) => {
    const d = (c[0] - color[0]) ** 2 + (c[1] - color[1]) ** 2 + (c[2] - color[2]) ** 2;
    if (d < bestDist) {
      bestDist = d;
      best = i / 256;
    }
  });
  return best;
}
