import { GLYPH_HEIGHT, GLYPH_WIDTH, glyphFor } from "./font.js";

export type RGB = readonly [number, number, number];

export const WHITE: RGB = [255, 255, 255];
export const BLACK: RGB = [30, 30, 30];

/** Plain RGB pixel buffer with just enough drawing ops for the plots. */
export class Raster {
  readonly width: number;
  readonly height: number;
  readonly data: Uint8Array;

  constructor(width: number, height: number, background: RGB = WHITE) {
    this.width = width;
    this.height = height;
    this.data = new Uint8Array(width * height * 3);
    this.fillRect(0, 0, width, height, background);
  }

  set(x: number, y: number, color: RGB): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const i = (y * this.width + x) * 3;
    this.data[i] = color[0];
    this.data[i + 1] = color[1];
    this.data[i + 2] = color[2];
  }

  get(x: number, y: number): RGB {
    const i = (y * this.width + x) * 3;
    return [this.data[i], this.data[i + 1], this.data[i + 2]];
  }

  fillRect(x: number, y: number, w: number, h: number, color: RGB): void {
    const x0 = Math.max(0, Math.floor(x));
    const y0 = Math.max(0, Math.floor(y));
    const x1 = Math.min(this.width, Math.ceil(x + w));
    const y1 = Math.min(this.height, Math.ceil(y + h));
    for (let yy = y0; yy < y1; yy++) {
      for (let xx = x0; xx < x1; xx++) {
        this.set(xx, yy, color);
      }
    }
  }

  hline(y: number, x0: number, x1: number, color: RGB): void {
    const [a, b] = x0 <= x1 ? [x0, x1] : [x1, x0];
    for (let x = Math.round(a); x <= Math.round(b); x++) this.set(x, Math.round(y), color);
  }

  vline(x: number, y0: number, y1: number, color: RGB): void {
    const [a, b] = y0 <= y1 ? [y0, y1] : [y1, y0];
    for (let y = Math.round(a); y <= Math.round(b); y++) this.set(Math.round(x), y, color);
  }

  dashedHline(y: number, x0: number, x1: number, color: RGB, on = 5, off = 4): void {
    const [a, b] = x0 <= x1 ? [x0, x1] : [x1, x0];
    const period = on + off;
    for (let x = Math.round(a); x <= Math.round(b); x++) {
      if ((x - Math.round(a)) % period < on) this.set(x, Math.round(y), color);
    }
  }

  line(x0: number, y0: number, x1: number, y1: number, color: RGB): void {
    let ax = Math.round(x0);
    let ay = Math.round(y0);
    const bx = Math.round(x1);
    const by = Math.round(y1);
    const dx = Math.abs(bx - ax);
    const dy = -Math.abs(by - ay);
    const sx = ax < bx ? 1 : -1;
    const sy = ay < by ? 1 : -1;
    let err = dx + dy;
    for (;;) {
      this.set(ax, ay, color);
      if (ax === bx && ay === by) break;
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        ax += sx;
      }
      if (e2 <= dx) {
        err += dx;
        ay += sy;
      }
    }
  }

  disc(cx: number, cy: number, r: number, color: RGB): void {
    const x0 = Math.round(cx);
    const y0 = Math.round(cy);
    for (let dy = -r; dy <= r; dy++) {
      for (let dx = -r; dx <= r; dx++) {
        if (dx * dx + dy * dy <= r * r) this.set(x0 + dx, y0 + dy, color);
      }
    }
  }

  text(x: number, y: number, s: string, color: RGB, scale = 1): void {
    let cursor = Math.round(x);
    const top = Math.round(y);
    for (const ch of s) {
      const glyph = glyphFor(ch);
      for (let row = 0; row < GLYPH_HEIGHT; row++) {
        const bits = glyph[row];
        for (let col = 0; col < GLYPH_WIDTH; col++) {
          if (bits & (1 << (GLYPH_WIDTH - 1 - col))) {
            this.fillRect(cursor + col * scale, top + row * scale, scale, scale, color);
          }
        }
      }
      cursor += (GLYPH_WIDTH + 1) * scale;
    }
  }

  textWidth(s: string, scale = 1): number {
    if (s.length === 0) return 0;
    return (s.length * (GLYPH_WIDTH + 1) - 1) * scale;
  }
}
