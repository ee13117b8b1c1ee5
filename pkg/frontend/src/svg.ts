/** Deterministic SVG primitives: fixed canvas, fixed number formatting,
 * no timestamps or generated ids, so identical input renders identical bytes. */

export const WIDTH = 720;
export const HEIGHT = 480;
export const MARGIN = { top: 40, right: 160, bottom: 56, left: 72 };

export const SERIES_COLORS: Record<string, string> = {
  augmented: '#1f77b4',
  standard: '#ff7f0e',
  crs15: '#2ca02c',
  same: '#1f77b4',
  far: '#d62728',
};

export function colorFor(name: string, fallbackIndex: number): string {
  const palette = ['#1f77b4', '#ff7f0e', '#2ca02c', '#d62728', '#9467bd', '#8c564b'];
  return SERIES_COLORS[name] ?? palette[fallbackIndex % palette.length];
}

/** Fixed-precision coordinate format keeps output byte-stable. */
export function fmt(x: number): string {
  if (!Number.isFinite(x)) return '0';
  const s = x.toFixed(2);
  return s === '-0.00' ? '0.00' : s;
}

/** Tick-label format: compact but unambiguous. */
export function label(x: number): string {
  if (x !== 0 && (Math.abs(x) >= 1e5 || Math.abs(x) < 1e-3)) {
    return x.toExponential(1).replace('e+', 'e');
  }
  const s = String(Math.round(x * 1e6) / 1e6);
  return s;
}

export interface Scale {
  (x: number): number;
  ticks: number[];
}

export function linearScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  const span = hi - lo || 1;
  const scale = ((x: number) => outLo + ((x - lo) / span) * (outHi - outLo)) as Scale;
  const step = niceStep(span / 5);
  const first = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let t = first; t <= hi + 1e-9; t += step) ticks.push(Math.round(t * 1e9) / 1e9);
  scale.ticks = ticks;
  return scale;
}

export function log10Scale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  const a = Math.log10(lo);
  const b = Math.log10(hi);
  const span = b - a || 1;
  const scale = ((x: number) => outLo + ((Math.log10(x) - a) / span) * (outHi - outLo)) as Scale;
  const ticks: number[] = [];
  for (let e = Math.ceil(a - 1e-9); e <= b + 1e-9; e++) ticks.push(10 ** e);
  scale.ticks = ticks;
  return scale;
}

function niceStep(raw: number): number {
  const mag = 10 ** Math.floor(Math.log10(raw || 1));
  const unit = raw / mag;
  if (unit <= 1) return mag;
  if (unit <= 2) return 2 * mag;
  if (unit <= 5) return 5 * mag;
  return 10 * mag;
}

export interface Frame {
  parts: string[];
  x: Scale;
  y: Scale;
}

/** Open an SVG document with axes, tick marks, labels, and a title. */
export function openFigure(
  title: string,
  xLabel: string,
  yLabel: string,
  x: Scale,
  y: Scale,
): Frame {
  const left = MARGIN.left;
  const right = WIDTH - MARGIN.right;
  const top = MARGIN.top;
  const bottom = HEIGHT - MARGIN.bottom;
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  parts.push(
    `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="16">${escapeXml(title)}</text>`,
  );
  parts.push(
    `<line x1="${left}" y1="${bottom}" x2="${right}" y2="${bottom}" stroke="black"/>`,
    `<line x1="${left}" y1="${top}" x2="${left}" y2="${bottom}" stroke="black"/>`,
  );
  for (const t of x.ticks) {
    const px = x(t);
    parts.push(
      `<line x1="${fmt(px)}" y1="${bottom}" x2="${fmt(px)}" y2="${bottom + 5}" stroke="black"/>`,
      `<text x="${fmt(px)}" y="${bottom + 20}" text-anchor="middle" font-size="11">${label(t)}</text>`,
    );
  }
  for (const t of y.ticks) {
    const py = y(t);
    parts.push(
      `<line x1="${left - 5}" y1="${fmt(py)}" x2="${left}" y2="${fmt(py)}" stroke="black"/>`,
      `<text x="${left - 8}" y="${fmt(py + 4)}" text-anchor="end" font-size="11">${label(t)}</text>`,
    );
  }
  parts.push(
    `<text x="${(left + right) / 2}" y="${HEIGHT - 12}" text-anchor="middle" font-size="13">${escapeXml(xLabel)}</text>`,
    `<text transform="rotate(-90 20 ${(top + bottom) / 2})" x="20" y="${(top + bottom) / 2}" text-anchor="middle" font-size="13">${escapeXml(yLabel)}</text>`,
  );
  return { parts, x, y };
}

export function legend(frame: Frame, entries: Array<{ name: string; color: string }>): void {
  const x0 = WIDTH - MARGIN.right + 16;
  entries.forEach(({ name, color }, i) => {
    const y0 = MARGIN.top + 16 + i * 20;
    frame.parts.push(
      `<rect x="${x0}" y="${y0 - 9}" width="12" height="12" fill="${color}"/>`,
      `<text x="${x0 + 18}" y="${y0 + 2}" font-size="12">${escapeXml(name)}</text>`,
    );
  });
}

export function closeFigure(frame: Frame): string {
  return frame.parts.join('\n') + '\n</svg>\n';
}

export function escapeXml(s: string): string {
  return s
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}
