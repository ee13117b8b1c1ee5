/** Shared-bin histograms for overlaying two samples of a statistic. */

export interface Bin {
  start: number;
  end: number;
  count: number;
}

/** Bin `values` over [lo, hi) into nBins equal bins (last bin closed). */
export function binValues(values: number[], lo: number, hi: number, nBins: number): Bin[] {
  const width = (hi - lo || 1) / nBins;
  const bins: Bin[] = Array.from({ length: nBins }, (_, i) => ({
    start: lo + i * width,
    end: lo + (i + 1) * width,
    count: 0,
  }));
  for (const v of values) {
    const idx = Math.min(Math.floor((v - lo) / width), nBins - 1);
    if (idx >= 0) bins[idx].count++;
  }
  return bins;
}

/** Common [lo, hi] covering both samples, padded so edges are visible. */
export function sharedRange(a: number[], b: number[]): [number, number] {
  const all = a.concat(b);
  let lo = Math.min(...all);
  let hi = Math.max(...all);
  if (lo === hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  const pad = (hi - lo) * 0.02;
  return [lo - pad, hi + pad];
}
