/** The three figure kinds rendered from harness CSVs.
 *
 * error_vs_samples      summary CSV: separation error per budget, log-x,
 *                       one series per algorithm.
 * error_vs_quality      beta-sweep summary CSV: error as a function of the
 *                       hint's TV distance from the sampled distribution.
 * statistic_histograms  trials CSV filtered to one (budget, algorithm):
 *                       overlaid translucent histograms of the statistic in
 *                       the p = q and far cases.
 */

import { requireColumns, SchemaMismatch, Table, toNumber } from './csv.js';
import { binValues, sharedRange } from './histogram.js';
import {
  closeFigure,
  colorFor,
  fmt,
  HEIGHT,
  legend,
  linearScale,
  log10Scale,
  MARGIN,
  openFigure,
  WIDTH,
} from './svg.js';

export type FigureKind = 'error_vs_samples' | 'error_vs_quality' | 'statistic_histograms';

export interface FigureSpec {
  kind: FigureKind;
  input: string;
  output: string;
  budget?: number;
  algorithm?: string;
  title?: string;
}

const PLOT = {
  left: MARGIN.left,
  right: WIDTH - MARGIN.right,
  top: MARGIN.top,
  bottom: HEIGHT - MARGIN.bottom,
};

function seriesNames(rows: Record<string, string>[]): string[] {
  const names: string[] = [];
  for (const row of rows) {
    if (!names.includes(row.algorithm)) names.push(row.algorithm);
  }
  return names;
}

function errorChart(
  table: Table,
  xColumn: string,
  logX: boolean,
  title: string,
  xLabel: string,
): string {
  const xs = table.rows.map((r) => toNumber(r[xColumn], xColumn));
  const lo = Math.min(...xs);
  const hi = Math.max(...xs);
  const x = logX
    ? log10Scale(lo, hi, PLOT.left, PLOT.right)
    : linearScale(Math.min(0, lo), hi, PLOT.left, PLOT.right);
  const y = linearScale(0, 0.55, PLOT.bottom, PLOT.top);
  const frame = openFigure(title, xLabel, 'separation error', x, y);
  const names = seriesNames(table.rows);
  names.forEach((name, i) => {
    const rows = table.rows.filter((r) => r.algorithm === name);
    const points = rows
      .map((r) => ({
        x: x(toNumber(r[xColumn], xColumn)),
        y: y(toNumber(r.error, 'error')),
      }))
      .sort((a, b) => a.x - b.x);
    const color = colorFor(name, i);
    const path = points.map((p) => `${fmt(p.x)},${fmt(p.y)}`).join(' ');
    frame.parts.push(`<polyline points="${path}" fill="none" stroke="${color}" stroke-width="2"/>`);
    for (const p of points) {
      frame.parts.push(`<circle cx="${fmt(p.x)}" cy="${fmt(p.y)}" r="3.5" fill="${color}"/>`);
    }
  });
  legend(frame, names.map((name, i) => ({ name, color: colorFor(name, i) })));
  return closeFigure(frame);
}

export function renderErrorVsSamples(table: Table, title?: string): string {
  requireColumns(table, ['budget', 'algorithm', 'error'], 'error_vs_samples');
  return errorChart(
    table,
    'budget',
    true,
    title ?? 'Separation error vs sample budget',
    'samples per side (log scale)',
  );
}

export function renderErrorVsQuality(table: Table, title?: string): string {
  requireColumns(table, ['tv', 'algorithm', 'error'], 'error_vs_quality');
  return errorChart(
    table,
    'tv',
    false,
    title ?? 'Separation error vs prediction quality',
    'tv(p, hint)',
  );
}

export function renderStatisticHistograms(
  table: Table,
  budget?: number,
  algorithm?: string,
  title?: string,
): string {
  requireColumns(
    table,
    ['budget', 'trial', 'case', 'algorithm', 'statistic', 'verdict'],
    'statistic_histograms',
  );
  const budgets = [...new Set(table.rows.map((r) => toNumber(r.budget, 'budget')))];
  const chosenBudget = budget ?? Math.max(...budgets);
  const algorithms = seriesNames(table.rows);
  const chosenAlg = algorithm ?? (algorithms.includes('augmented') ? 'augmented' : algorithms[0]);
  const rows = table.rows.filter(
    (r) =>
      toNumber(r.budget, 'budget') === chosenBudget &&
      r.algorithm === chosenAlg &&
      r.verdict !== 'inaccurate',
  );
  if (rows.length === 0) {
    throw new SchemaMismatch(
      `no rows for budget=${chosenBudget} algorithm=${chosenAlg} (budgets: ${budgets.join(', ')}; algorithms: ${algorithms.join(', ')})`,
    );
  }
  const same = rows.filter((r) => r.case === 'same').map((r) => toNumber(r.statistic, 'statistic'));
  const far = rows.filter((r) => r.case === 'far').map((r) => toNumber(r.statistic, 'statistic'));
  if (same.length === 0 || far.length === 0) {
    throw new SchemaMismatch(`need both 'same' and 'far' cases for the histogram overlay`);
  }

  const [lo, hi] = sharedRange(same, far);
  const nBins = 30;
  const sameBins = binValues(same, lo, hi, nBins);
  const farBins = binValues(far, lo, hi, nBins);
  const peak = Math.max(...sameBins.map((b) => b.count), ...farBins.map((b) => b.count));

  const x = linearScale(lo, hi, PLOT.left, PLOT.right);
  const y = linearScale(0, peak * 1.05, PLOT.bottom, PLOT.top);
  const frame = openFigure(
    title ?? `Statistic distribution (${chosenAlg}, budget ${chosenBudget})`,
    'statistic',
    'trials',
    x,
    y,
  );
  const draw = (bins: typeof sameBins, color: string) => {
    for (const b of bins) {
      if (b.count === 0) continue;
      const x0 = x(b.start);
      const x1 = x(b.end);
      const y1 = y(b.count);
      frame.parts.push(
        `<rect x="${fmt(x0)}" y="${fmt(y1)}" width="${fmt(x1 - x0)}" height="${fmt(PLOT.bottom - y1)}" fill="${color}" fill-opacity="0.5"/>`,
      );
    }
  };
  draw(sameBins, colorFor('same', 0));
  draw(farBins, colorFor('far', 1));
  legend(frame, [
    { name: 'p = q case', color: colorFor('same', 0) },
    { name: 'far case', color: colorFor('far', 1) },
  ]);
  return closeFigure(frame);
}

export function render(spec: FigureSpec, table: Table): string {
  switch (spec.kind) {
    case 'error_vs_samples':
      return renderErrorVsSamples(table, spec.title);
    case 'error_vs_quality':
      return renderErrorVsQuality(table, spec.title);
    case 'statistic_histograms':
      return renderStatisticHistograms(table, spec.budget, spec.algorithm, spec.title);
  }
}
