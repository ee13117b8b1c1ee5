/** CLI argument parsing, separated from the entry point for testability. */

import { FigureKind, FigureSpec } from './figures.js';

export class UsageError extends Error {}

const KINDS: FigureKind[] = ['error_vs_samples', 'error_vs_quality', 'statistic_histograms'];

export const USAGE =
  'usage: plot <error_vs_samples|error_vs_quality|statistic_histograms>' +
  ' --in file.csv --out fig.svg [--budget B] [--algorithm NAME] [--title T]';

export function parseArgs(argv: string[]): FigureSpec {
  if (argv.length === 0) throw new UsageError('no figure kind given');
  const kind = argv[0] as FigureKind;
  if (!KINDS.includes(kind)) throw new UsageError(`unknown figure kind '${argv[0]}'`);
  const spec: Partial<FigureSpec> = { kind };
  for (let i = 1; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (value === undefined) throw new UsageError(`missing value for ${flag}`);
    switch (flag) {
      case '--in':
        spec.input = value;
        break;
      case '--out':
        spec.output = value;
        break;
      case '--budget': {
        const b = Number(value);
        if (!Number.isFinite(b)) throw new UsageError(`--budget needs a number, got '${value}'`);
        spec.budget = b;
        break;
      }
      case '--algorithm':
        spec.algorithm = value;
        break;
      case '--title':
        spec.title = value;
        break;
      default:
        throw new UsageError(`unknown flag '${flag}'`);
    }
  }
  if (!spec.input || !spec.output) throw new UsageError('--in and --out are required');
  return spec as FigureSpec;
}
