#!/usr/bin/env node
/** Figure renderer for harness CSVs.
 *
 * Usage: plot <kind> --in file.csv --out fig.svg [--budget B] [--algorithm NAME]
 * Kinds: error_vs_samples | error_vs_quality | statistic_histograms.
 * Exit codes: 0 ok, 2 bad arguments or schema mismatch, 1 I/O failure.
 */

import { readFileSync, writeFileSync } from 'fs';
import { parseArgs, UsageError, USAGE } from './args.js';
import { parseCsv, SchemaMismatch } from './csv.js';
import { render } from './figures.js';

function main(): void {
  let spec;
  try {
    spec = parseArgs(process.argv.slice(2));
  } catch (err) {
    if (err instanceof UsageError) {
      console.error(`error: ${err.message}`);
      console.error(USAGE);
      process.exit(2);
    }
    throw err;
  }
  let text: string;
  try {
    text = readFileSync(spec.input, 'utf8');
  } catch (err) {
    console.error(`error: cannot read ${spec.input}: ${(err as Error).message}`);
    process.exit(1);
  }
  let svg: string;
  try {
    svg = render(spec, parseCsv(text));
  } catch (err) {
    if (err instanceof SchemaMismatch) {
      console.error(`error: ${err.message}`);
      process.exit(2);
    }
    throw err;
  }
  try {
    writeFileSync(spec.output, svg);
  } catch (err) {
    console.error(`error: cannot write ${spec.output}: ${(err as Error).message}`);
    process.exit(1);
  }
}

main();
