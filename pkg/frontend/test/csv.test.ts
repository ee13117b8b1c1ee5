import { describe, expect, it } from 'vitest';
import { parseCsv, requireColumns, SchemaMismatch, toNumber } from '../src/csv.js';

describe('parseCsv', () => {
  it('parses a header and rows with CRLF endings', () => {
    const table = parseCsv('a,b\r\n1,2\r\n3,4\r\n');
    expect(table.columns).toEqual(['a', 'b']);
    expect(table.rows).toEqual([
      { a: '1', b: '2' },
      { a: '3', b: '4' },
    ]);
  });

  it('parses LF endings and a missing trailing newline', () => {
    const table = parseCsv('a,b\n1,2');
    expect(table.rows).toEqual([{ a: '1', b: '2' }]);
  });

  it('handles quoted fields with commas, quotes and newlines', () => {
    const table = parseCsv('name,note\r\n"x,y","he said ""hi""\nbye"\r\n');
    expect(table.rows[0]).toEqual({ name: 'x,y', note: 'he said "hi"\nbye' });
  });

  it('rejects ragged rows', () => {
    expect(() => parseCsv('a,b\n1\n')).toThrow(SchemaMismatch);
  });

  it('rejects empty input', () => {
    expect(() => parseCsv('')).toThrow(SchemaMismatch);
  });
});

describe('requireColumns', () => {
  it('rejects a header-only table', () => {
    const table = parseCsv('a,b\n');
    expect(() => requireColumns(table, ['a'], 'k')).toThrow(SchemaMismatch);
  });

  it('rejects missing columns', () => {
    const table = parseCsv('a,b\n1,2\n');
    expect(() => requireColumns(table, ['c'], 'k')).toThrow(/needs column 'c'/);
  });
});

describe('toNumber', () => {
  it('accepts the harness infinity spellings', () => {
    expect(toNumber('inf', 'x')).toBe(Infinity);
    expect(toNumber('-inf', 'x')).toBe(-Infinity);
    expect(toNumber('2.5', 'x')).toBe(2.5);
  });

  it('rejects garbage', () => {
    expect(() => toNumber('abc', 'x')).toThrow(SchemaMismatch);
  });
});
