/** Minimal RFC-4180 CSV reader: header row, quoted fields, CRLF or LF. */

export class SchemaMismatch extends Error {}

export interface Table {
  columns: string[];
  rows: Record<string, string>[];
}

/** Parse CSV text into header columns and string-valued row records. */
export function parseCsv(text: string): Table {
  const records: string[][] = [];
  let field = '';
  let record: string[] = [];
  let inQuotes = false;
  let i = 0;
  const pushField = () => {
    record.push(field);
    field = '';
  };
  const pushRecord = () => {
    pushField();
    records.push(record);
    record = [];
  };
  while (i < text.length) {
    const c = text[i];
    if (inQuotes) {
      if (c === '"') {
        if (text[i + 1] === '"') {
          field += '"';
          i += 2;
          continue;
        }
        inQuotes = false;
        i++;
        continue;
      }
      field += c;
      i++;
      continue;
    }
    if (c === '"') {
      inQuotes = true;
      i++;
    } else if (c === ',') {
      pushField();
      i++;
    } else if (c === '\r' && text[i + 1] === '\n') {
      pushRecord();
      i += 2;
    } else if (c === '\n') {
      pushRecord();
      i++;
    } else {
      field += c;
      i++;
    }
  }
  if (field.length > 0 || record.length > 0) pushRecord();

  if (records.length === 0) throw new SchemaMismatch('empty CSV: no header row');
  const columns = records[0];
  const rows = records.slice(1).map((fields, idx) => {
    if (fields.length !== columns.length) {
      throw new SchemaMismatch(
        `row ${idx + 1} has ${fields.length} fields, expected ${columns.length}`,
      );
    }
    const row: Record<string, string> = {};
    columns.forEach((name, j) => (row[name] = fields[j]));
    return row;
  });
  return { columns, rows };
}

/** Assert the table carries every required column and at least one row. */
export function requireColumns(table: Table, required: string[], kind: string): void {
  for (const name of required) {
    if (!table.columns.includes(name)) {
      throw new SchemaMismatch(`figure kind ${kind} needs column '${name}'; CSV has [${table.columns.join(', ')}]`);
    }
  }
  if (table.rows.length === 0) {
    throw new SchemaMismatch(`CSV has a header but no data rows`);
  }
}

export function toNumber(value: string, column: string): number {
  const x = Number(value);
  if (!Number.isFinite(x) && value !== 'inf' && value !== '-inf') {
    throw new SchemaMismatch(`non-numeric value '${value}' in column '${column}'`);
  }
  return value === 'inf' ? Infinity : value === '-inf' ? -Infinity : x;
}
