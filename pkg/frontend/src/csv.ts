/**
 * Strict CSV handling for the experiment result schemas.
 *
 * Cell values are kept as raw strings: figures must plot exactly what
 * the CSV says, so no value is ever re-serialized through a float.
 */

export interface Table {
  header: string[];
  rows: string[][];
}

export class SchemaError extends Error {
  constructor(public column: string, message?: string) {
    super(message ?? `missing required column: ${column}`);
  }
}

/** Minimal CSV parse; the experiment writer never quotes or embeds commas. */
export function parseCsv(text: string): Table {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new SchemaError("<header>", "empty CSV file");
  }
  const header = lines[0].split(",");
  const rows = lines.slice(1).map((line) => line.split(","));
  for (const row of rows) {
    if (row.length !== header.length) {
      throw new SchemaError("<row>", `row has ${row.length} cells, header has ${header.length}`);
    }
  }
  return { header, rows };
}

/** Column accessor that names the offending column on mismatch. */
export function columnIndex(table: Table, name: string): number {
  const idx = table.header.indexOf(name);
  if (idx < 0) {
    throw new SchemaError(name);
  }
  return idx;
}

export interface Row {
  get(name: string): string;
}

export function rowReader(table: Table): (row: string[]) => Row {
  const cache = new Map<string, number>();
  return (row) => ({
    get(name: string): string {
      let idx = cache.get(name);
      if (idx === undefined) {
        idx = columnIndex(table, name);
        cache.set(name, idx);
      }
      return row[idx];
    },
  });
}
