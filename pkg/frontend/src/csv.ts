// Minimal RFC-4180 CSV parsing for pool uploads: quoted fields, embedded
// commas/newlines, doubled quotes. Keeps the frontend dependency-free.

export function parseCsv(text: string): string[][] {
  const rows: string[][] = [];
  let row: string[] = [];
  let field = '';
  let inQuotes = false;
  let i = 0;
  const pushField = () => {
    row.push(field);
    field = '';
  };
  const pushRow = () => {
    pushField();
    rows.push(row);
    row = [];
  };
  while (i < text.length) {
    const ch = text[i]!;
    if (inQuotes) {
      if (ch === '"') {
        if (text[i + 1] === '"') {
          field += '"';
          i += 2;
          continue;
        }
        inQuotes = false;
        i += 1;
        continue;
      }
      field += ch;
      i += 1;
      continue;
    }
    if (ch === '"' && field === '') {
      inQuotes = true;
      i += 1;
    } else if (ch === ',') {
      pushField();
      i += 1;
    } else if (ch === '\r' && text[i + 1] === '\n') {
      pushRow();
      i += 2;
    } else if (ch === '\n') {
      pushRow();
      i += 1;
    } else {
      field += ch;
      i += 1;
    }
  }
  if (field !== '' || row.length > 0) pushRow();
  return rows;
}

export interface PoolRow {
  id: string;
  cells: Record<string, string>;
}

/** Parse a pool CSV (id column + attribute columns) into rows of raw cells. */
export function parsePoolCsv(text: string): { header: string[]; rows: PoolRow[] } {
  const table = parseCsv(text).filter((r) => !(r.length === 1 && r[0] === ''));
  if (table.length === 0) throw new Error('empty CSV');
  const header = table[0]!.map((h) => h.trim());
  const idIndex = header.indexOf('id');
  if (idIndex < 0) throw new Error("pool CSV needs an 'id' column");
  const rows: PoolRow[] = [];
  for (const raw of table.slice(1)) {
    if (raw.length !== header.length) {
      throw new Error(`row ${rows.length + 2}: expected ${header.length} fields, got ${raw.length}`);
    }
    const cells: Record<string, string> = {};
    header.forEach((name, col) => {
      if (col !== idIndex) cells[name] = raw[col]!.trim();
    });
    const id = raw[idIndex]!.trim();
    if (id === '') throw new Error(`row ${rows.length + 2}: empty id`);
    rows.push({ id, cells });
  }
  return { header, rows };
}
