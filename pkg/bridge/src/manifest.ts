/**
 * Dataset manifest CSV: one row per segment tensor, with labels and split
 * assignment. Header and column order are fixed by the pipeline writer.
 */

import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';

export const MANIFEST_FIELDS = [
  'record_id',
  'subject_id',
  'segment_index',
  'tensor_path',
  'age',
  'age_group',
  'sbp',
  'dbp',
  'split',
] as const;

export type Split = 'train' | 'val' | 'test';

export interface ManifestRow {
  recordId: string;
  subjectId: string;
  segmentIndex: number;
  /** Resolved relative to the manifest's directory. */
  tensorPath: string;
  age: number | null;
  ageGroup: string;
  sbp: number | null;
  dbp: number | null;
  split: Split;
}

function parseOptionalNumber(text: string, where: string): number | null {
  if (text === '') return null;
  const value = Number(text);
  if (!Number.isFinite(value)) {
    throw new Error(`${where}: not a number: ${JSON.stringify(text)}`);
  }
  return value;
}

export function readManifest(path: string): ManifestRow[] {
  const text = readFileSync(path, 'utf-8');
  const lines = text.split('\n');
  if (lines[0]?.trim() !== MANIFEST_FIELDS.join(',')) {
    throw new Error(`${path}: unexpected manifest header: ${lines[0]}`);
  }
  const base = dirname(path);
  const rows: ManifestRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const line = lines[i];
    if (line === '' || line === '\r') continue;
    if (line.includes('"')) {
      // the pipeline writer never quotes; a quote means a foreign file
      throw new Error(`${path}:${i + 1}: quoted fields are not supported`);
    }
    const cols = line.replace(/\r$/, '').split(',');
    if (cols.length !== MANIFEST_FIELDS.length) {
      throw new Error(`${path}:${i + 1}: expected ${MANIFEST_FIELDS.length} columns, got ${cols.length}`);
    }
    const where = `${path}:${i + 1}`;
    const split = cols[8];
    if (split !== 'train' && split !== 'val' && split !== 'test') {
      throw new Error(`${where}: unknown split ${JSON.stringify(split)}`);
    }
    rows.push({
      recordId: cols[0],
      subjectId: cols[1],
      segmentIndex: Number(cols[2]),
      tensorPath: join(base, cols[3]),
      age: parseOptionalNumber(cols[4], where),
      ageGroup: cols[5],
      sbp: parseOptionalNumber(cols[6], where),
      dbp: parseOptionalNumber(cols[7], where),
      split,
    });
  }
  return rows;
}
