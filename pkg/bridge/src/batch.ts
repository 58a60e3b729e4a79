/**
 * Deterministic batch iteration over a dataset manifest.
 *
 * Rows are filtered by split, optionally shuffled with a seeded PRNG, and
 * decoded into float32 image batches in [0, 1]. Labels come from the
 * age_group column: the distinct groups present in the manifest, sorted,
 * define the class indices.
 */

import * as tf from '@tensorflow/tfjs';

import { ManifestRow, Split, readManifest } from './manifest.js';
import { readTensorFile } from './vgt.js';

export interface BatchOptions {
  batchSize: number;
  split?: Split;
  /** Shuffle with this seed; omit for manifest order. Same seed, same order. */
  seed?: number;
  /** Drop a trailing partial batch (default: keep it). */
  dropLast?: boolean;
}

export interface Batch {
  /** [batch, height, width, channels], float32, pixel values / 255. */
  images: tf.Tensor4D;
  /** [batch], int32 class indices into `classes`. */
  labels: tf.Tensor1D;
  rows: ManifestRow[];
}

/** mulberry32: tiny deterministic PRNG, enough for reproducible shuffles. */
function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

function seededShuffle<T>(items: T[], seed: number): T[] {
  const out = items.slice();
  const rand = mulberry32(seed);
  for (let i = out.length - 1; i > 0; i--) {
    const j = Math.floor(rand() * (i + 1));
    [out[i], out[j]] = [out[j], out[i]];
  }
  return out;
}

export class ManifestDataset {
  readonly rows: ManifestRow[];
  /** Distinct age groups present, sorted; index = class label. */
  readonly classes: string[];

  constructor(rows: ManifestRow[]) {
    this.rows = rows;
    this.classes = [...new Set(rows.map((r) => r.ageGroup).filter((g) => g !== ''))].sort();
  }

  splitRows(split?: Split): ManifestRow[] {
    return split === undefined ? this.rows : this.rows.filter((r) => r.split === split);
  }

  classOf(row: ManifestRow): number {
    const idx = this.classes.indexOf(row.ageGroup);
    if (idx < 0) {
      throw new Error(`row ${row.recordId}:${row.segmentIndex}: no age_group label`);
    }
    return idx;
  }

  /** Decode one row's tensor, wrapping failures with the row identity. */
  decodeRow(row: ManifestRow): ReturnType<typeof readTensorFile> {
    try {
      return readTensorFile(row.tensorPath);
    } catch (err) {
      const reason = err instanceof Error ? err.message : String(err);
      throw new Error(`row ${row.recordId}:${row.segmentIndex} (${row.tensorPath}): ${reason}`);
    }
  }

  *batches(options: BatchOptions): Generator<Batch> {
    const { batchSize, split, seed, dropLast = false } = options;
    if (!Number.isInteger(batchSize) || batchSize < 1) {
      throw new Error(`batchSize must be a positive integer, got ${batchSize}`);
    }
    let rows = this.splitRows(split);
    if (seed !== undefined) {
      rows = seededShuffle(rows, seed);
    }
    for (let start = 0; start < rows.length; start += batchSize) {
      const chunk = rows.slice(start, start + batchSize);
      if (chunk.length < batchSize && dropLast) break;
      yield this.materialize(chunk);
    }
  }

  materialize(rows: ManifestRow[]): Batch {
    if (rows.length === 0) {
      throw new Error('empty batch');
    }
    const first = this.decodeRow(rows[0]);
    const { width, height, channels } = first;
    const pixels = new Float32Array(rows.length * height * width * channels);
    const labels = new Int32Array(rows.length);
    const per = height * width * channels;
    rows.forEach((row, i) => {
      const t = i === 0 ? first : this.decodeRow(row);
      if (t.width !== width || t.height !== height || t.channels !== channels) {
        throw new Error(
          `row ${row.recordId}:${row.segmentIndex}: tensor is ` +
          `${t.width}x${t.height}x${t.channels}, batch is ${width}x${height}x${channels}`,
        );
      }
      for (let k = 0; k < per; k++) {
        pixels[i * per + k] = t.pixels[k] / 255;
      }
      labels[i] = this.classOf(row);
    });
    return {
      images: tf.tensor4d(pixels, [rows.length, height, width, channels]),
      labels: tf.tensor1d(labels, 'int32'),
      rows,
    };
  }
}

export function loadManifest(path: string): ManifestDataset {
  return new ManifestDataset(readManifest(path));
}
