/**
 * Test fixtures: drive the pipeline CLI to produce real datasets, and ask
 * the pipeline-side Python reader for its view of tensor files so the
 * bridge decoder can be compared against it byte for byte.
 */

import { execFileSync } from 'node:child_process';
import { mkdtempSync, readFileSync, writeFileSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join } from 'node:path';

export interface ToyDatasetOptions {
  records?: number;
  durationS?: number;
  rate?: number;
  windowLen?: number;
  bpmClasses?: string;
  seed?: number;
}

export function makeTempDir(prefix: string): string {
  return mkdtempSync(join(tmpdir(), prefix));
}

/** Synthesize records and build a window-mode dataset; returns the manifest path. */
export function buildToyDataset(dir: string, options: ToyDatasetOptions = {}): string {
  const {
    records = 16,
    durationS = 6,
    rate = 50,
    windowLen = 64,
    bpmClasses = '60,150',
    seed = 0,
  } = options;
  const recordsCsv = join(dir, 'records.csv');
  const labelsCsv = join(dir, 'labels.csv');
  const outDir = join(dir, 'dataset');
  execFileSync('pulsevg', [
    'synth',
    '--records', String(records),
    '--duration', String(durationS),
    '--rate', String(rate),
    '--bpm-classes', bpmClasses,
    '--seed', String(seed),
    '--out', recordsCsv,
    '--labels-out', labelsCsv,
  ]);
  execFileSync('pulsevg', [
    'dataset',
    '--records', recordsCsv,
    '--rate', String(rate),
    '--mode', 'window',
    '--window-len', String(windowLen),
    '--labels', labelsCsv,
    '--seed', String(seed),
    '--out', outDir,
  ]);
  return join(outDir, 'manifest.csv');
}

export interface PipelineTensorView {
  width: number;
  height: number;
  channels: number;
  sha256: string;
}

/** Decode every manifest tensor with the pipeline-side reader, in one process. */
export function pipelineDecodeAll(manifestPath: string): Record<string, PipelineTensorView> {
  const script = `
import csv, hashlib, json, os, sys
from pulsevg import read_tensor

manifest = sys.argv[1]
base = os.path.dirname(manifest)
out = {}
with open(manifest, newline="") as f:
    for row in csv.DictReader(f):
        img = read_tensor(os.path.join(base, row["tensor_path"]))
        out[row["tensor_path"]] = {
            "width": img.width,
            "height": img.height,
            "channels": img.channels,
            "sha256": hashlib.sha256(img.pixels.tobytes()).hexdigest(),
        }
print(json.dumps(out))
`;
  const stdout = execFileSync('python3', ['-c', script, manifestPath], {
    encoding: 'utf-8',
    maxBuffer: 64 * 1024 * 1024,
  });
  return JSON.parse(stdout);
}

/** Run the pipeline CLI metrics command on value files; returns its JSON. */
export function pipelineMetrics(dir: string, pred: number[], truth: number[]): unknown {
  const predPath = join(dir, 'pred.csv');
  const truthPath = join(dir, 'truth.csv');
  const outPath = join(dir, 'metrics.json');
  writeFileSync(predPath, pred.map((v) => String(v)).join('\n') + '\n');
  writeFileSync(truthPath, truth.map((v) => String(v)).join('\n') + '\n');
  execFileSync('pulsevg', [
    'metrics', '--pred', predPath, '--truth', truthPath, '--out', outPath,
  ]);
  return JSON.parse(readFileSync(outPath, 'utf-8'));
}
