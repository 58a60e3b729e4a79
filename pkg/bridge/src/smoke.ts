/**
 * Transfer-learning smoke test: train the toy classifier on a synthetic
 * two-class heart-rate dataset produced by the pipeline CLI and report
 * held-out accuracy. This checks that tensors, labels, splits, and the
 * training loop plumb through end to end; it makes no claims about
 * full-scale model quality.
 */

import { writeFileSync } from 'node:fs';

import * as tf from '@tensorflow/tfjs';

import { Batch, ManifestDataset, loadManifest } from './batch.js';
import { accuracyOf, buildClassifier, trainWithPlateauSchedule } from './model.js';

export interface SmokeOptions {
  epochs?: number;
  baseLr?: number;
  batchSize?: number;
  seed?: number;
}

export interface SmokeReport {
  accuracy: number;
  epochsRun: number;
  classes: string[];
  trainCount: number;
  valCount: number;
  testCount: number;
}

function materializeSplit(dataset: ManifestDataset, split: 'train' | 'val' | 'test'): Batch {
  const rows = dataset.splitRows(split);
  if (rows.length === 0) {
    throw new Error(`split ${split} is empty`);
  }
  return dataset.materialize(rows);
}

export async function smokeFinetune(
  manifestPath: string,
  options: SmokeOptions = {},
): Promise<SmokeReport> {
  const { epochs = 10, baseLr = 1e-3, batchSize = 16, seed = 0 } = options;
  const dataset = loadManifest(manifestPath);
  if (dataset.classes.length < 2) {
    throw new Error(`need at least 2 classes, found ${dataset.classes.length}`);
  }

  const train = materializeSplit(dataset, 'train');
  const val = materializeSplit(dataset, 'val');
  const test = materializeSplit(dataset, 'test');
  const [, side, , channels] = train.images.shape;

  const model = buildClassifier({
    inputSide: side,
    channels,
    numClasses: dataset.classes.length,
    seed,
  });

  let epochsRun = 0;
  if (epochs > 0) {
    const result = await trainWithPlateauSchedule(
      model,
      { xs: train.images, ys: train.labels },
      { xs: val.images, ys: val.labels },
      { epochs, baseLr, batchSize },
    );
    epochsRun = result.epochsRun;
  }

  const accuracy = accuracyOf(model, test.images, test.labels);
  const report: SmokeReport = {
    accuracy,
    epochsRun,
    classes: dataset.classes,
    trainCount: train.rows.length,
    valCount: val.rows.length,
    testCount: test.rows.length,
  };
  tf.dispose([train.images, train.labels, val.images, val.labels, test.images, test.labels]);
  model.dispose();
  return report;
}

export function writeReport(path: string, report: SmokeReport): void {
  writeFileSync(path, JSON.stringify(report, null, 2) + '\n');
}
