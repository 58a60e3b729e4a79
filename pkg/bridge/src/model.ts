/**
 * Toy convolutional classifier with a swappable top layer, plus the
 * plateau-decay training schedule: the learning rate drops by 10x when the
 * validation loss stops improving for `decayPatience` consecutive epochs,
 * and training stops after `stopPatience` stagnant epochs.
 *
 * At desk scale there is no pretrained backbone to download, so the
 * backbone starts from seeded random weights; the separate-backbone /
 * swapped-head structure is what carries over from the full-size setup.
 */

import * as tf from '@tensorflow/tfjs';

export interface BackboneOptions {
  inputSide: number;
  channels: number;
  seed?: number;
}

export function buildBackbone({ inputSide, channels, seed = 0 }: BackboneOptions): tf.Sequential {
  const init = (s: number) => tf.initializers.glorotUniform({ seed: seed + s });
  const model = tf.sequential();
  model.add(tf.layers.conv2d({
    inputShape: [inputSide, inputSide, channels],
    filters: 8,
    kernelSize: 3,
    activation: 'relu',
    kernelInitializer: init(1),
  }));
  model.add(tf.layers.maxPooling2d({ poolSize: 2 }));
  model.add(tf.layers.conv2d({
    filters: 16,
    kernelSize: 3,
    activation: 'relu',
    kernelInitializer: init(2),
  }));
  model.add(tf.layers.maxPooling2d({ poolSize: 2 }));
  model.add(tf.layers.flatten());
  model.add(tf.layers.dense({ units: 32, activation: 'relu', kernelInitializer: init(3) }));
  return model;
}

/** Backbone plus a classification top layer sized to the task. */
export function buildClassifier(opts: BackboneOptions & { numClasses: number }): tf.Sequential {
  const model = buildBackbone(opts);
  model.add(tf.layers.dense({
    units: opts.numClasses,
    activation: 'softmax',
    kernelInitializer: tf.initializers.glorotUniform({ seed: (opts.seed ?? 0) + 4 }),
  }));
  return model;
}

/** Same backbone with a flat regression top layer (e.g. 224-sample waveforms). */
export function buildRegressionHead(opts: BackboneOptions & { outputLen: number }): tf.Sequential {
  const model = buildBackbone(opts);
  model.add(tf.layers.dense({
    units: opts.outputLen,
    kernelInitializer: tf.initializers.glorotUniform({ seed: (opts.seed ?? 0) + 4 }),
  }));
  return model;
}

export interface ScheduleOptions {
  epochs: number;
  baseLr: number;
  batchSize: number;
  /** 10x learning-rate drop after this many epochs without val improvement. */
  decayPatience?: number;
  /** Stop after this many epochs without val improvement. */
  stopPatience?: number;
}

export interface TrainResult {
  epochsRun: number;
  finalLr: number;
  bestValLoss: number;
}

export async function trainWithPlateauSchedule(
  model: tf.Sequential,
  train: { xs: tf.Tensor4D; ys: tf.Tensor },
  val: { xs: tf.Tensor4D; ys: tf.Tensor },
  options: ScheduleOptions,
): Promise<TrainResult> {
  const { epochs, baseLr, batchSize, decayPatience = 5, stopPatience = 10 } = options;
  let lr = baseLr;
  const optimizer = tf.train.adam(lr);
  model.compile({ optimizer, loss: 'sparseCategoricalCrossentropy', metrics: ['accuracy'] });

  // tfjs sparse crossentropy floors its label tensor, which must be float32
  const trainYs = train.ys.cast('float32');
  const valYs = val.ys.cast('float32');
  let bestValLoss = Infinity;
  let stagnant = 0;
  let epochsRun = 0;
  for (let epoch = 0; epoch < epochs; epoch++) {
    const history = await model.fit(train.xs, trainYs, {
      batchSize,
      epochs: 1,
      shuffle: true,
      validationData: [val.xs, valYs],
      verbose: 0,
    });
    epochsRun++;
    const valLoss = Number(history.history.val_loss?.[0] ?? NaN);
    if (valLoss < bestValLoss - 1e-12) {
      bestValLoss = valLoss;
      stagnant = 0;
    } else {
      stagnant++;
      if (stagnant >= stopPatience) break;
      if (stagnant % decayPatience === 0) {
        lr *= 0.1;
        // tfjs optimizers expose the rate as a settable property
        (optimizer as unknown as { learningRate: number }).learningRate = lr;
      }
    }
  }
  tf.dispose([trainYs, valYs]);
  return { epochsRun, finalLr: lr, bestValLoss };
}

export function accuracyOf(model: tf.Sequential, xs: tf.Tensor4D, ys: tf.Tensor): number {
  return tf.tidy(() => {
    const predictions = (model.predict(xs) as tf.Tensor).argMax(-1).cast('int32');
    const matches = predictions.equal(ys.cast('int32')).sum().arraySync() as number;
    return matches / ys.shape[0]!;
  });
}
