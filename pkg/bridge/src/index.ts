export { DecodedTensor, decodeTensor, encodeTensor, readTensorFile } from './vgt.js';
export { MANIFEST_FIELDS, ManifestRow, Split, readManifest } from './manifest.js';
export { Batch, BatchOptions, ManifestDataset, loadManifest } from './batch.js';
export {
  BackboneOptions,
  ScheduleOptions,
  TrainResult,
  accuracyOf,
  buildBackbone,
  buildClassifier,
  buildRegressionHead,
  trainWithPlateauSchedule,
} from './model.js';
export { SmokeOptions, SmokeReport, smokeFinetune, writeReport } from './smoke.js';
export { MetricsJson, gradeFromPercentages, meanAbsoluteError, metricsJson } from './metrics.js';
