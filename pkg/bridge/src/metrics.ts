/**
 * Blood-pressure metrics in the same JSON schema the pipeline CLI emits:
 * keys mae, pct_le_5, pct_le_10, pct_le_15, grade. Kept in lockstep so
 * model-side evaluation files are interchangeable with pipeline-side ones.
 */

export interface MetricsJson {
  mae: number;
  pct_le_5: number;
  pct_le_10: number;
  pct_le_15: number;
  grade: 'A' | 'B' | 'C' | 'D';
}

const BHS_THRESHOLDS: Array<['A' | 'B' | 'C', [number, number, number]]> = [
  ['A', [80, 90, 95]],
  ['B', [65, 85, 95]],
  ['C', [45, 75, 90]],
];

export function meanAbsoluteError(pred: ArrayLike<number>, truth: ArrayLike<number>): number {
  if (pred.length !== truth.length) {
    throw new Error(`length mismatch: ${pred.length} vs ${truth.length}`);
  }
  if (pred.length === 0) {
    throw new Error('empty input');
  }
  let sum = 0;
  for (let i = 0; i < pred.length; i++) {
    sum += Math.abs(pred[i] - truth[i]);
  }
  return sum / pred.length;
}

export function gradeFromPercentages(p5: number, p10: number, p15: number): 'A' | 'B' | 'C' | 'D' {
  for (const [grade, [t5, t10, t15]] of BHS_THRESHOLDS) {
    if (p5 >= t5 && p10 >= t10 && p15 >= t15) return grade;
  }
  return 'D';
}

export function metricsJson(pred: ArrayLike<number>, truth: ArrayLike<number>): MetricsJson {
  const mae = meanAbsoluteError(pred, truth);
  const n = pred.length;
  let le5 = 0;
  let le10 = 0;
  let le15 = 0;
  for (let i = 0; i < n; i++) {
    const e = Math.abs(pred[i] - truth[i]);
    if (e <= 5) le5++;
    if (e <= 10) le10++;
    if (e <= 15) le15++;
  }
  const p5 = (le5 / n) * 100;
  const p10 = (le10 / n) * 100;
  const p15 = (le15 / n) * 100;
  return {
    mae,
    pct_le_5: p5,
    pct_le_10: p10,
    pct_le_15: p15,
    grade: gradeFromPercentages(p5, p10, p15),
  };
}
