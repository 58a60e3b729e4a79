"""Blood-pressure evaluation metrics: SBP/DBP extraction, MAE, BHS grading."""

from dataclasses import dataclass

import numpy as np

# British Hypertension Society grading: percentage of absolute errors within
# 5/10/15 mmHg. A grade requires all three thresholds; D is everything worse.
BHS_THRESHOLDS = (
    ("A", (80.0, 90.0, 95.0)),
    ("B", (65.0, 85.0, 95.0)),
    ("C", (45.0, 75.0, 90.0)),
)


@dataclass(frozen=True)
class BhsReport:
    pct_le_5: float
    pct_le_10: float
    pct_le_15: float
    grade: str

    def as_dict(self) -> dict:
        return {
            "pct_le_5": self.pct_le_5,
            "pct_le_10": self.pct_le_10,
            "pct_le_15": self.pct_le_15,
            "grade": self.grade,
        }


def extract_sbp_dbp(bp_window) -> tuple:
    """Systolic and diastolic pressure of a window: its max and min, in mmHg."""
    y = np.asarray(getattr(bp_window, "samples", bp_window), dtype=np.float64)
    if y.size < 2:
        raise ValueError(f"window must have at least 2 samples, got {y.size}")
    if not np.isfinite(y).all():
        i = int(np.argmin(np.isfinite(y)))
        raise ValueError(f"non-finite sample at index {i}")
    return float(y.max()), float(y.min())


def mean_absolute_error(pred, truth) -> float:
    """Mean of |pred - truth| over paired values."""
    p = np.asarray(pred, dtype=np.float64).reshape(-1)
    t = np.asarray(truth, dtype=np.float64).reshape(-1)
    if p.size != t.size:
        raise ValueError(f"length mismatch: {p.size} vs {t.size}")
    if p.size == 0:
        raise ValueError("empty input")
    return float(np.mean(np.abs(p - t)))


def grade_from_percentages(pct_le_5: float, pct_le_10: float, pct_le_15: float) -> str:
    """Best BHS grade whose thresholds are all met; D otherwise."""
    for grade, (t5, t10, t15) in BHS_THRESHOLDS:
        if pct_le_5 >= t5 and pct_le_10 >= t10 and pct_le_15 >= t15:
            return grade
    return "D"


def grade_bhs(abs_errors) -> BhsReport:
    """Grade a set of absolute errors (mmHg) against the BHS standard.

    Percentages use inclusive (<=) threshold comparisons.
    """
    e = np.asarray(abs_errors, dtype=np.float64).reshape(-1)
    if e.size == 0:
        raise ValueError("empty input")
    if (e < 0).any():
        raise ValueError("absolute errors must be non-negative")
    pct5 = float(np.mean(e <= 5.0) * 100.0)
    pct10 = float(np.mean(e <= 10.0) * 100.0)
    pct15 = float(np.mean(e <= 15.0) * 100.0)
    return BhsReport(pct5, pct10, pct15, grade_from_percentages(pct5, pct10, pct15))


def metrics_json(pred, truth) -> dict:
    """The metrics bundle emitted by the CLI: waveform MAE plus BHS fields."""
    report = grade_bhs(np.abs(np.asarray(pred, dtype=np.float64) - np.asarray(truth, dtype=np.float64)))
    return {"mae": mean_absolute_error(pred, truth), **report.as_dict()}
