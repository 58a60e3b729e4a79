"""Record segmentation: peak detection, fixed-length pulses, windows, plateaus."""

from dataclasses import dataclass, field

import numpy as np

from .series import TimeSeries

TRUNCATED = "truncated"
ZERO_PADDED = "zero_padded"
EXACT = "exact"
WINDOW = "window"

PULSE_TARGET_LEN = 50
WINDOW_LEN = 224

# Peak-detector defaults for 50 Hz PPG: 15 samples between peaks caps the
# heart rate at 200 bpm; prominence relative to the interquartile range keeps
# the threshold amplitude-scale aware.
DEFAULT_MIN_DISTANCE = 15
DEFAULT_PROMINENCE_IQR_FACTOR = 0.3

PLATEAU_RUN_LEN = 5
PLATEAU_REL_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class PeakList:
    """Indices of detected local maxima, strictly increasing."""

    indices: np.ndarray
    min_prominence: float = 0.0
    min_distance: int = 1

    def __post_init__(self):
        idx = np.asarray(self.indices, dtype=np.int64).reshape(-1).copy()
        idx.flags.writeable = False
        object.__setattr__(self, "indices", idx)

    def __len__(self):
        return self.indices.size


@dataclass(frozen=True, eq=False)
class PulseSegment:
    """Fixed-length slice of a record, with how it got that length.

    ``provenance`` is one of ``truncated``, ``zero_padded``, ``exact`` or
    ``window``. ``window_index`` is the segment's ordinal within its record
    (window number in window mode, inter-peak interval number in pulse mode).
    ``source_range`` is the half-open index range of the parent record the
    stored samples came from; for truncated segments it covers only the kept
    head.
    """

    samples: np.ndarray
    target_len: int
    provenance: str
    source_record: str = ""
    source_range: tuple = (0, 0)
    window_index: int = -1

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.float64).reshape(-1)
        if samples.size != self.target_len:
            raise ValueError(
                f"segment has {samples.size} samples, target_len is {self.target_len}"
            )
        samples = samples.copy()
        samples.flags.writeable = False
        object.__setattr__(self, "samples", samples)

    def __len__(self):
        return self.samples.size


def _local_maxima(y: np.ndarray) -> list:
    """Indices of local maxima. A flat-topped run counts once, at its left edge."""
    out = []
    n = y.size
    i = 1
    while i < n - 1:
        if y[i] > y[i - 1]:
            j = i
            while j + 1 < n and y[j + 1] == y[i]:
                j += 1
            if j + 1 < n and y[j + 1] < y[i]:
                out.append(i)
            i = j + 1
        else:
            i += 1
    return out


def _prominence(y: np.ndarray, peak: int) -> float:
    """Topographic prominence: height above the higher of the two base minima.

    Each base is the minimum between the peak and the nearest strictly higher
    sample on that side (or the record boundary).
    """
    h = y[peak]
    left_min = h
    for i in range(peak - 1, -1, -1):
        if y[i] > h:
            break
        if y[i] < left_min:
            left_min = y[i]
    right_min = h
    for i in range(peak + 1, y.size):
        if y[i] > h:
            break
        if y[i] < right_min:
            right_min = y[i]
    return h - max(left_min, right_min)


def default_min_prominence(series: TimeSeries) -> float:
    """Amplitude-relative prominence default: 0.3 x interquartile range."""
    q25, q75 = np.percentile(series.samples, (25, 75))
    return DEFAULT_PROMINENCE_IQR_FACTOR * (q75 - q25)


def detect_peaks(series: TimeSeries, min_prominence: float, min_distance: int) -> PeakList:
    """Find local maxima with at least the given prominence and spacing.

    When two candidates are closer than ``min_distance``, the higher one
    wins; equal heights break toward the lower index. Series shorter than
    3 samples have no interior maxima and yield an empty list.
    """
    if min_distance < 1:
        raise ValueError(f"min_distance must be >= 1, got {min_distance}")
    if min_prominence < 0:
        raise ValueError(f"min_prominence must be >= 0, got {min_prominence}")
    y = series.samples
    if y.size < 3:
        return PeakList(np.empty(0, dtype=np.int64), min_prominence, min_distance)

    candidates = [p for p in _local_maxima(y) if _prominence(y, p) >= min_prominence]
    # greedy selection, strongest first; ties toward the lower index
    candidates.sort(key=lambda p: (-y[p], p))
    kept = []
    for p in candidates:
        if all(abs(p - q) >= min_distance for q in kept):
            kept.append(p)
    kept.sort()
    return PeakList(np.asarray(kept, dtype=np.int64), min_prominence, min_distance)


def segment_pulses(
    series: TimeSeries,
    peaks: PeakList,
    target_len: int = PULSE_TARGET_LEN,
    record_id: str = "",
) -> list:
    """One fixed-length segment per inter-peak interval [peak_k, peak_{k+1}).

    Intervals longer than ``target_len`` keep their first ``target_len``
    samples; shorter ones are zero-padded at the tail. Fewer than two peaks
    produce no intervals.
    """
    if target_len < 1:
        raise ValueError(f"target_len must be >= 1, got {target_len}")
    y = series.samples
    out = []
    idx = peaks.indices
    for k in range(len(idx) - 1):
        start, end = int(idx[k]), int(idx[k + 1])
        raw = y[start:end]
        if raw.size > target_len:
            samples = raw[:target_len]
            provenance = TRUNCATED
            src = (start, start + target_len)
        elif raw.size < target_len:
            samples = np.concatenate([raw, np.zeros(target_len - raw.size)])
            provenance = ZERO_PADDED
            src = (start, end)
        else:
            samples = raw
            provenance = EXACT
            src = (start, end)
        out.append(
            PulseSegment(samples, target_len, provenance, record_id, src, window_index=k)
        )
    return out


def segment_windows(
    series: TimeSeries,
    window_len: int = WINDOW_LEN,
    stride: int | None = None,
    record_id: str = "",
) -> list:
    """Contiguous fixed-length windows; a trailing partial window is dropped."""
    if window_len < 1:
        raise ValueError(f"window_len must be >= 1, got {window_len}")
    if stride is None:
        stride = window_len
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride}")
    y = series.samples
    out = []
    k = 0
    for start in range(0, y.size - window_len + 1, stride):
        out.append(
            PulseSegment(
                y[start:start + window_len],
                window_len,
                WINDOW,
                record_id,
                (start, start + window_len),
                window_index=k,
            )
        )
        k += 1
    return out


def has_plateau(
    segment,
    run_len: int = PLATEAU_RUN_LEN,
    rel_tol: float = PLATEAU_REL_TOL,
) -> bool:
    """True when >= run_len consecutive samples sit within rel_tol of each other.

    Tolerance is relative to the segment's full amplitude (max - min); a
    constant segment is a degenerate full plateau and always reports True.
    Used to drop saturated/dropped-out segments before graph construction.
    """
    if run_len < 2:
        raise ValueError(f"run_len must be >= 2, got {run_len}")
    y = np.asarray(getattr(segment, "samples", segment), dtype=np.float64)
    lo, hi = y.min(), y.max()
    if lo == hi:
        return True
    if y.size < run_len:
        return False
    windows = np.lib.stride_tricks.sliding_window_view(y, run_len)
    spans = windows.max(axis=1) - windows.min(axis=1)
    return bool((spans <= rel_tol * (hi - lo)).any())
