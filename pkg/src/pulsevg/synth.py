"""Synthetic pulse-train and blood-pressure waveform generators.

These stand in for recorded PPG/ABP in tests, benchmarks, and demos. A beat
is a concave parabolic dome (fast systolic rise, slower fall) with an
optional Gaussian dicrotic bump on the downstroke. The dome's concavity
means non-adjacent samples of a clean beat can barely see each other in the
visibility-graph sense, while the dicrotic bump carves a dip whose walls
gain mutual visibility; that contrast is what the waveform-smoothness
signature tests rely on. Baseline wander and white noise can be layered on.
"""

import numpy as np

from .series import TimeSeries

NOTCH_PHASE = 0.66
NOTCH_WIDTH = 0.05
RISE_FRACTION = 0.3


def _wrapped_gauss(phase, center, width):
    # distance on the unit circle, so bumps repeat once per beat
    d = (phase - center + 0.5) % 1.0 - 0.5
    return np.exp(-0.5 * (d / width) ** 2)


def pulse_train(
    duration_s: float,
    sampling_rate: float,
    bpm: float,
    phase: float = 0.0,
    notch_depth: float = 0.12,
    notch_phase: float = NOTCH_PHASE,
    notch_width: float = NOTCH_WIDTH,
    rise: float = RISE_FRACTION,
    baseline_wander: float = 0.0,
    noise: float = 0.0,
    seed: int | None = None,
) -> TimeSeries:
    """Periodic PPG-like pulse train with unit beat amplitude.

    One systolic peak per beat at ``bpm`` beats per minute, with the apex at
    fraction ``rise`` of each period. ``notch_depth`` scales the dicrotic
    bump on the downstroke (0 disables it); the bump is small enough not to
    register as a peak under the default detector settings.
    ``baseline_wander`` adds a 0.25 Hz respiratory-like drift and ``noise``
    white Gaussian noise, both as fractions of the beat amplitude.
    """
    n = int(round(duration_s * sampling_rate))
    t = np.arange(n) / sampling_rate
    beat_phase = (t * (bpm / 60.0) + phase) % 1.0
    u = np.where(
        beat_phase < rise,
        beat_phase / (2.0 * rise),
        0.5 + (beat_phase - rise) / (2.0 * (1.0 - rise)),
    )
    y = 1.0 - 4.0 * (u - 0.5) ** 2
    if notch_depth:
        y = y + notch_depth * _wrapped_gauss(beat_phase, notch_phase, notch_width)
    if baseline_wander:
        y = y + baseline_wander * np.sin(2 * np.pi * 0.25 * t)
    if noise:
        rng = np.random.default_rng(seed)
        y = y + noise * rng.standard_normal(n)
    return TimeSeries(y, sampling_rate)


def dicrotic_bump(
    duration_s: float,
    sampling_rate: float,
    bpm: float,
    phase: float = 0.0,
    depth: float = 0.12,
    notch_phase: float = NOTCH_PHASE,
    notch_width: float = NOTCH_WIDTH,
) -> np.ndarray:
    """Just the dicrotic component of ``pulse_train``, for superimposing."""
    n = int(round(duration_s * sampling_rate))
    t = np.arange(n) / sampling_rate
    beat_phase = (t * (bpm / 60.0) + phase) % 1.0
    return depth * _wrapped_gauss(beat_phase, notch_phase, notch_width)


def smooth_series(series: TimeSeries, window_len: int) -> TimeSeries:
    """Low-pass the series with a Hann-weighted moving average.

    Length is preserved; edges are reflect-padded. A window a few times
    wider than the dicrotic bump erases the notch while keeping the beat.
    """
    if window_len < 1:
        raise ValueError(f"window_len must be >= 1, got {window_len}")
    if window_len == 1:
        return series
    kernel = np.hanning(window_len + 2)[1:-1]
    kernel /= kernel.sum()
    pad = window_len // 2
    y = np.pad(series.samples, (pad, window_len - 1 - pad), mode="reflect")
    smoothed = np.convolve(y, kernel, mode="valid")
    return TimeSeries(smoothed, series.sampling_rate)


def bp_waveform(
    duration_s: float,
    sampling_rate: float,
    bpm: float,
    sbp: float,
    dbp: float,
    phase: float = 0.0,
) -> TimeSeries:
    """Arterial-pressure-like wave oscillating between dbp and sbp (mmHg)."""
    if not sbp >= dbp:
        raise ValueError(f"sbp must be >= dbp, got {sbp} < {dbp}")
    base = pulse_train(duration_s, sampling_rate, bpm, phase=phase)
    v = base.samples
    lo, hi = v.min(), v.max()
    unit = (v - lo) / (hi - lo) if hi > lo else np.zeros_like(v)
    return TimeSeries(dbp + (sbp - dbp) * unit, sampling_rate)


def clipped_sine(
    duration_s: float,
    sampling_rate: float,
    freq_hz: float,
    clip_level: float = 0.95,
) -> TimeSeries:
    """Sine wave saturated above ``clip_level`` of its amplitude.

    Mimics ADC clipping; the flat tops are exact-value plateau runs.
    """
    n = int(round(duration_s * sampling_rate))
    t = np.arange(n) / sampling_rate
    y = np.sin(2 * np.pi * freq_hz * t)
    return TimeSeries(np.minimum(y, clip_level), sampling_rate)


def synth_records(
    n_records: int,
    duration_s: float,
    sampling_rate: float,
    bpm_range: tuple = (55.0, 95.0),
    bpm_classes: tuple | None = None,
    noise: float = 0.01,
    seed: int = 0,
):
    """Generate labelled synthetic records.

    Returns ``(records, labels)`` where records is a list of
    ``(record_id, samples)`` and labels maps record_id to a dict with
    ``subject_id``, ``age``, ``sbp``, ``dbp``. With ``bpm_classes`` set
    (e.g. ``(60, 150)``), records alternate between the given rates and get
    ages in disjoint groups (15 vs 50 years) so the class is recoverable
    from the age-group label.
    """
    rng = np.random.default_rng(seed)
    records = []
    labels = {}
    for k in range(n_records):
        rid = f"rec{k:03d}"
        if bpm_classes is not None:
            cls = k % len(bpm_classes)
            bpm = float(bpm_classes[cls])
            age = 15.0 if cls == 0 else 50.0
        else:
            bpm = float(rng.uniform(*bpm_range))
            age = float(rng.integers(10, 76))
        series = pulse_train(
            duration_s,
            sampling_rate,
            bpm,
            phase=float(rng.uniform(0, 1)),
            notch_depth=float(rng.uniform(0.08, 0.16)),
            baseline_wander=0.05,
            noise=noise,
            seed=int(rng.integers(0, 2**31)),
        )
        records.append((rid, series.samples))
        labels[rid] = {
            "subject_id": f"subj{k:03d}",
            "age": age,
            "sbp": float(np.round(rng.uniform(100, 160), 1)),
            "dbp": float(np.round(rng.uniform(60, 95), 1)),
        }
    return records, labels
