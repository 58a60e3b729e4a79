"""Cutting records into model-ready segments.

Two segmentation modes: peak-to-peak pulses normalized to 50 samples
(truncate or zero-pad), and fixed 224-sample windows with plateau
rejection for saturated stretches.
"""

import numpy as np

from pulsevg import (
    clipped_sine,
    default_min_prominence,
    detect_peaks,
    has_plateau,
    pulse_train,
    segment_pulses,
    segment_windows,
)

record = pulse_train(
    duration_s=10.0, sampling_rate=50.0, bpm=68.0,
    baseline_wander=0.05, noise=0.01, seed=42,
)

# peak detection: prominence scales with the record's own amplitude
prominence = default_min_prominence(record)
peaks = detect_peaks(record, prominence, min_distance=15)
print(f"10 s at 68 bpm -> {len(peaks)} peaks (prominence >= {prominence:.3f})")

pulses = segment_pulses(record, peaks, target_len=50, record_id="demo")
kinds = {}
for seg in pulses:
    kinds[seg.provenance] = kinds.get(seg.provenance, 0) + 1
print("pulse segments:", len(pulses), "by provenance:", kinds)
print("every segment is exactly", {len(s) for s in pulses}, "samples\n")

# window mode: non-overlapping tiles, partial tail dropped
long_record = pulse_train(20.0, 125.0, 75.0, noise=0.005, seed=7)
windows = segment_windows(long_record, window_len=224)
print(f"20 s at 125 Hz -> {len(windows)} windows of 224 samples")

# plateau rejection: saturated sensors produce flat runs
saturated = clipped_sine(4.0, 50.0, freq_hz=0.5, clip_level=0.95)
print("clipped sine flagged as plateau:", has_plateau(saturated.samples))
print("healthy window flagged:        ", has_plateau(windows[0]))
