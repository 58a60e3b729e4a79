"""Micro-benchmark of the per-segment pipeline (stack build + image render)."""

import time
from dataclasses import dataclass

import numpy as np

from .imaging import build_channel_stack, stack_to_image
from .synth import pulse_train


@dataclass
class BenchReport:
    n_segments: int
    segment_len: int
    mean_ms: float
    median_ms: float
    p99_ms: float
    total_s: float

    def as_dict(self) -> dict:
        return {
            "n_segments": self.n_segments,
            "segment_len": self.segment_len,
            "mean_ms": self.mean_ms,
            "median_ms": self.median_ms,
            "p99_ms": self.p99_ms,
            "total_s": self.total_s,
        }


def _random_segments(n_segments, segment_len, rate, seed):
    rng = np.random.default_rng(seed)
    duration = segment_len / rate
    segments = []
    for k in range(n_segments):
        series = pulse_train(
            duration,
            rate,
            bpm=float(rng.uniform(50, 150)),
            phase=float(rng.uniform(0, 1)),
            notch_depth=float(rng.uniform(0.1, 0.3)),
            noise=0.02,
            seed=int(rng.integers(0, 2**31)),
        )
        segments.append(series.samples[:segment_len])
    return segments


def bench_segment(
    n_segments: int = 1000,
    segment_len: int = 224,
    rate: float = 125.0,
    upscale: int | None = None,
    seed: int = 0,
    warmup: int = 50,
) -> BenchReport:
    """Time build_channel_stack + stack_to_image per synthetic segment.

    Warmup iterations run first (and trigger JIT compilation) and are not
    measured.
    """
    if n_segments < 1:
        raise ValueError("n_segments must be >= 1")
    segments = _random_segments(n_segments, segment_len, rate, seed)
    for seg in segments[:warmup]:
        stack_to_image(build_channel_stack(seg, rate), upscale=upscale)
    times = np.empty(n_segments)
    t_start = time.perf_counter()
    for i, seg in enumerate(segments):
        t0 = time.perf_counter()
        stack_to_image(build_channel_stack(seg, rate), upscale=upscale)
        times[i] = time.perf_counter() - t0
    total = time.perf_counter() - t_start
    times *= 1e3
    return BenchReport(
        n_segments=n_segments,
        segment_len=segment_len,
        mean_ms=float(times.mean()),
        median_ms=float(np.median(times)),
        p99_ms=float(np.percentile(times, 99)),
        total_s=float(total),
    )
