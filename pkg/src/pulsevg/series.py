"""Uniformly sampled time series with validation."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """A uniformly sampled real-valued signal.

    Samples are stored as a read-only float64 array. Timestamps are implicit:
    ``t_i = i / sampling_rate``.

    Raises
    ------
    ValueError
        If the series is empty, the sampling rate is not positive, or any
        sample is NaN/infinite.
    """

    samples: np.ndarray
    sampling_rate: float = 1.0

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.float64)
        if samples.ndim != 1:
            samples = samples.reshape(-1)
        if samples.size == 0:
            raise ValueError("empty input")
        if not self.sampling_rate > 0:
            raise ValueError(f"sampling rate must be positive, got {self.sampling_rate}")
        finite = np.isfinite(samples)
        if not finite.all():
            i = int(np.argmin(finite))
            raise ValueError(f"non-finite sample at index {i}")
        samples = samples.copy()
        samples.flags.writeable = False
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "sampling_rate", float(self.sampling_rate))

    def __len__(self):
        return self.samples.size

    @property
    def timestamps(self) -> np.ndarray:
        """Sample times in seconds: ``i / sampling_rate``."""
        return np.arange(self.samples.size) / self.sampling_rate

    @property
    def duration(self) -> float:
        """Covered time span in seconds (one sample period per sample)."""
        return self.samples.size / self.sampling_rate


def invert_series(series: TimeSeries) -> TimeSeries:
    """Negate every sample (y -> -y), keeping the sampling rate.

    An involution: ``invert_series(invert_series(s))`` equals ``s``.
    """
    return TimeSeries(-series.samples, series.sampling_rate)


def as_series(data, sampling_rate: float = 1.0) -> TimeSeries:
    """Coerce an array, sequence, or TimeSeries into a TimeSeries."""
    if isinstance(data, TimeSeries):
        return data
    return TimeSeries(np.asarray(data, dtype=np.float64), sampling_rate)
