import numpy as np
import pytest

from pulsevg import (
    PeakList,
    TimeSeries,
    clipped_sine,
    default_min_prominence,
    detect_peaks,
    has_plateau,
    segment_pulses,
    segment_windows,
)


def series(values, rate=1.0):
    return TimeSeries(np.asarray(values, dtype=np.float64), rate)


class TestDetectPeaks:
    def test_sine_peak_count_matches_closed_form(self):
        rate, freq, dur = 50.0, 1.2, 6.0
        t = np.arange(int(dur * rate)) / rate
        s = TimeSeries(np.sin(2 * np.pi * freq * t), rate)
        peaks = detect_peaks(s, min_prominence=0.5, min_distance=20)
        # maxima of sin(2*pi*f*t) sit at t = (0.25 + k) / f inside the window
        expected = [
            (0.25 + k) / freq for k in range(20) if (0.25 + k) / freq < t[-1]
        ]
        assert len(peaks) == len(expected) == 7
        assert np.allclose(peaks.indices / rate, expected, atol=1.5 / rate)

    def test_monotone_ramp_has_no_peaks(self):
        assert len(detect_peaks(series(np.arange(100.0)), 0.0, 1)) == 0

    def test_two_bump_square_wave(self):
        peaks = detect_peaks(series([0, 1, 0, 1, 0]), 0.5, 1)
        assert peaks.indices.tolist() == [1, 3]

    def test_short_series_yields_empty(self):
        assert len(detect_peaks(series([1, 2]), 0.0, 1)) == 0

    def test_higher_peak_wins_within_distance(self):
        peaks = detect_peaks(series([0, 3, 0, 0, 2, 0]), 0.5, 4)
        assert peaks.indices.tolist() == [1]

    def test_equal_peaks_break_toward_lower_index(self):
        peaks = detect_peaks(series([0, 2, 0, 0, 2, 0]), 0.5, 4)
        assert peaks.indices.tolist() == [1]

    def test_prominence_filters_shoulder_bumps(self):
        # a bump riding a ramp: tall in absolute terms, prominence only 1.0
        # (the ramp re-crosses its height at the very next sample)
        y = np.arange(20.0)
        y[10] += 2.0
        assert detect_peaks(series(y), 1.5, 1).indices.tolist() == []
        assert detect_peaks(series(y), 1.0, 1).indices.tolist() == [10]

    def test_flat_topped_peak_reported_once(self):
        peaks = detect_peaks(series([0, 1, 1, 1, 0]), 0.5, 1)
        assert len(peaks) == 1

    def test_spacing_respected(self):
        rng = np.random.default_rng(5)
        s = series(rng.normal(size=500))
        peaks = detect_peaks(s, 0.1, 7)
        assert np.all(np.diff(peaks.indices) >= 7)

    def test_affine_invariance_with_scaled_prominence(self):
        rng = np.random.default_rng(9)
        y = rng.integers(0, 50, size=300).astype(float)
        base = detect_peaks(series(y), 4.0, 5)
        for a, b in [(2.0, 10.0), (0.5, -7.0), (8.0, 1000.0)]:
            scaled = detect_peaks(series(a * y + b), a * 4.0, 5)
            assert np.array_equal(base.indices, scaled.indices), (a, b)

    def test_parameter_validation(self):
        with pytest.raises(ValueError, match="min_distance"):
            detect_peaks(series([1, 2, 1]), 0.5, 0)
        with pytest.raises(ValueError, match="min_prominence"):
            detect_peaks(series([1, 2, 1]), -0.5, 1)

    def test_default_prominence_tracks_iqr(self):
        s = series([0.0, 10.0, 0.0, 10.0])
        q25, q75 = np.percentile(s.samples, (25, 75))
        assert default_min_prominence(s) == pytest.approx(0.3 * (q75 - q25))


class TestSegmentPulses:
    def make_series(self, n=300):
        return series(np.zeros(n))

    def test_long_interval_truncated_to_head(self):
        s = series(np.arange(300.0))
        peaks = PeakList([10, 72])  # 62-sample interval
        (seg,) = segment_pulses(s, peaks, target_len=50)
        assert seg.provenance == "truncated"
        assert len(seg) == 50
        assert np.array_equal(seg.samples, np.arange(10.0, 60.0))
        assert seg.source_range == (10, 60)

    def test_short_interval_zero_padded_at_tail(self):
        s = series(np.arange(300.0) + 1.0)
        peaks = PeakList([10, 50])  # 40-sample interval
        (seg,) = segment_pulses(s, peaks, target_len=50)
        assert seg.provenance == "zero_padded"
        assert len(seg) == 50
        assert np.array_equal(seg.samples[:40], np.arange(11.0, 51.0))
        assert np.array_equal(seg.samples[40:], np.zeros(10))
        assert seg.source_range == (10, 50)

    def test_exact_interval_unchanged(self):
        s = series(np.arange(300.0))
        peaks = PeakList([10, 60])
        (seg,) = segment_pulses(s, peaks, target_len=50)
        assert seg.provenance == "exact"
        assert np.array_equal(seg.samples, np.arange(10.0, 60.0))

    def test_one_segment_per_interval(self):
        s = self.make_series()
        peaks = PeakList([10, 60, 122, 162, 250])
        segs = segment_pulses(s, peaks, target_len=50, record_id="r1")
        assert len(segs) == 4
        assert [seg.window_index for seg in segs] == [0, 1, 2, 3]
        assert all(seg.source_record == "r1" for seg in segs)
        assert [seg.provenance for seg in segs] == [
            "exact", "truncated", "zero_padded", "truncated",
        ]

    def test_fewer_than_two_peaks_yields_nothing(self):
        s = self.make_series()
        assert segment_pulses(s, PeakList([7])) == []
        assert segment_pulses(s, PeakList([])) == []

    def test_segment_contains_exactly_its_leading_peak(self):
        rng = np.random.default_rng(13)
        s = series(rng.normal(size=400))
        peaks = detect_peaks(s, 0.5, 10)
        segs = segment_pulses(s, peaks, target_len=50)
        for seg in segs:
            inside = [
                p for p in peaks.indices
                if seg.source_range[0] <= p < seg.source_range[1]
            ]
            assert inside == [seg.source_range[0]]


class TestSegmentWindows:
    def test_thousand_samples_four_windows(self):
        segs = segment_windows(series(np.arange(1000.0)), 224, 224)
        assert len(segs) == 4
        assert segs[0].source_range == (0, 224)
        assert segs[-1].source_range == (672, 896)

    def test_exact_fit_single_window(self):
        segs = segment_windows(series(np.arange(224.0)), 224)
        assert len(segs) == 1
        assert segs[0].provenance == "window"
        assert segs[0].window_index == 0

    def test_half_stride_overlapping_windows(self):
        segs = segment_windows(series(np.arange(1000.0)), 224, 112)
        starts = [seg.source_range[0] for seg in segs]
        assert starts == [s for s in range(0, 1000, 112) if s + 224 <= 1000]
        assert len(segs) == 7

    def test_short_record_yields_nothing(self):
        assert segment_windows(series(np.arange(100.0)), 224) == []

    def test_default_stride_tiles_without_gaps(self):
        y = np.random.default_rng(3).normal(size=900)
        segs = segment_windows(series(y), 224)
        tiled = np.concatenate([seg.samples for seg in segs])
        assert np.array_equal(tiled, y[: 224 * len(segs)])

    def test_parameter_validation(self):
        with pytest.raises(ValueError, match="window_len"):
            segment_windows(series([1.0, 2.0]), 0)
        with pytest.raises(ValueError, match="stride"):
            segment_windows(series(np.arange(300.0)), 224, 0)


class TestHasPlateau:
    def test_five_equal_samples(self):
        assert has_plateau([1, 2, 3, 3, 3, 3, 3, 4], run_len=5, rel_tol=1e-6)

    def test_strict_ramp_is_clean(self):
        assert not has_plateau(np.arange(50.0), run_len=5, rel_tol=1e-6)

    def test_constant_segment_is_degenerate_plateau(self):
        assert has_plateau(np.full(3, 7.0), run_len=5)

    def test_clipped_sine_saturation_detected(self):
        s = clipped_sine(4.0, 50.0, 0.5, clip_level=0.95)
        # closed form: sin stays above the clip for a run of >= 8 samples
        longest = run = 1
        y = s.samples
        for i in range(1, y.size):
            run = run + 1 if y[i] == y[i - 1] else 1
            longest = max(longest, run)
        assert longest >= 8
        assert has_plateau(s.samples, run_len=5, rel_tol=1e-6)

    def test_near_plateau_within_relative_tolerance(self):
        y = np.concatenate([np.arange(10.0), np.full(6, 20.0) + np.arange(6) * 1e-9])
        assert has_plateau(y, run_len=5, rel_tol=1e-6)
        assert not has_plateau(y, run_len=5, rel_tol=1e-12)

    def test_run_shorter_than_requirement(self):
        assert not has_plateau([0, 5, 5, 5, 1, 7], run_len=4)
        assert has_plateau([0, 5, 5, 5, 1, 7], run_len=3)

    def test_run_len_validation(self):
        with pytest.raises(ValueError, match="run_len"):
            has_plateau([1.0, 2.0], run_len=1)
