import numpy as np
import pytest

from pulsevg import (
    bp_waveform,
    extract_sbp_dbp,
    grade_bhs,
    grade_from_percentages,
    mean_absolute_error,
    metrics_json,
)


def errors_with_exact_percentages(n, pct5, pct10, pct15):
    """Build n absolute errors hitting the three cumulative percentages exactly."""
    k5 = round(n * pct5 / 100)
    k10 = round(n * pct10 / 100)
    k15 = round(n * pct15 / 100)
    parts = [
        np.zeros(k5),
        np.full(k10 - k5, 7.0),
        np.full(k15 - k10, 12.0),
        np.full(n - k15, 20.0),
    ]
    return np.concatenate(parts)


class TestExtractSbpDbp:
    def test_oscillating_window(self):
        wave = bp_waveform(4.0, 125.0, 75.0, sbp=120.0, dbp=80.0)
        assert extract_sbp_dbp(wave) == (120.0, 80.0)

    def test_constant_window_degenerate(self):
        assert extract_sbp_dbp(np.full(10, 100.0)) == (100.0, 100.0)

    def test_two_beat_window_takes_higher_peak(self):
        beat1 = bp_waveform(0.8, 125.0, 75.0, sbp=118.0, dbp=78.0)
        beat2 = bp_waveform(0.8, 125.0, 75.0, sbp=122.0, dbp=80.0)
        window = np.concatenate([beat1.samples, beat2.samples])
        sbp, dbp = extract_sbp_dbp(window)
        assert sbp == 122.0
        assert dbp == 78.0

    def test_sbp_never_below_dbp(self):
        rng = np.random.default_rng(0)
        for _ in range(30):
            sbp, dbp = extract_sbp_dbp(rng.uniform(60, 180, size=20))
            assert sbp >= dbp

    def test_errors(self):
        with pytest.raises(ValueError, match="at least 2"):
            extract_sbp_dbp(np.array([100.0]))
        with pytest.raises(ValueError, match="non-finite"):
            extract_sbp_dbp(np.array([100.0, np.nan]))


class TestMae:
    def test_identical_is_zero(self):
        assert mean_absolute_error([1, 2, 3], [1, 2, 3]) == 0.0

    def test_small_example(self):
        assert mean_absolute_error([1, 2], [2, 4]) == 1.5

    def test_matches_explicit_summation(self):
        rng = np.random.default_rng(1)
        p = rng.uniform(60, 180, size=500)
        t = rng.uniform(60, 180, size=500)
        brute = sum(abs(a - b) for a, b in zip(p, t)) / 500
        assert mean_absolute_error(p, t) == pytest.approx(brute, abs=1e-12)

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="length mismatch"):
            mean_absolute_error([1.0], [1.0, 2.0])

    def test_empty(self):
        with pytest.raises(ValueError, match="empty"):
            mean_absolute_error([], [])


class TestBhsGrading:
    def test_reported_dbp_row_grades_a(self):
        assert grade_from_percentages(83.93, 96.03, 98.77) == "A"
        report = grade_bhs(errors_with_exact_percentages(10000, 83.93, 96.03, 98.77))
        assert (report.pct_le_5, report.pct_le_10, report.pct_le_15) == pytest.approx(
            (83.93, 96.03, 98.77), abs=1e-9
        )
        assert report.grade == "A"

    def test_reported_sbp_row_grades_d_under_strict_rule(self):
        # 88.40 < 90 misses the third C threshold, so the strict all-three
        # rule lands on D even though the first two C thresholds pass
        assert grade_from_percentages(48.87, 75.87, 88.40) == "D"
        report = grade_bhs(errors_with_exact_percentages(10000, 48.87, 75.87, 88.40))
        assert (report.pct_le_5, report.pct_le_10, report.pct_le_15) == pytest.approx(
            (48.87, 75.87, 88.40), abs=1e-9
        )
        assert report.grade == "D"

    def test_zero_errors_grade_a(self):
        report = grade_bhs(np.zeros(50))
        assert (report.pct_le_5, report.pct_le_10, report.pct_le_15) == (100.0, 100.0, 100.0)
        assert report.grade == "A"

    def test_thresholds_are_inclusive(self):
        report = grade_bhs(np.array([5.0, 10.0, 15.0, 5.0, 5.0]))
        assert report.pct_le_5 == 60.0
        assert report.pct_le_10 == 80.0
        assert report.pct_le_15 == 100.0

    def test_grade_boundaries(self):
        assert grade_from_percentages(80.0, 90.0, 95.0) == "A"
        assert grade_from_percentages(79.99, 90.0, 95.0) == "B"
        assert grade_from_percentages(65.0, 85.0, 95.0) == "B"
        assert grade_from_percentages(64.0, 85.0, 95.0) == "C"
        assert grade_from_percentages(45.0, 75.0, 90.0) == "C"
        assert grade_from_percentages(45.0, 75.0, 89.99) == "D"
        assert grade_from_percentages(0.0, 0.0, 0.0) == "D"

    def test_adding_zero_error_never_lowers_grade(self):
        rng = np.random.default_rng(2)
        order = {"A": 0, "B": 1, "C": 2, "D": 3}
        for _ in range(50):
            errors = rng.exponential(6.0, size=rng.integers(1, 100))
            before = grade_bhs(errors).grade
            after = grade_bhs(np.append(errors, 0.0)).grade
            assert order[after] <= order[before]

    def test_adding_huge_error_never_raises_grade(self):
        rng = np.random.default_rng(3)
        order = {"A": 0, "B": 1, "C": 2, "D": 3}
        for _ in range(50):
            errors = rng.exponential(6.0, size=rng.integers(1, 100))
            before = grade_bhs(errors).grade
            after = grade_bhs(np.append(errors, 100.0)).grade
            assert order[after] >= order[before]

    def test_percentages_are_ordered(self):
        rng = np.random.default_rng(4)
        for _ in range(30):
            r = grade_bhs(rng.exponential(8.0, size=60))
            assert 0 <= r.pct_le_5 <= r.pct_le_10 <= r.pct_le_15 <= 100

    def test_errors(self):
        with pytest.raises(ValueError, match="empty"):
            grade_bhs([])
        with pytest.raises(ValueError, match="non-negative"):
            grade_bhs([-1.0])


class TestMetricsJson:
    def test_keys_and_values(self):
        pred = np.array([100.0, 110.0, 120.0])
        truth = np.array([102.0, 110.0, 127.0])
        out = metrics_json(pred, truth)
        assert set(out) == {"mae", "pct_le_5", "pct_le_10", "pct_le_15", "grade"}
        assert out["mae"] == pytest.approx(3.0)
        # errors 2, 0, 7: 2/3 within 5 and all within 10 -> B thresholds hold
        assert out["grade"] == "B"
