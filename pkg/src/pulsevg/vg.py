"""Natural visibility graph construction.

Two samples (a, y_a) and (b, y_b), a < b, of a uniformly sampled series are
mutually visible when every intermediate sample (c, y_c) lies strictly below
the straight line joining them:

    y_c < y_b + (y_a - y_b) * (t_b - t_c) / (t_b - t_a)   for all a < c < b

Visibility is mutual, so the graph is undirected; adjacent samples have no
intermediates and are always connected.

Both constructors here evaluate the predicate in the division-free form

    y_c * (b - a) < y_a * (b - c) + y_b * (c - a)

which is algebraically identical (multiply through by t_b - t_a > 0, then
cancel the uniform sample period). The cross-multiplied form is exact in
floating point whenever samples and their products are exactly representable
(integers, dyadic rationals), so collinear inputs block visibility exactly
instead of depending on division rounding. It also makes the edge set
manifestly independent of the sampling rate.

``build_vg_oracle`` enumerates the predicate for every (a, b, c) triple and is
the ground truth. ``build_vg_fast`` is a divide-and-conquer constructor that
must produce bit-identical adjacency; the equivalence is property-tested.

Equivalence domain: the two constructors evaluate different but algebraically
identical expressions, each correctly rounded. They agree exactly on (a)
inputs whose samples and sample-by-small-integer products are exactly
representable (integers, dyadic rationals), where every tie is decided in
exact arithmetic, and (b) continuous random data, where true predicate
margins below ~1e-15 relative have probability zero. Adversarially
constructed inputs that duplicate high-entropy values into exact geometric
ties (e.g. [v, v, 0, 0, 0, v, v]) can make the two float evaluations round a
true tie in opposite directions; such inputs are outside the contract.
"""

from dataclasses import dataclass

import numpy as np
from numba import njit

from .series import TimeSeries

BINARY = "binary"
SLOPE_WEIGHTED = "slope-weighted"


@dataclass(frozen=True, eq=False)
class AdjacencyMatrix:
    """Symmetric n x n edge-weight matrix of an undirected visibility graph.

    ``kind`` is ``"binary"`` (weights in {0, 1}) or ``"slope-weighted"``
    (weights are |slope| of the connecting line, in signal units per second).
    """

    weights: np.ndarray
    kind: str = BINARY

    def __post_init__(self):
        w = np.asarray(self.weights)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValueError(f"adjacency must be square, got shape {w.shape}")
        if self.kind not in (BINARY, SLOPE_WEIGHTED):
            raise ValueError(f"unknown adjacency kind: {self.kind!r}")
        object.__setattr__(self, "weights", w)

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    def edge_count(self) -> int:
        """Number of undirected edges (nonzero upper-triangle entries)."""
        return int(np.count_nonzero(np.triu(self.weights, k=1)))

    def edge_set(self) -> set:
        """Undirected edges as a set of (i, j) tuples with i < j."""
        ii, jj = np.nonzero(np.triu(self.weights, k=1))
        return set(zip(ii.tolist(), jj.tolist()))

    def validate(self) -> None:
        """Check structural invariants; raises AssertionError on violation.

        Intended for tests and debugging, not for hot paths.
        """
        w = self.weights
        assert np.array_equal(w, w.T), "adjacency must be symmetric"
        assert not np.diagonal(w).any(), "diagonal must be zero"
        if self.kind == BINARY:
            assert np.isin(w, (0, 1)).all(), "binary weights must be 0 or 1"
            if self.n >= 2:
                assert np.diagonal(w, offset=1).all(), "adjacent samples must be visible"
        else:
            assert (w >= 0).all(), "slope weights must be non-negative"


def build_vg_oracle(series: TimeSeries) -> AdjacencyMatrix:
    """Definition-literal visibility graph: check every (a, b, c) triple.

    O(n^3) reference constructor. The inner comparison is evaluated for each
    candidate pair against all of its intermediates, batched with numpy per
    left endpoint but with no algorithmic shortcut; this is the ground truth
    that ``build_vg_fast`` is verified against.
    """
    y = series.samples
    n = y.size
    adj = np.zeros((n, n), dtype=np.uint8)
    idx = np.arange(n, dtype=np.int64)
    for a in range(n - 1):
        bs = idx[a + 1:]
        cs = idx[a + 1:n - 1]
        if cs.size == 0:
            adj[a, a + 1:] = 1
            adj[a + 1:, a] = 1
            continue
        # ok[c, b] evaluates  y_c*(b-a) < y_a*(b-c) + y_b*(c-a)
        ok = y[cs][:, None] * (bs[None, :] - a) < (
            y[a] * (bs[None, :] - cs[:, None]) + y[bs][None, :] * (cs[:, None] - a)
        )
        ok |= cs[:, None] >= bs[None, :]  # c outside (a, b): vacuously fine
        edge = ok.all(axis=0)
        adj[a, a + 1:][edge] = 1
        adj[a + 1:, a][edge] = 1
    return AdjacencyMatrix(adj, BINARY)


@njit(cache=True)
def _vg_dc_kernel(y, rate, adj, w):  # pragma: no cover - exercised via build_vg_fast
    """Divide and conquer on the range maximum.

    Any pair straddling the maximum of a range cannot be mutually visible
    (the line between them passes at or below the maximum), so only pairs
    with the maximum as an endpoint cross it; those are found by two sweeps
    that track the steepest blocker seen so far. Remaining edges lie wholly
    in the sub-ranges. Ties in the maximum break toward the lowest index.

    Sweeps compare cross-multiplied slopes, never dividing, to match the
    oracle exactly on quantized inputs. Average O(n log n).

    With ``rate > 0``, |slope| edge weights (signal units per second) are
    written into ``w`` alongside the binary adjacency.
    """
    n = y.shape[0]
    stack = np.empty((2 * n + 4, 2), dtype=np.int64)
    stack[0, 0] = 0
    stack[0, 1] = n
    top = 1
    while top > 0:
        top -= 1
        left = stack[top, 0]
        right = stack[top, 1]
        if right - left < 2:
            continue
        m = left
        ym = y[left]
        for k in range(left + 1, right):
            if y[k] > ym:
                ym = y[k]
                m = k
        # rightward sweep: j visible from m iff its slope strictly exceeds
        # the steepest slope among intermediates, i.e. the current blocker
        bc = -1
        for j in range(m + 1, right):
            steeper = bc < 0 or (y[j] - ym) * (bc - m) > (y[bc] - ym) * (j - m)
            if steeper:
                adj[m, j] = 1
                adj[j, m] = 1
                if rate > 0:
                    wij = abs(y[j] - ym) * rate / (j - m)
                    w[m, j] = wij
                    w[j, m] = wij
                bc = j
        # leftward sweep, mirrored
        bc = -1
        for j in range(m - 1, left - 1, -1):
            steeper = bc < 0 or (y[j] - ym) * (m - bc) > (y[bc] - ym) * (m - j)
            if steeper:
                adj[m, j] = 1
                adj[j, m] = 1
                if rate > 0:
                    wij = abs(y[j] - ym) * rate / (m - j)
                    w[m, j] = wij
                    w[j, m] = wij
                bc = j
        stack[top, 0] = left
        stack[top, 1] = m
        top += 1
        stack[top, 0] = m + 1
        stack[top, 1] = right
        top += 1


_NO_WEIGHTS = np.empty((0, 0), dtype=np.float64)


def build_vg_fast(series: TimeSeries) -> AdjacencyMatrix:
    """Fast visibility graph, bit-identical to ``build_vg_oracle``."""
    y = series.samples
    n = y.size
    adj = np.zeros((n, n), dtype=np.uint8)
    if n >= 2:
        _vg_dc_kernel(y, 0.0, adj, _NO_WEIGHTS)
    return AdjacencyMatrix(adj, BINARY)


def build_vg_with_weights(series: TimeSeries) -> tuple:
    """One construction pass returning (binary, slope-weighted) adjacency."""
    y = series.samples
    n = y.size
    adj = np.zeros((n, n), dtype=np.uint8)
    w = np.zeros((n, n), dtype=np.float64)
    if n >= 2:
        _vg_dc_kernel(y, series.sampling_rate, adj, w)
    return AdjacencyMatrix(adj, BINARY), AdjacencyMatrix(w, SLOPE_WEIGHTED)


def slope_weights(series: TimeSeries, adjacency: AdjacencyMatrix) -> AdjacencyMatrix:
    """Overlay |slope| weights on an existing binary visibility adjacency.

    For each edge (i, j): ``w = |y_j - y_i| / (t_j - t_i)`` in signal units
    per second. Non-edges stay zero; an edge between equal samples gets
    weight zero (flat line), so the weighted support can be a strict subset
    of the binary edge set on series with repeated values.
    """
    y = series.samples
    n = y.size
    didx = np.abs(np.subtract.outer(np.arange(n, dtype=np.float64), np.arange(n, dtype=np.float64)))
    np.fill_diagonal(didx, 1.0)  # avoid 0/0 on the (zeroed) diagonal
    w = np.abs(np.subtract.outer(y, y)) * series.sampling_rate / didx
    w[adjacency.weights == 0] = 0.0
    return AdjacencyMatrix(w, SLOPE_WEIGHTED)


def build_vg_slope_weighted(series: TimeSeries) -> AdjacencyMatrix:
    """Slope-weighted visibility graph: binary edge set, |slope| weights."""
    _, weighted = build_vg_with_weights(series)
    return weighted


def adjacency_to_csv(adjacency: AdjacencyMatrix, path) -> None:
    """Dump an adjacency matrix as CSV, one row per line.

    Binary matrices are written as 0/1 integers, weighted ones as decimals
    with round-trip precision.
    """
    fmt = "%d" if adjacency.kind == BINARY else "%.17g"
    np.savetxt(path, adjacency.weights, fmt=fmt, delimiter=",")
