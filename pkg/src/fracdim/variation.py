"""Total-variation machinery: partition sums, refinement traces, and the
bridge between subseries increment sums and the variation of the sampled
function.
"""
from __future__ import annotations

import io
from dataclasses import dataclass
from typing import List, NamedTuple

import numpy as np

from .errors import DomainError, EmptySubseriesError
from .higuchi import increments_count, variation_sum
from .series import sample
from .signals import as_callable

TRACE_BASE_INTERVALS = 64


@dataclass(frozen=True)
class Partition:
    """Strictly increasing points of an interval; ``mesh`` is the largest gap."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=float, copy=True)
        if pts.ndim != 1 or pts.size < 2:
            raise DomainError("a partition needs at least 2 points")
        if not np.all(np.isfinite(pts)):
            raise DomainError("partition points must be finite")
        if not np.all(np.diff(pts) > 0.0):
            raise DomainError("partition points must be strictly increasing")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def a(self) -> float:
        return float(self.points[0])

    @property
    def b(self) -> float:
        return float(self.points[-1])

    @property
    def mesh(self) -> float:
        return float(np.max(np.diff(self.points)))

    def refine_with(self, t: float) -> "Partition":
        """New partition with ``t`` inserted (no-op if already present)."""
        if t in self.points:
            return self
        return Partition(np.sort(np.append(self.points, float(t))))


def uniform_partition(n_points: int) -> Partition:
    """n_points equally spaced points spanning [0, 1]."""
    if n_points < 2:
        raise DomainError(f"need at least 2 points, got {n_points}")
    return Partition(np.arange(n_points, dtype=float) / (n_points - 1))


def variation_over_partition(spec, partition: Partition) -> float:
    """Partition sum of |f(t_i) - f(t_{i-1})|, accumulated left to right."""
    if partition.a < 0.0 or partition.b > 1.0:
        raise DomainError("partition must lie inside [0, 1]")
    f = as_callable(spec)
    values = np.asarray(f(partition.points), dtype=float)
    return float(np.cumsum(np.abs(np.diff(values)))[-1])


def higuchi_partition(n: int, k: int, m: int) -> Partition:
    """Partition {(m+ik-1)/(n-1) : i = 0..q} plus the endpoints 0 and 1.

    Its inner gaps are k/(n-1) and the boundary gaps are at most (k+1)/(n-1),
    so the mesh shrinks like 1/n for fixed k.
    """
    q = increments_count(n, k, m)
    if q == 0:
        raise EmptySubseriesError(f"no increments for n={n}, k={k}, m={m}")
    i = np.arange(q + 1)
    inner = (m + i * k - 1) / (n - 1)
    return Partition(np.unique(np.concatenate((inner, [0.0, 1.0]))))


class TvEstimate(NamedTuple):
    estimate: float
    trace: np.ndarray


def total_variation_estimate(spec, levels: int) -> TvEstimate:
    """Partition sums on nested dyadic grids of 64 * 2**n intervals,
    n = 0..levels-1.

    Nesting makes the trace nondecreasing; for a continuous function of
    bounded variation it climbs to the total variation.  Returns the final
    value and the whole trace.
    """
    if levels < 2:
        raise DomainError(f"need at least 2 levels, got {levels}")
    f = as_callable(spec)
    trace = np.zeros(levels)
    for level in range(levels):
        intervals = TRACE_BASE_INTERVALS * 2**level
        points = np.arange(intervals + 1, dtype=float) / intervals
        values = np.asarray(f(points), dtype=float)
        trace[level] = float(np.cumsum(np.abs(np.diff(values)))[-1])
    return TvEstimate(float(trace[-1]), trace)


class ConvergenceRow(NamedTuple):
    n: int
    v_nkm: float
    v_pn: float
    e_n: float


def variation_convergence_check(spec, k: int, m: int, n_grid) -> List[ConvergenceRow]:
    """For each n: the subseries increment sum, the partition sum over the
    matching partition, and the endpoint correction
    e_n = |f(0) - f(l_n)| + |f(1) - f(r_n)|.

    The three satisfy the exact decomposition  partition sum = increment sum
    + e_n, which callers can verify row by row.
    """
    grid = [int(n) for n in n_grid]
    if len(grid) < 1 or any(b <= a for a, b in zip(grid, grid[1:])):
        raise DomainError("n_grid must be strictly increasing")
    f = as_callable(spec)
    rows = []
    for n in grid:
        ts = sample(spec, n)
        v_nkm = variation_sum(ts, k, m)
        part = higuchi_partition(n, k, m)
        v_pn = variation_over_partition(spec, part)
        q = increments_count(n, k, m)
        left = (m - 1) / (n - 1)
        right = (m + q * k - 1) / (n - 1)
        e_n = abs(float(f(0.0)) - float(f(left))) + abs(float(f(1.0)) - float(f(right)))
        rows.append(ConvergenceRow(n, v_nkm, v_pn, e_n))
    return rows


def convergence_csv_text(rows) -> str:
    buf = io.StringIO()
    buf.write("N,V_nkm,V_PN,e_N\n")
    for row in rows:
        buf.write(f"{row.n},{row.v_nkm!r},{row.v_pn!r},{row.e_n!r}\n")
    return buf.getvalue()
