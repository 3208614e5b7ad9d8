"""Higuchi fractal dimension estimator.

For each stride k and offset m the series X(m), X(m+k), ... contributes a
normalized increment sum; the per-k averages L(k) are regressed on a log-log
scale and the slope is the estimated dimension D.

The number of increments of the (k, m) subseries is q = floor((N-m)/k), used
both as the summation bound and inside the normalization constant
(N-1)/(q*k): a ceiling bound would address samples beyond X(N) whenever k
does not divide N-m.  When k | (N-m) floor and ceiling agree.  Offsets with
q = 0 (possible at k = ceil(N/2) for odd N) are excluded from the per-k
average; if no offset survives, L(k) = 0.
"""
from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple

import numpy as np

from .errors import AdmissibilityError, DegenerateRegressionError, DomainError, EmptySubseriesError
from .series import TimeSeries


def ceil_half(n: int) -> int:
    return (n + 1) // 2


@dataclass(frozen=True)
class AdmissiblePair:
    """Input sizes (n, k_max) with n >= 2 and 1 <= k_max <= ceil(n/2)."""

    n: int
    k_max: int

    def __post_init__(self):
        if self.n < 2:
            raise AdmissibilityError(f"need n >= 2, got n={self.n}")
        if not 1 <= self.k_max <= ceil_half(self.n):
            raise AdmissibilityError(
                f"need 1 <= k_max <= ceil(n/2) = {ceil_half(self.n)}, got k_max={self.k_max}"
            )


def check_admissible(n: int, k_max: int) -> AdmissiblePair:
    return AdmissiblePair(n, k_max)


def _check_stride_offset(n: int, k: int, m: int) -> None:
    if n < 2:
        raise AdmissibilityError(f"need n >= 2, got n={n}")
    if not 1 <= m <= k:
        raise DomainError(f"need 1 <= m <= k, got m={m}, k={k}")


def increments_count(n: int, k: int, m: int) -> int:
    """Number of valid increments q = floor((n-m)/k) of the (k, m) subseries."""
    _check_stride_offset(n, k, m)
    if k > ceil_half(n):
        raise AdmissibilityError(f"need k <= ceil(n/2) = {ceil_half(n)}, got k={k}")
    return (n - m) // k


def normalization_constant(n: int, k: int, m: int) -> float:
    """Rescaling factor (n-1)/(q*k) mapping a subseries span onto [0, 1]."""
    q = increments_count(n, k, m)
    if q == 0:
        raise EmptySubseriesError(f"no increments for n={n}, k={k}, m={m}")
    return (n - 1) / (q * k)


def variation_sum(ts: TimeSeries, k: int, m: int) -> float:
    """Sum of |X(m+ik) - X(m+(i-1)k)| over i = 1..q, accumulated in
    ascending i order; 0 when q = 0."""
    n = ts.values.size
    _check_stride_offset(n, k, m)
    q = (n - m) // k
    if q < 1:
        return 0.0
    sub = ts.values[m - 1 : m - 1 + q * k + 1 : k]
    return float(np.cumsum(np.abs(np.diff(sub)))[-1])


class DetailRow(NamedTuple):
    """One (k, m) evaluation: normalization constant, increment sum, length."""

    k: int
    m: int
    c: float
    v: float
    length: float


def _length_table(ts: TimeSeries, k_max: int, want_detail: bool):
    n = ts.n
    check_admissible(n, k_max)
    lengths = np.zeros(k_max)
    detail = [] if want_detail else None
    for k in range(1, k_max + 1):
        terms = []
        for m in range(1, k + 1):
            q = (n - m) // k
            if q < 1:
                continue
            v = variation_sum(ts, k, m)
            c = (n - 1) / (q * k)
            length_m = c * v / k
            terms.append(length_m)
            if want_detail:
                detail.append(DetailRow(k, m, c, v, length_m))
        lengths[k - 1] = sum(terms) / len(terms) if terms else 0.0
    return lengths, detail


def curve_lengths(ts: TimeSeries, k_max: int) -> np.ndarray:
    """Per-stride lengths L(1..k_max).

    L(k) averages the normalized increment sums (1/k) * C * V over the
    offsets m with at least one increment; it is 0 when no offset has one.
    """
    lengths, _ = _length_table(ts, k_max, want_detail=False)
    return lengths


def regression_slope(points) -> Tuple[float, float]:
    """Least-squares slope and intercept through a set of (x, y) points.

    slope = sum((x - xbar)(y - ybar)) / sum((x - xbar)^2)
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
        raise DegenerateRegressionError("need at least two (x, y) points")
    x = pts[:, 0]
    y = pts[:, 1]
    dx = x - x.mean()
    denom = float(np.sum(dx * dx))
    if denom == 0.0:
        raise DegenerateRegressionError("all x coordinates are equal")
    slope = float(np.sum(dx * (y - y.mean())) / denom)
    intercept = float(y.mean() - slope * x.mean())
    return slope, intercept


def fit_lengths(lengths) -> Tuple[float, Optional[float], Tuple[int, ...], np.ndarray]:
    """Regress log L(k) on log(1/k) over the nonzero-length strides.

    Returns (slope, intercept, index_set, points).  The zero test on L(k)
    is exact: tiny nonzero lengths enter the fit, which is what makes the
    estimator perturbation-sensitive.  With one or zero usable strides the
    slope falls back to 1 and the intercept is None.
    """
    arr = np.asarray(lengths, dtype=float)
    index_set = tuple(k for k in range(1, arr.size + 1) if arr[k - 1] != 0.0)
    points = np.array(
        [(math.log(1.0 / k), math.log(arr[k - 1])) for k in index_set]
    ).reshape(len(index_set), 2)
    if len(index_set) <= 1:
        return 1.0, None, index_set, points
    slope, intercept = regression_slope(points)
    return slope, intercept, index_set, points


@dataclass(frozen=True)
class HfdResult:
    """Output of the estimator: lengths, usable strides, log-log points,
    regression slope (the dimension) and intercept."""

    n: int
    k_max: int
    lengths: np.ndarray
    index_set: Tuple[int, ...]
    points: np.ndarray
    slope: float
    intercept: Optional[float]
    detail: Optional[Tuple[DetailRow, ...]] = None

    def to_dict(self) -> dict:
        return {
            "N": self.n,
            "k_max": self.k_max,
            "D": self.slope,
            "intercept": self.intercept,
            "I": list(self.index_set),
            "Z": [[float(x), float(y)] for x, y in self.points],
            "L": [float(v) for v in self.lengths],
        }

    def to_json_text(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def points_csv_text(self) -> str:
        """Log-log points as CSV ``k,log_inv_k,log_L`` in ascending k."""
        buf = io.StringIO()
        buf.write("k,log_inv_k,log_L\n")
        for k, (x, y) in zip(self.index_set, self.points):
            buf.write(f"{k},{float(x)!r},{float(y)!r}\n")
        return buf.getvalue()


def hfd(ts: TimeSeries, k_max: int, detail: bool = False) -> HfdResult:
    """Estimate the fractal dimension of a sampled series.

    Parameters
    ----------
    ts : TimeSeries
        The sampled values.
    k_max : int
        Largest stride; (len(ts), k_max) must be admissible.
    detail : bool
        Keep the per-(k, m) table of constants, increment sums and lengths.
    """
    lengths, rows = _length_table(ts, k_max, want_detail=detail)
    slope, intercept, index_set, points = fit_lengths(lengths)
    return HfdResult(
        n=ts.n,
        k_max=k_max,
        lengths=lengths,
        index_set=index_set,
        points=points,
        slope=slope,
        intercept=intercept,
        detail=tuple(rows) if detail else None,
    )
