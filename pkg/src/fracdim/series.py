"""Uniformly sampled time series on [0, 1] and single-sample perturbations.

A series of length N holds the values X(1), ..., X(N) of a function sampled
at t = (j-1)/(N-1).  Storage is 0-based; every public argument named ``j``
uses the 1-based convention.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .errors import AdmissibilityError, DomainError

if TYPE_CHECKING:
    from .signals import SignalSpec

SERIES_CSV_HEADER = ("j", "t", "x")


def sample_grid(n: int) -> np.ndarray:
    """Grid points (j-1)/(n-1) for j = 1..n as an exact integer/integer division."""
    if n < 2:
        raise AdmissibilityError(f"need at least 2 samples, got n={n}")
    return np.arange(n, dtype=float) / (n - 1)


@dataclass(frozen=True)
class TimeSeries:
    """Immutable vector of sampled values X(1..N), N >= 2, all finite."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.array(self.values, dtype=float, copy=True)
        if arr.ndim != 1 or arr.size < 2:
            raise AdmissibilityError("a time series needs at least 2 values")
        if not np.all(np.isfinite(arr)):
            raise DomainError("time series values must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def grid(self) -> np.ndarray:
        return sample_grid(self.n)

    def __len__(self) -> int:
        return self.values.size


def sample(spec: "SignalSpec", n: int) -> TimeSeries:
    """Sample a signal at the n uniform grid points of [0, 1]."""
    if n < 2:
        raise AdmissibilityError(f"need at least 2 samples, got n={n}")
    return TimeSeries(spec.sample_values(n))


def perturb(ts: TimeSeries, j: int, eps: float) -> TimeSeries:
    """Return a copy of ``ts`` with value j (1-based) increased by ``eps``.

    Every other entry is bit-identical to the input.
    """
    if not 1 <= j <= ts.n:
        raise IndexError(f"index j={j} outside 1..{ts.n}")
    values = ts.values.copy()
    values[j - 1] += eps
    return TimeSeries(values)


def to_csv_text(ts: TimeSeries) -> str:
    """Render as CSV with header ``j,t,x``; floats at 17 significant digits."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SERIES_CSV_HEADER)
    grid = ts.grid
    for j in range(1, ts.n + 1):
        writer.writerow((j, format(grid[j - 1], ".17g"), format(ts.values[j - 1], ".17g")))
    return buf.getvalue()


def write_csv(ts: TimeSeries, path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(to_csv_text(ts))


def from_csv_text(text: str) -> TimeSeries:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or tuple(h.strip() for h in header) != SERIES_CSV_HEADER:
        raise DomainError(f"expected header {','.join(SERIES_CSV_HEADER)}")
    values = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        try:
            values.append(float(row[2]))
        except (IndexError, ValueError) as exc:
            raise DomainError(f"malformed series row at line {lineno}: {row!r}") from exc
    return TimeSeries(np.asarray(values))


def read_csv(path) -> TimeSeries:
    with open(path, "r", newline="") as fh:
        return from_csv_text(fh.read())
