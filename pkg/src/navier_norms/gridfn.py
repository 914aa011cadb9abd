"""Non-negative functions sampled on a uniform grid over [0, T], together
with their distribution function, monotone rearrangements and L^p norms.

The model is piecewise-constant on n equal cells, which makes every
rearrangement statement exact: rearranging is sorting the cell values, and
the distribution function is a cell count times the cell width.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import GridMismatch

__all__ = [
    "GridFunction",
    "RearrangementReport",
    "distribution_function",
    "decreasing_rearrangement",
    "increasing_rearrangement",
    "hardy_littlewood_pairing",
    "lp_norm",
    "rearrangement_report",
]


@dataclass(frozen=True)
class GridFunction:
    """Piecewise-constant function on n equal cells of [0, T], values >= 0."""

    T: float
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if self.T <= 0:
            raise ValueError(f"T={self.T} must be positive")
        if values.ndim != 1 or values.size < 1:
            raise ValueError("values must be a non-empty 1-d array")
        if not np.all(np.isfinite(values)):
            raise ValueError("values must be finite")
        if np.any(values < 0):
            raise ValueError("values must be non-negative")

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def cell_width(self) -> float:
        return self.T / self.n

    def with_values(self, values) -> "GridFunction":
        return GridFunction(T=self.T, values=np.asarray(values, dtype=float))

    def same_grid(self, other: "GridFunction") -> bool:
        return self.n == other.n and self.T == other.T

    def __pow__(self, p: float) -> "GridFunction":
        return self.with_values(self.values**p)


@dataclass(frozen=True)
class RearrangementReport:
    original: GridFunction
    rearranged: GridFunction
    direction: str
    p_norms_checked: list = field(default_factory=list)


def distribution_function(f: GridFunction, s: float) -> float:
    """Lebesgue measure of the super-level set {t : f(t) > s}."""
    if s < 0:
        raise ValueError(f"level s={s} must be >= 0")
    return float(np.count_nonzero(f.values > s)) * f.cell_width


def decreasing_rearrangement(f: GridFunction) -> GridFunction:
    """Equimeasurable non-increasing version of f (cell values sorted down)."""
    return f.with_values(np.sort(f.values)[::-1])


def increasing_rearrangement(f: GridFunction) -> GridFunction:
    """Equimeasurable non-decreasing version of f (cell values sorted up)."""
    return f.with_values(np.sort(f.values))


def lp_norm(f: GridFunction, p: float) -> float:
    """L^p norm of the piecewise-constant function; max of the values for p = inf."""
    if p == math.inf:
        return float(np.max(f.values))
    if p <= 0:
        raise ValueError(f"p={p} must be positive or inf")
    return float(np.sum(f.values**p) * f.cell_width) ** (1.0 / p)


def hardy_littlewood_pairing(f: GridFunction, g: GridFunction) -> tuple[float, float]:
    """(integral of f*g, integral of the matched increasing rearrangements).

    The second value always dominates the first.
    """
    if not f.same_grid(g):
        raise GridMismatch(f"grids differ: (n={f.n}, T={f.T}) vs (n={g.n}, T={g.T})")
    h = f.cell_width
    lhs = float(np.dot(f.values, g.values)) * h
    rhs = float(np.dot(np.sort(f.values), np.sort(g.values))) * h
    return lhs, rhs


def rearrangement_report(
    f: GridFunction,
    direction: str = "increasing",
    ps: Sequence[float] = (0.5, 1.0, 2.0, 5.0, math.inf),
) -> RearrangementReport:
    """Rearrange f and record the L^p norms of both versions for each p."""
    if direction == "increasing":
        g = increasing_rearrangement(f)
    elif direction == "decreasing":
        g = decreasing_rearrangement(f)
    else:
        raise ValueError(f"direction={direction!r}")
    checked = [(p, lp_norm(f, p), lp_norm(g, p)) for p in ps]
    return RearrangementReport(original=f, rearranged=g, direction=direction, p_norms_checked=checked)
