"""Singular time convolutions with power-law kernels.

Two building blocks: the one-dimensional Riesz-type convolution
|t - s|^(-alpha) * f(s) of a grid function, and the exact two-power
integral int_s^T (T-u)^(-theta) (u-s)^(-beta) du together with the
elementary splitting bound used to control it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import beta as beta_function

from .errors import NonIntegrable
from .gridfn import GridFunction

__all__ = [
    "riesz_convolution",
    "SingularIntegral",
    "singular_beta_integral",
]


def riesz_convolution(f: GridFunction, alpha: float) -> GridFunction:
    """Convolution (|.|^(-alpha) * f) evaluated at the cell midpoints.

    alpha must lie in (0, 1) for local integrability.  The kernel is
    integrated exactly over each source cell (piecewise-constant f), so the
    singularity at t = s needs no regularisation.
    """
    if not (0.0 < alpha < 1.0):
        raise NonIntegrable(f"alpha={alpha} outside (0,1)")
    h = f.cell_width
    mid = (np.arange(f.n) + 0.5) * h
    edges = np.arange(f.n + 1) * h
    # antiderivative of |e|^(-alpha) in e: sign(e) |e|^(1-alpha) / (1-alpha)
    e0 = mid[:, None] - edges[None, :-1]
    e1 = mid[:, None] - edges[None, 1:]
    g0 = np.sign(e0) * np.abs(e0) ** (1.0 - alpha)
    g1 = np.sign(e1) * np.abs(e1) ** (1.0 - alpha)
    weights = (g0 - g1) / (1.0 - alpha)
    return f.with_values(weights @ f.values)


@dataclass(frozen=True)
class SingularIntegral:
    value: float
    bound: float


def singular_beta_integral(T: float, s: float, theta: float, beta: float) -> SingularIntegral:
    """Exact value and splitting bound of int_s^T (T-u)^(-theta) (u-s)^(-beta) du.

    The value is (T-s)^(1-theta-beta) B(1-beta, 1-theta) with B the Euler
    beta function.  The bound splits the interval at the midpoint, keeping
    the non-singular factor at its maximum on each half:
    ((1-theta)^(-1) + (1-beta)^(-1)) ((T-s)/2)^(1-theta-beta).
    """
    if T <= s:
        raise ValueError(f"need T > s, got T={T}, s={s}")
    if theta >= 1.0 or beta >= 1.0:
        raise NonIntegrable(f"theta={theta}, beta={beta}: exponent >= 1")
    if theta < 0.0 or beta < 0.0:
        raise ValueError("theta and beta must be non-negative")
    span = T - s
    value = span ** (1.0 - theta - beta) * float(beta_function(1.0 - beta, 1.0 - theta))
    bound = (1.0 / (1.0 - theta) + 1.0 / (1.0 - beta)) * (span / 2.0) ** (1.0 - theta - beta)
    if math.isnan(value) or value > bound * (1.0 + 1e-12):
        raise AssertionError("splitting bound violated; check exponents")
    return SingularIntegral(value=value, bound=bound)
