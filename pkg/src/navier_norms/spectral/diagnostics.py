"""Norm trajectories and the derived time diagnostics: mixed space-time
Lebesgue norms, weighted singular time integrals, energy-inequality
residuals, and the L^6-vs-gradient monitor."""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid

from ..errors import MissingSamples, NonIntegrable
from . import field as sf

__all__ = [
    "NormTrajectory",
    "EnergyReport",
    "build_energy_report",
    "energy_report",
    "mixed_norm",
    "weighted_singular_integral",
    "gn_check",
]


@dataclass
class NormTrajectory:
    """Sampled spatial norms: times plus {(k, r): values} series."""

    times: np.ndarray
    samples: dict

    def __post_init__(self):
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("sample times must be strictly increasing")
        for pair, vals in self.samples.items():
            if len(vals) != len(self.times):
                raise ValueError(f"series {pair} length mismatch")
            if np.any(np.asarray(vals) < 0):
                raise ValueError(f"series {pair} has negative values")

    def series(self, k: int, r: float) -> np.ndarray:
        key = (int(k), float(r))
        if key not in self.samples:
            raise MissingSamples(f"no samples for (k, r) = {key}")
        return np.asarray(self.samples[key])

    def records(self):
        """Flat (t, k, r, value) rows, for serialization."""
        for (k, r), vals in sorted(self.samples.items()):
            for t, v in zip(self.times, vals):
                yield (float(t), k, r, float(v))


@dataclass
class EnergyReport:
    times: np.ndarray = dc_field(repr=False)
    energy: np.ndarray = dc_field(repr=False)
    dissipation: np.ndarray = dc_field(repr=False)
    forcing_work: np.ndarray = dc_field(repr=False)
    leray_residuals: tuple[float, float] = (0.0, 0.0)
    energy_balance_residual: float = 0.0

    def __post_init__(self):
        if np.any(self.energy < 0) or np.any(self.dissipation < 0):
            raise ValueError("energy and dissipation must be non-negative")


def build_energy_report(
    times: np.ndarray,
    energy: np.ndarray,
    dissipation: np.ndarray,
    forcing_work: np.ndarray,
    forcing_l2: np.ndarray,
    nu: float,
) -> EnergyReport:
    """Assemble the report from per-step series.

    leray_residuals holds the worst-case margins of the two a-priori
    inequalities (non-negative margins mean the inequality holds):
    the L^2 bound |u(t)| <= |u_0| + 1/2 int_0^T |f|, and the dissipation
    bound int_0^t |grad u|^2 <= nu^-1 (|u_0|^2 + |u(t)| int_0^t |f|).
    """
    u_l2 = np.sqrt(2.0 * energy)
    f_total = trapezoid(forcing_l2, times)
    margin_l2 = float(np.min(u_l2[0] + 0.5 * f_total - u_l2))
    cum_grad = cumulative_trapezoid(dissipation / nu, times, initial=0.0)
    cum_f = cumulative_trapezoid(forcing_l2, times, initial=0.0)
    margin_diss = float(np.min((u_l2[0] ** 2 + u_l2 * cum_f) / nu - cum_grad))
    balance = abs(
        energy[-1]
        - energy[0]
        + trapezoid(dissipation, times)
        - trapezoid(forcing_work, times)
    )
    scale = max(energy[0], np.finfo(float).tiny)
    return EnergyReport(
        times=times,
        energy=energy,
        dissipation=dissipation,
        forcing_work=forcing_work,
        leray_residuals=(margin_l2, margin_diss),
        energy_balance_residual=balance / scale,
    )


def energy_report(fields, times, nu: float, forcing=None) -> EnergyReport:
    """Report from a sampled field trajectory (coarser than the per-step
    series the solver accumulates, but self-contained)."""
    times = np.asarray(times, dtype=float)
    energy = np.array([0.5 * sf.spectral_l2_sq(f.coeffs, f.N) for f in fields])
    dissipation = np.array(
        [nu * sf.spectral_gradient_l2_sq(f.coeffs, f.N) for f in fields]
    )
    if forcing is None:
        work = np.zeros_like(times)
        f_l2 = np.zeros_like(times)
    else:
        w = sf.hermitian_weights(fields[0].N)
        work, f_l2 = [], []
        for t, f in zip(times, fields):
            fhat = forcing(t)
            work.append(float(sf.BOX_VOLUME * np.sum(w * (fhat * np.conj(f.coeffs)).real)))
            f_l2.append(math.sqrt(sf.spectral_l2_sq(fhat, f.N)))
        work, f_l2 = np.asarray(work), np.asarray(f_l2)
    return build_energy_report(times, energy, dissipation, work, f_l2, nu)


def mixed_norm(traj: NormTrajectory, k: int, r: float, r_tilde: float) -> float:
    """Time norm of the sampled series: (int value^r_tilde dt)^(1/r_tilde)
    by trapezoid over the sample times, sup for r_tilde = inf."""
    vals = traj.series(k, r)
    if r_tilde == math.inf:
        return float(np.max(vals))
    if r_tilde < 1:
        raise ValueError(f"r_tilde={r_tilde} must be >= 1 or inf")
    return float(trapezoid(vals**r_tilde, traj.times)) ** (1.0 / r_tilde)


def weighted_singular_integral(traj: NormTrajectory, k: int, r: float, theta: float, T: float | None = None) -> float:
    """int_0^T (T-t)^(-theta) value(t) dt for theta < 1.

    The sampled series is interpolated linearly and each piece is
    integrated exactly against the singular weight, so the endpoint
    singularity needs no special grading.
    """
    if theta >= 1.0:
        raise NonIntegrable(f"theta={theta} >= 1")
    if theta < 0.0:
        raise ValueError(f"theta={theta} must be non-negative")
    vals = traj.series(k, r)
    times = traj.times
    if T is None:
        T = float(times[-1])
    if T < times[-1] - 1e-12:
        raise ValueError("T must cover the sampled interval")
    total = 0.0
    for t0, t1, v0, v1 in zip(times[:-1], times[1:], vals[:-1], vals[1:]):
        slope = (v1 - v0) / (t1 - t0)
        A = v0 + slope * (T - t0)  # value as a function of u = T - t: A - slope*u
        u0, u1 = T - t0, max(T - t1, 0.0)
        total += A * (u0 ** (1.0 - theta) - u1 ** (1.0 - theta)) / (1.0 - theta)
        total -= slope * (u0 ** (2.0 - theta) - u1 ** (2.0 - theta)) / (2.0 - theta)
    return total


def gn_check(f: sf.SpectralField) -> tuple[float, float]:
    """Pointwise-in-time pair (|u|_{L^6}^2, |grad u|_{L^2}^2) whose time
    integrals are related by the Sobolev-type inequality."""
    lhs = sf.lebesgue_norm(f, 0, 6.0) ** 2
    rhs = sf.spectral_gradient_l2_sq(f.coeffs, f.N)
    return lhs, rhs
