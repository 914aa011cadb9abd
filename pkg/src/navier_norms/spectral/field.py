"""Divergence-free periodic vector fields in spectral representation.

The domain is the torus [0, 2pi)^3, used as a computable surrogate for
whole space: every diagnostic downstream is a finiteness/stability check on
the torus, not a statement about the Cauchy problem on R^3.

Coefficients are stored in the real-transform layout of shape
(3, N, N, N//2 + 1) with the convention u(x) = sum_k uhat(k) exp(i k.x)
(forward-normalised transforms), so uhat(0) is the mean of u.
"""

from __future__ import annotations

import functools
import os
from dataclasses import dataclass, field

import numpy as np
import scipy.fft

__all__ = [
    "SpectralField",
    "fft_workers",
    "wavenumbers",
    "hermitian_weights",
    "dealias_mask",
    "to_physical",
    "to_spectral",
    "dealias",
    "leray_project_coeffs",
    "leray_project",
    "init_taylor_green",
    "random_solenoidal",
    "vorticity",
    "biot_savart",
    "divergence_error",
    "spectral_l2_sq",
    "spectral_gradient_l2_sq",
    "lebesgue_norm",
]

TWO_PI = 2.0 * np.pi
BOX_VOLUME = TWO_PI**3


def fft_workers() -> int:
    """Worker count for the transforms, capped by NAVIER_NORMS_THREADS."""
    cap = os.environ.get("NAVIER_NORMS_THREADS")
    avail = os.cpu_count() or 1
    if cap is None:
        return avail
    return max(1, min(avail, int(cap)))


@functools.lru_cache(maxsize=8)
def wavenumbers(N: int):
    """Integer wavenumber components (kx, ky, kz) broadcastable over the
    spectral layout, plus |k|^2."""
    k_full = np.fft.fftfreq(N, d=1.0 / N)
    k_half = np.fft.rfftfreq(N, d=1.0 / N)
    kx = k_full[:, None, None]
    ky = k_full[None, :, None]
    kz = k_half[None, None, :]
    k2 = kx**2 + ky**2 + kz**2
    return kx, ky, kz, k2


@functools.lru_cache(maxsize=8)
def hermitian_weights(N: int) -> np.ndarray:
    """Multiplicity of each stored mode in the full lattice sum.

    The half-spectrum stores one of each conjugate pair except on the
    kz = 0 and kz = N/2 planes, which are self-conjugate.
    """
    w = np.full(N // 2 + 1, 2.0)
    w[0] = 1.0
    if N % 2 == 0:
        w[-1] = 1.0
    return w[None, None, :]


@functools.lru_cache(maxsize=8)
def dealias_mask(N: int) -> np.ndarray:
    """True on modes kept by the 2/3 rule (|k_i| <= N/3 on every axis)."""
    kx, ky, kz, _ = wavenumbers(N)
    cut = N / 3.0
    return (np.abs(kx) <= cut) & (np.abs(ky) <= cut) & (np.abs(kz) <= cut)


@dataclass
class SpectralField:
    """Velocity field as forward-normalised real-transform coefficients."""

    N: int
    nu: float
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.N < 8 or self.N & (self.N - 1):
            raise ValueError(f"N={self.N} must be a power of two >= 8")
        if self.nu <= 0:
            raise ValueError(f"nu={self.nu} must be positive")
        expected = (3, self.N, self.N, self.N // 2 + 1)
        if self.coeffs.shape != expected:
            raise ValueError(f"coeffs shape {self.coeffs.shape}, expected {expected}")

    def copy(self) -> "SpectralField":
        return SpectralField(N=self.N, nu=self.nu, coeffs=self.coeffs.copy())


def to_physical(coeffs: np.ndarray, N: int) -> np.ndarray:
    """Inverse transform to the N^3 collocation grid (any leading axes)."""
    return scipy.fft.irfftn(
        coeffs, s=(N, N, N), axes=(-3, -2, -1), norm="forward", workers=fft_workers()
    )


def to_spectral(u: np.ndarray) -> np.ndarray:
    """Forward transform from the collocation grid (any leading axes)."""
    return scipy.fft.rfftn(u, axes=(-3, -2, -1), norm="forward", workers=fft_workers())


def dealias(coeffs: np.ndarray, N: int) -> np.ndarray:
    return coeffs * dealias_mask(N)


def leray_project_coeffs(coeffs: np.ndarray, N: int) -> np.ndarray:
    """Mode-wise orthogonal projection onto divergence-free fields,
    uhat - k (k.uhat)/|k|^2; the zero mode is untouched."""
    kx, ky, kz, k2 = wavenumbers(N)
    k2_safe = np.where(k2 == 0, 1.0, k2)
    kdotu = kx * coeffs[0] + ky * coeffs[1] + kz * coeffs[2]
    factor = np.where(k2 == 0, 0.0, kdotu / k2_safe)
    out = coeffs.copy()
    out[0] -= kx * factor
    out[1] -= ky * factor
    out[2] -= kz * factor
    return out


def leray_project(f: SpectralField) -> SpectralField:
    return SpectralField(N=f.N, nu=f.nu, coeffs=leray_project_coeffs(f.coeffs, f.N))


def init_taylor_green(N: int, nu: float) -> SpectralField:
    """Standard divergence-free benchmark datum
    u0 = (sin x cos y cos z, -cos x sin y cos z, 0)."""
    x = np.arange(N) * (TWO_PI / N)
    X = x[:, None, None]
    Y = x[None, :, None]
    Z = x[None, None, :]
    u = np.empty((3, N, N, N))
    u[0] = np.sin(X) * np.cos(Y) * np.cos(Z)
    u[1] = -np.cos(X) * np.sin(Y) * np.cos(Z)
    u[2] = 0.0
    return SpectralField(N=N, nu=nu, coeffs=to_spectral(u))


def random_solenoidal(N: int, nu: float, rng: np.random.Generator, decay: float = 2.0) -> SpectralField:
    """Random smooth divergence-free field with |uhat| ~ (1+|k|^2)^(-decay)."""
    u = rng.standard_normal((3, N, N, N))
    coeffs = to_spectral(u)
    _, _, _, k2 = wavenumbers(N)
    coeffs *= (1.0 + k2) ** (-decay)
    coeffs = dealias(leray_project_coeffs(coeffs, N), N)
    coeffs[:, 0, 0, 0] = 0.0
    return SpectralField(N=N, nu=nu, coeffs=coeffs)


def vorticity(f: SpectralField) -> SpectralField:
    """Curl in spectral space, omegahat = i k x uhat."""
    kx, ky, kz, _ = wavenumbers(f.N)
    u = f.coeffs
    w = np.empty_like(u)
    w[0] = 1j * (ky * u[2] - kz * u[1])
    w[1] = 1j * (kz * u[0] - kx * u[2])
    w[2] = 1j * (kx * u[1] - ky * u[0])
    return SpectralField(N=f.N, nu=f.nu, coeffs=w)


def biot_savart(omega: SpectralField) -> SpectralField:
    """Velocity from vorticity, uhat = i k x omegahat / |k|^2 (zero mean)."""
    kx, ky, kz, k2 = wavenumbers(omega.N)
    k2_safe = np.where(k2 == 0, 1.0, k2)
    w = omega.coeffs
    u = np.empty_like(w)
    u[0] = 1j * (ky * w[2] - kz * w[1]) / k2_safe
    u[1] = 1j * (kz * w[0] - kx * w[2]) / k2_safe
    u[2] = 1j * (kx * w[1] - ky * w[0]) / k2_safe
    u[:, 0, 0, 0] = 0.0
    return SpectralField(N=omega.N, nu=omega.nu, coeffs=u)


def divergence_error(f: SpectralField, rel_floor: float = 1e-6) -> float:
    """max over modes of |k.uhat| / (|k| |uhat|).

    Modes below ``rel_floor`` times the peak amplitude are skipped: their
    coefficients sit at the roundoff floor of the projection, where the
    mode-wise ratio measures cancellation noise rather than divergence.
    """
    kx, ky, kz, k2 = wavenumbers(f.N)
    u = f.coeffs
    kdotu = np.abs(kx * u[0] + ky * u[1] + kz * u[2])
    umag = np.sqrt(np.abs(u[0]) ** 2 + np.abs(u[1]) ** 2 + np.abs(u[2]) ** 2)
    kmag = np.sqrt(k2)
    peak = float(umag.max())
    if peak == 0.0:
        return 0.0
    mask = (umag > rel_floor * peak) & (k2 > 0)
    if not np.any(mask):
        return 0.0
    return float(np.max(kdotu[mask] / (kmag[mask] * umag[mask])))


def spectral_l2_sq(coeffs: np.ndarray, N: int) -> float:
    """Parseval sum (2pi)^3 sum_k |uhat(k)|^2 over the full lattice."""
    w = hermitian_weights(N)
    return float(BOX_VOLUME * np.sum(w * np.abs(coeffs) ** 2))


def spectral_gradient_l2_sq(coeffs: np.ndarray, N: int) -> float:
    """Parseval sum for the full velocity gradient, (2pi)^3 sum |k|^2 |uhat|^2."""
    _, _, _, k2 = wavenumbers(N)
    w = hermitian_weights(N)
    return float(BOX_VOLUME * np.sum(w * k2 * np.abs(coeffs) ** 2))


def _derivative_stack(f: SpectralField, k: int) -> np.ndarray:
    """Spectral coefficients of all order-k derivative components."""
    if k == 0:
        return f.coeffs
    kx, ky, kz, _ = wavenumbers(f.N)
    kvec = (kx, ky, kz)
    if k == 1:
        return np.stack([1j * kb * f.coeffs[a] for a in range(3) for kb in kvec])
    if k == 2:
        return np.stack(
            [-kb * kc * f.coeffs[a] for a in range(3) for kb in kvec for kc in kvec]
        )
    raise ValueError(f"derivative order k={k} outside 0..2")


def lebesgue_norm(f: SpectralField, k: int, r: float) -> float:
    """Spatial L^r norm of |grad^k u| (Frobenius magnitude of the full
    derivative tensor), by collocation-grid quadrature; max for r = inf."""
    if r != np.inf and r < 1:
        raise ValueError(f"r={r} must be >= 1 or inf")
    comps = to_physical(_derivative_stack(f, k), f.N)
    mag = np.sqrt(np.sum(comps**2, axis=0))
    if r == np.inf:
        return float(mag.max())
    return float(np.mean(mag**r) * BOX_VOLUME) ** (1.0 / r)
