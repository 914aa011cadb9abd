import math
import warnings

import numpy as np
import pytest
from scipy.integrate import trapezoid

from navier_norms.errors import CFLViolation, MissingSamples, NonFinite, NonIntegrable
from navier_norms.spectral import (
    NormTrajectory,
    SolverConfig,
    SpectralField,
    biot_savart,
    divergence_error,
    gn_check,
    init_taylor_green,
    mixed_norm,
    random_solenoidal,
    simulate,
    step,
    vorticity,
    weighted_singular_integral,
)
from navier_norms.spectral import io as spio
from navier_norms.spectral.field import (
    BOX_VOLUME,
    lebesgue_norm,
    leray_project_coeffs,
    spectral_gradient_l2_sq,
    spectral_l2_sq,
    wavenumbers,
)
from navier_norms.spectral.solver import nonlinear_term

N = 16


def random_coeffs(rng, n=N):
    shape = (3, n, n, n // 2 + 1)
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


# -- projection ---------------------------------------------------------------


def test_projection_idempotent_and_divergence_free():
    rng = np.random.default_rng(0)
    c = random_coeffs(rng)
    p = leray_project_coeffs(c, N)
    assert np.allclose(leray_project_coeffs(p, N), p, atol=1e-14)
    kx, ky, kz, _ = wavenumbers(N)
    div = kx * p[0] + ky * p[1] + kz * p[2]
    assert np.max(np.abs(div)) < 1e-12


def test_projection_kills_gradients():
    rng = np.random.default_rng(1)
    phi = rng.standard_normal((N, N, N // 2 + 1)) + 1j * rng.standard_normal(
        (N, N, N // 2 + 1)
    )
    kx, ky, kz, _ = wavenumbers(N)
    grad = np.stack([1j * kx * phi, 1j * ky * phi, 1j * kz * phi])
    grad[:, 0, 0, 0] = 0.0
    assert np.max(np.abs(leray_project_coeffs(grad, N))) < 1e-12


def test_projection_is_orthogonal():
    rng = np.random.default_rng(2)
    c = random_coeffs(rng)
    p = leray_project_coeffs(c, N)
    inner = np.sum((p * np.conj(c - p)).real)
    assert abs(inner) < 1e-10 * np.sum(np.abs(c) ** 2)


# -- initial data and differential operators ----------------------------------


def test_taylor_green_structure():
    f = init_taylor_green(N, nu=0.1)
    kx, ky, kz, _ = wavenumbers(N)
    high = (np.abs(kx) > 1) | (np.abs(ky) > 1) | (np.abs(kz) > 1)
    assert np.max(np.abs(f.coeffs[:, high])) < 1e-14
    assert divergence_error(f) < 1e-13
    assert spectral_l2_sq(f.coeffs, N) == pytest.approx(2.0 * math.pi**3, rel=1e-12)
    assert lebesgue_norm(f, 0, 2.0) ** 2 == pytest.approx(2.0 * math.pi**3, rel=1e-12)


def test_random_solenoidal_is_divergence_free():
    f = random_solenoidal(N, 0.1, np.random.default_rng(3))
    assert divergence_error(f) < 1e-12
    assert abs(f.coeffs[0, 0, 0, 0]) == 0.0


def test_vorticity_of_gradient_vanishes():
    rng = np.random.default_rng(4)
    phi = rng.standard_normal((N, N, N // 2 + 1)) * (1.0 + 0.0j)
    kx, ky, kz, _ = wavenumbers(N)
    grad = np.stack([1j * kx * phi, 1j * ky * phi, 1j * kz * phi])
    f = SpectralField(N=N, nu=1.0, coeffs=grad)
    assert np.max(np.abs(vorticity(f).coeffs)) < 1e-12


def test_vorticity_is_solenoidal():
    f = random_solenoidal(N, 0.1, np.random.default_rng(5))
    w = vorticity(f)
    kx, ky, kz, _ = wavenumbers(N)
    div = kx * w.coeffs[0] + ky * w.coeffs[1] + kz * w.coeffs[2]
    assert np.max(np.abs(div)) < 1e-11


def test_biot_savart_inverts_vorticity():
    f = random_solenoidal(N, 0.1, np.random.default_rng(6))
    g = biot_savart(vorticity(f))
    assert np.max(np.abs(g.coeffs - f.coeffs)) < 1e-12


# -- norms --------------------------------------------------------------------


def test_plancherel_identity():
    f = random_solenoidal(N, 0.1, np.random.default_rng(7))
    assert lebesgue_norm(f, 0, 2.0) ** 2 == pytest.approx(
        spectral_l2_sq(f.coeffs, N), rel=1e-12
    )
    assert lebesgue_norm(f, 1, 2.0) ** 2 == pytest.approx(
        spectral_gradient_l2_sq(f.coeffs, N), rel=1e-12
    )


@pytest.mark.parametrize("r", [1.0, 2.0, 3.0, math.inf])
def test_constant_field_norms(r):
    c = np.zeros((3, N, N, N // 2 + 1), dtype=complex)
    c[0, 0, 0, 0] = 3.0
    c[1, 0, 0, 0] = 4.0
    f = SpectralField(N=N, nu=1.0, coeffs=c)
    expected = 5.0 if r == math.inf else 5.0 * BOX_VOLUME ** (1.0 / r)
    assert lebesgue_norm(f, 0, r) == pytest.approx(expected, rel=1e-12)
    assert lebesgue_norm(f, 1, 2.0) == pytest.approx(0.0, abs=1e-12)


def test_lebesgue_norm_rejects_small_r():
    f = init_taylor_green(N, 0.1)
    with pytest.raises(ValueError):
        lebesgue_norm(f, 0, 0.5)


def test_divergence_error_zero_field():
    f = SpectralField(N=N, nu=1.0, coeffs=np.zeros((3, N, N, N // 2 + 1), dtype=complex))
    assert divergence_error(f) == 0.0


def test_field_validation():
    with pytest.raises(ValueError):
        SpectralField(N=12, nu=1.0, coeffs=np.zeros((3, 12, 12, 7), dtype=complex))
    with pytest.raises(ValueError):
        SpectralField(N=16, nu=0.0, coeffs=np.zeros((3, 16, 16, 9), dtype=complex))
    with pytest.raises(ValueError):
        SpectralField(N=16, nu=1.0, coeffs=np.zeros((3, 16, 16, 8), dtype=complex))


# -- time stepping ------------------------------------------------------------


def test_single_mode_viscous_decay():
    nu, dt = 0.3, 0.01
    c = np.zeros((3, N, N, N // 2 + 1), dtype=complex)
    c[0, 0, 0, 1] = 1.0  # k = (0, 0, 1), velocity along x: divergence-free
    f = SpectralField(N=N, nu=nu, coeffs=c)
    for _ in range(5):
        f = step(f, dt, disable_nonlinear=True)
    expected = math.exp(-nu * 1.0 * 5 * dt)
    assert abs(f.coeffs[0, 0, 0, 1] - expected) < 1e-10
    other = f.coeffs.copy()
    other[0, 0, 0, 1] = 0.0
    assert np.max(np.abs(other)) < 1e-14


def test_zero_field_stays_zero():
    f = SpectralField(N=N, nu=0.1, coeffs=np.zeros((3, N, N, N // 2 + 1), dtype=complex))
    g = step(f, 0.01)
    assert np.max(np.abs(g.coeffs)) == 0.0


def test_step_convergence_order():
    # difference between one step of size dt and two of size dt/2 is O(dt^5)
    f0 = random_solenoidal(N, 0.05, np.random.default_rng(8))

    def gap(dt):
        one = step(f0, dt)
        two = step(step(f0, dt / 2.0), dt / 2.0)
        return float(np.max(np.abs(one.coeffs - two.coeffs)))

    g1, g2 = gap(0.1), gap(0.05)
    assert g2 < g1 / 8.0


def test_nonlinear_term_is_divergence_free_and_dealiased():
    f = random_solenoidal(N, 0.1, np.random.default_rng(9))
    out = nonlinear_term(f.coeffs, N)
    kx, ky, kz, _ = wavenumbers(N)
    div = kx * out[0] + ky * out[1] + kz * out[2]
    assert np.max(np.abs(div)) < 1e-12
    high = (np.abs(kx) > N / 3.0) | (np.abs(ky) > N / 3.0) | (np.abs(kz) > N / 3.0)
    assert np.max(np.abs(np.broadcast_to(high, out[0].shape) * out)) == 0.0


def test_cfl_advisory_warning():
    c = np.zeros((3, N, N, N // 2 + 1), dtype=complex)
    c[0, 0, 0, 1] = 50.0
    f = SpectralField(N=N, nu=0.1, coeffs=c)
    with pytest.warns(CFLViolation):
        step(f, 1.0, check_cfl=True)


def test_simulate_is_deterministic():
    config = SolverConfig(N=16, nu=0.1, dt=5e-3, T=0.05, sample_stride=2)
    _, t1, r1 = simulate(config)
    _, t2, r2 = simulate(config)
    for pair in t1.samples:
        assert np.array_equal(t1.samples[pair], t2.samples[pair])
    assert np.array_equal(r1.energy, r2.energy)


def test_unforced_energy_decays():
    config = SolverConfig(N=16, nu=0.2, dt=5e-3, T=0.1, sample_stride=4)
    _, _, report = simulate(config)
    assert np.all(np.diff(report.energy) < 0)
    assert report.leray_residuals[0] >= -1e-12
    assert report.leray_residuals[1] >= -1e-12


def test_blowup_raises_nonfinite():
    config = SolverConfig(N=8, nu=1e-4, dt=10.0, T=100.0, sample_stride=1)
    with warnings.catch_warnings(), np.errstate(over="ignore", invalid="ignore"):
        warnings.simplefilter("ignore")
        with pytest.raises(NonFinite):
            simulate(config)


def test_solver_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(N=16, dt=0.0)
    with pytest.raises(ValueError):
        SolverConfig(N=4)
    with pytest.raises(ValueError):
        SolverConfig(N=16, initial_condition="vortex").make_initial_field()


# -- time diagnostics ---------------------------------------------------------


def flat_trajectory(value=2.0, T=1.0, n=11):
    times = np.linspace(0.0, T, n)
    return NormTrajectory(times=times, samples={(0, 2.0): np.full(n, value)})


def test_mixed_norm_constant_series():
    traj = flat_trajectory(value=2.0, T=3.0)
    assert mixed_norm(traj, 0, 2.0, 4.0) == pytest.approx(2.0 * 3.0**0.25, rel=1e-12)
    assert mixed_norm(traj, 0, 2.0, math.inf) == 2.0
    with pytest.raises(MissingSamples):
        mixed_norm(traj, 1, 3.0, 2.0)
    with pytest.raises(ValueError):
        mixed_norm(traj, 0, 2.0, 0.5)


def test_weighted_integral_constant_series():
    v, T, theta = 2.0, 1.0, 0.4
    traj = flat_trajectory(value=v, T=T)
    expected = v * T ** (1.0 - theta) / (1.0 - theta)
    assert weighted_singular_integral(traj, 0, 2.0, theta) == pytest.approx(
        expected, rel=1e-12
    )


def test_weighted_integral_theta_zero_is_plain_integral():
    rng = np.random.default_rng(10)
    times = np.linspace(0.0, 1.0, 40)
    vals = rng.uniform(0.5, 2.0, 40)
    traj = NormTrajectory(times=times, samples={(0, 2.0): vals})
    assert weighted_singular_integral(traj, 0, 2.0, 0.0) == pytest.approx(
        trapezoid(vals, times), rel=1e-12
    )


def test_weighted_integral_rejects_nonintegrable():
    traj = flat_trajectory()
    with pytest.raises(NonIntegrable):
        weighted_singular_integral(traj, 0, 2.0, 1.0)
    with pytest.raises(ValueError):
        weighted_singular_integral(traj, 0, 2.0, -0.2)
    with pytest.raises(ValueError):
        weighted_singular_integral(traj, 0, 2.0, 0.5, T=0.5)


def test_gn_check_zero_field():
    f = SpectralField(N=N, nu=1.0, coeffs=np.zeros((3, N, N, N // 2 + 1), dtype=complex))
    assert gn_check(f) == (0.0, 0.0)


def test_trajectory_validation():
    with pytest.raises(ValueError):
        NormTrajectory(times=np.array([0.0, 0.0]), samples={})
    with pytest.raises(ValueError):
        NormTrajectory(times=np.array([0.0, 1.0]), samples={(0, 2.0): np.ones(3)})


# -- serialization ------------------------------------------------------------


def test_norm_csv_roundtrip(tmp_path):
    traj = NormTrajectory(
        times=np.array([0.0, 0.5, 1.0]),
        samples={(0, 2.0): np.array([1.0, 2.0, 3.0]), (1, math.inf): np.ones(3)},
    )
    path = tmp_path / "norms.csv"
    spio.write_norm_csv(traj, path)
    back = spio.read_norm_csv(path)
    assert np.array_equal(back.times, traj.times)
    for pair in traj.samples:
        assert np.array_equal(back.samples[pair], traj.samples[pair])


def test_snapshot_roundtrip(tmp_path):
    f = random_solenoidal(N, 0.1, np.random.default_rng(11))
    path = tmp_path / "snap.bin"
    spio.write_snapshot(f, 0.25, path)
    g, t = spio.read_snapshot(path, nu=0.1)
    assert t == 0.25
    assert np.array_equal(g.coeffs, f.coeffs)
    with pytest.raises(ValueError):
        path2 = tmp_path / "bad.bin"
        path2.write_bytes(b"NOTMAGIC" + b"\x00" * 16)
        spio.read_snapshot(path2)


def test_energy_json(tmp_path):
    config = SolverConfig(N=16, nu=0.1, dt=5e-3, T=0.02, sample_stride=2)
    _, _, report = simulate(config)
    path = tmp_path / "energy.json"
    spio.write_energy_json(report, path)
    import json

    payload = json.loads(path.read_text())
    assert payload["energy"][0] == pytest.approx(math.pi**3, rel=1e-12)
    assert len(payload["times"]) == len(payload["dissipation"])
