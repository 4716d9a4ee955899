import math

import numpy as np
import pytest

from freegraph.fock import build_even_restriction, tstar_t_moment, vacuum_moment
from freegraph.spectral import (
    DensityModel,
    arho_moment_by_inversion,
    boundary_f0,
    cauchy_F0,
    cauchy_Frho,
    density_arho,
    density_tstar_t,
    stieltjes_inversion_scan,
)

rng = np.random.default_rng(20261016)
GRID = rng.uniform(-6, 6, 500) + 1j * np.exp(rng.uniform(np.log(1e-4), np.log(10), 500))


def test_F0_decay_and_sign():
    assert abs(cauchy_F0(10j)) < 0.11
    assert abs(cauchy_F0(1e4 + 1e4j) + 1 / (1e4 + 1e4j)) < 1e-10
    assert cauchy_F0(1 + 0.01j).imag > 0
    with pytest.raises(ValueError):
        cauchy_F0(1.0 + 0j)


def test_F0_quadratic_identity():
    f = cauchy_F0(GRID)
    assert np.max(np.abs(f * f + GRID * f + 1)) < 1e-12


def test_F0_is_resolvent_of_jacobi_matrix():
    """Compare with <(a0 - z)^-1 d0, d0> of a large truncation of l + l*."""
    N = 4000
    z = 0.3 + 0.5j
    a = np.diag(np.ones(N - 1), 1) + np.diag(np.ones(N - 1), -1)
    e0 = np.zeros(N)
    e0[0] = 1
    ref = np.linalg.solve(a - z * np.eye(N), e0)[0]
    assert abs(cauchy_F0(z) - ref) < 1e-10


def test_herglotz():
    assert np.all(cauchy_F0(GRID).imag > 0)
    for rho in (1.2, 2.0, 5.0):
        assert np.all(cauchy_Frho(GRID, rho).imag > 0)


def test_boundary_values():
    assert boundary_f0(2.0) == -1
    assert boundary_f0(-2.0) == 1
    assert boundary_f0(0.0) == 1j
    assert boundary_f0(2.5) == -0.5


def test_boundary_continuity():
    h = 1e-13
    for t in (2.0, -2.0):
        vals = boundary_f0(np.array([t - h, t, t + h]))
        assert np.max(np.abs(vals - vals[1])) < 1e-6
    # exact agreement of the two branch formulas at the junction
    for t in (2.0, -2.0):
        outer = (-t + math.copysign(1, t) * math.sqrt(t * t - 4)) / 2
        inner = (-t + 1j * math.sqrt(4 - t * t)) / 2
        assert abs(outer - inner) < 1e-12


def test_boundary_monotone_and_range():
    right = boundary_f0(np.linspace(2, 50, 400)).real
    left = boundary_f0(np.linspace(-50, -2, 400)).real
    assert np.all(np.diff(right) > 0) and np.all(np.diff(left) > 0)
    vals = np.concatenate([left, right])
    assert np.all((np.abs(vals) <= 1) & (vals != 0))


def test_boundary_is_limit_of_F0():
    ts = np.linspace(-4, 4, 81)
    assert np.max(np.abs(cauchy_F0(ts + 1e-12j) - boundary_f0(ts))) < 1e-5


def test_Frho_rejects_rho_le_one():
    with pytest.raises(ValueError):
        cauchy_Frho(1j, 1.0)


def test_Frho_perturbative():
    rho = 3.0
    z = 40 + 30j
    f0 = cauchy_F0(z)
    assert abs(cauchy_Frho(z, rho) - (f0 + f0 * f0 / rho)) < 5 * abs(f0) ** 3


def test_Frho_at_zero():
    rho = 2.0
    val = cauchy_Frho(0.0, rho)
    assert abs(val - rho * 1j / (rho - 1j)) < 1e-14
    assert abs(val.imag - rho**2 / (rho**2 + 1)) < 1e-14


@pytest.mark.parametrize("rho", [2.0, 1.5])
def test_inversion_moments_match_exact(rho):
    from fractions import Fraction

    r = Fraction(rho)
    shift = r + 1 / r
    for n in range(1, 5):
        exact = vacuum_moment(build_even_restriction(r, n + 1).shift(-shift), n)
        assert abs(arho_moment_by_inversion(rho, n, 1e-6) - float(exact)) < 1e-4


def test_density_arho_values():
    rho = 2.0
    assert abs(density_arho(0.0, rho) - rho**2 / (math.pi * (rho**2 + 1))) < 1e-15
    assert density_arho(2.0, rho) == 0 and density_arho(-2.0, rho) == 0
    assert density_arho(2.5, rho) == 0
    assert np.all(density_arho(np.linspace(-1.99, 1.99, 50), rho) > 0)


@pytest.mark.parametrize("rho", [2.0, 1.5, 4.0])
def test_arho_normalized(rho):
    from scipy import integrate

    # theta substitution t = -2 cos(theta)
    val, _ = integrate.quad(lambda th: density_arho(-2 * math.cos(th), rho) * 2 * math.sin(th), 0, math.pi, epsabs=1e-13)
    assert abs(val - 1) < 1e-8


def test_density_tstar_t_forms():
    rho = 2.0
    m = DensityModel(rho)
    c = rho + 1 / rho
    ts = np.linspace(m.support[0] + 1e-6, m.support[1] - 1e-6, 200)
    simplified = rho * np.sqrt(4 - (ts - c) ** 2) / (2 * np.pi * ts)
    assert np.max(np.abs(density_tstar_t(ts, rho) - simplified)) < 1e-12
    assert np.max(np.abs(m.pdf(ts) - m.mp_pdf(ts))) < 1e-12
    assert all(abs(a - b) < 1e-12 for a, b in zip(m.support, m.mp_support()))
    assert m.support[0] > 0
    with pytest.raises(ValueError):
        density_tstar_t(1.0, 1.0)


@pytest.mark.parametrize("rho", [2.0, 1.5])
def test_density_moments(rho):
    from fractions import Fraction

    m = DensityModel(rho)
    assert abs(m.total_mass() - 1) < 1e-8
    for n in range(1, 7):
        exact = float(tstar_t_moment(Fraction(rho), n))
        assert abs(m.moment(n) - exact) < 1e-6


def test_inversion_scan():
    table = stieltjes_inversion_scan(2.0, 1e-6, np.linspace(-1.9, 1.9, 101))
    assert len(table) == 101
    assert max(r.diff for r in table) < 1e-4


def test_inversion_converges_at_center():
    diffs = [stieltjes_inversion_scan(2.0, eps, [0.0])[0].diff for eps in (1e-3, 1e-4, 1e-5)]
    assert diffs[0] > diffs[1] > diffs[2]


def test_inversion_off_support():
    row = stieltjes_inversion_scan(2.0, 1e-6, [3.0])[0]
    assert row.density == 0 and row.inversion < 1e-6
    with pytest.raises(ValueError):
        stieltjes_inversion_scan(2.0, 0.5, [0.0])
