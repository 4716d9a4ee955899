r"""Cauchy transforms and densities for the rank-one perturbed free Jacobi matrix.

Conventions: for a self-adjoint ``a`` and vector ``delta_0`` the Cauchy
transform is ``F(z) = <(a - z)^{-1} delta_0, delta_0>``, which maps the
upper half plane into itself.  For ``a_0 = l + l*``

    F_0(z) = (-z + sqrt(z + 2) sqrt(z - 2)) / 2,

with both square roots cut along the downward vertical rays from ``-2``
and ``+2``.  The rank-one perturbation ``a_rho = a_0 - p0 / rho`` has
``F_rho = F_0 / (1 - F_0 / rho)`` and the density of its vacuum spectral
measure is ``(1/pi) Im F_rho(t + i0)``.

Floating point throughout; the exact moments live in :mod:`freegraph.fock`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

_ROT = np.exp(1j * np.pi / 4)


def _sqrt_cut_down(w):
    """Square root with its branch cut along the negative imaginary axis."""
    return _ROT * np.sqrt(-1j * np.asarray(w, dtype=complex))


def _check_rho(rho: float) -> float:
    rho = float(rho)
    if not rho > 1:
        raise ValueError(f"rho must be > 1, got {rho}")
    return rho


def cauchy_F0(z):
    """Cauchy transform of the semicircle on ``[-2, 2]``; requires ``Im z > 0``."""
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag <= 0):
        raise ValueError("cauchy_F0 needs Im z > 0; use boundary_f0 on the real line")
    out = (-z + _sqrt_cut_down(z + 2) * _sqrt_cut_down(z - 2)) / 2
    return out[()] if out.ndim == 0 else out


def boundary_f0(t):
    """Boundary values ``lim_{b -> 0+} F_0(t + ib)``.

    ``2 f0 = -t + sqrt(t^2 - 4)`` for ``t >= 2``, ``-t + i sqrt(4 - t^2)``
    on ``[-2, 2]`` and ``-t - sqrt(t^2 - 4)`` for ``t <= -2``.
    """
    t = np.asarray(t, dtype=float)
    out = np.empty(t.shape, dtype=complex)
    hi, lo = t >= 2, t <= -2
    mid = ~(hi | lo)
    out[hi] = (-t[hi] + np.sqrt(t[hi] ** 2 - 4)) / 2
    out[lo] = (-t[lo] - np.sqrt(t[lo] ** 2 - 4)) / 2
    out[mid] = (-t[mid] + 1j * np.sqrt(4 - t[mid] ** 2)) / 2
    return out[()] if out.ndim == 0 else out


def cauchy_Frho(z, rho: float):
    """``F_0 / (1 - F_0 / rho)``; real ``z`` uses the boundary values."""
    rho = _check_rho(rho)
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag < 0):
        raise ValueError("cauchy_Frho needs Im z >= 0")
    f0 = np.empty(z.shape, dtype=complex)
    on_axis = z.imag == 0
    f0[on_axis] = boundary_f0(z.real[on_axis])
    if np.any(~on_axis):
        f0[~on_axis] = cauchy_F0(z[~on_axis])
    out = rho * f0 / (rho - f0)
    return out[()] if out.ndim == 0 else out


def density_arho(t, rho: float):
    """``rho^2 sqrt(4 - t^2) / (2 pi (rho^2 + rho t + 1))`` on ``[-2, 2]``, else 0."""
    rho = _check_rho(rho)
    t = np.asarray(t, dtype=float)
    inside = np.abs(t) <= 2
    out = np.zeros(t.shape)
    ti = t[inside]
    out[inside] = rho**2 * np.sqrt(np.clip(4 - ti**2, 0, None)) / (2 * np.pi * (rho**2 + rho * ti + 1))
    return out[()] if out.ndim == 0 else out


def density_tstar_t(t, rho: float):
    """Density of ``t*t``: :func:`density_arho` shifted by ``rho + 1/rho``."""
    rho = _check_rho(rho)
    return density_arho(np.asarray(t, dtype=float) - (rho + 1 / rho), rho)


@dataclass(frozen=True)
class DensityModel:
    """Free Poisson law of ``t*t`` with rate ``rho**2`` and jump ``1/rho``.

    Integrals use ``t = c - 2 cos(theta)`` on the support, which turns the
    square-root endpoint behaviour into a smooth integrand.
    """

    rho: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "rho", _check_rho(self.rho))

    @property
    def center(self) -> float:
        return self.rho + 1 / self.rho

    @property
    def support(self) -> tuple[float, float]:
        return (self.center - 2, self.center + 2)

    @property
    def rate(self) -> float:
        return self.rho**2

    @property
    def jump(self) -> float:
        return 1 / self.rho

    def mp_support(self) -> tuple[float, float]:
        """``jump (1 -+ sqrt(rate))**2``, the usual free Poisson endpoints."""
        s = math.sqrt(self.rate)
        return (self.jump * (1 - s) ** 2, self.jump * (1 + s) ** 2)

    def pdf(self, t):
        return density_tstar_t(t, self.rho)

    def mp_pdf(self, t):
        """Textbook free Poisson density ``sqrt((b - t)(t - a)) / (2 pi jump t)``."""
        a, b = self.mp_support()
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape)
        inside = (t >= a) & (t <= b)
        ti = t[inside]
        out[inside] = np.sqrt((b - ti) * (ti - a)) / (2 * np.pi * self.jump * ti)
        return out[()] if out.ndim == 0 else out

    def expect(self, f, epsabs: float = 1e-13, epsrel: float = 1e-13) -> float:
        """``int f(t) g(t) dt`` over the support."""
        c = self.center

        def integrand(theta: float) -> float:
            s = math.sin(theta)
            t = c - 2 * math.cos(theta)
            return f(t) * self.rho * 2 * s * s / (math.pi * t)

        val, _ = integrate.quad(integrand, 0.0, math.pi, epsabs=epsabs, epsrel=epsrel, limit=200)
        return val

    def total_mass(self) -> float:
        return self.expect(lambda t: 1.0)

    def moment(self, n: int) -> float:
        return self.expect(lambda t: t**n)


def arho_moment_by_inversion(rho: float, n: int, epsilon: float = 1e-6) -> float:
    """``(1/pi) int t^n Im F_rho(t + i eps) dt`` over a window around ``[-2, 2]``."""
    rho = _check_rho(rho)

    def integrand(t: float) -> float:
        return t**n * float(np.imag(cauchy_Frho(complex(t, epsilon), rho))) / np.pi

    val, _ = integrate.quad(integrand, -3.0, 3.0, points=[-2.0, 2.0], limit=500, epsabs=1e-12)
    return val


@dataclass(frozen=True)
class InversionRow:
    t: float
    inversion: float
    density: float

    @property
    def diff(self) -> float:
        return abs(self.inversion - self.density)


def stieltjes_inversion_scan(rho: float, epsilon: float, grid) -> list[InversionRow]:
    """Compare ``(1/pi) Im F_rho(t + i eps)`` with the exact density on a grid."""
    rho = _check_rho(rho)
    if not 0 < epsilon <= 1e-2:
        raise ValueError("epsilon must lie in (0, 1e-2]")
    t = np.asarray(grid, dtype=float)
    est = np.imag(cauchy_Frho(t + 1j * epsilon, rho)) / np.pi
    dens = density_arho(t, rho)
    return [InversionRow(float(a), float(b), float(c)) for a, b, c in zip(np.atleast_1d(t), np.atleast_1d(est), np.atleast_1d(dens))]
