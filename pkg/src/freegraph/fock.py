"""Exact band-matrix model of ``t*t`` on ``l^2(N)``.

With ``l`` the unilateral shift and ``t = rho**(1/2) l + rho**(-1/2) l*``,

    t*t = l**2 + l*(**2) + (rho + 1/rho) - (1/rho) p0,

where ``p0`` projects onto ``delta_0``.  Only ``rho`` and ``1/rho`` appear,
so every entry is rational and ``t`` itself is never built.  The more
general ``t = a l + b l*`` gives ``t*t = ab (l**2 + l*(**2)) + (a**2 + b**2)
- b**2 p0``.

Vacuum moments ``<A**n delta_0, delta_0>`` of a truncation agree with the
infinite operator as soon as the truncation is larger than ``n`` times the
bandwidth, so the truncation size is always derived from the request.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .graph import as_fraction


@dataclass(frozen=True)
class BandedOperator:
    """Square ``N x N`` matrix stored by diagonals.

    ``diagonals[d][i]`` is the entry at row ``i``, column ``i + d``; each
    stored diagonal has length ``N - |d|``.
    """

    N: int
    diagonals: Mapping[int, tuple[Fraction, ...]]

    def __post_init__(self) -> None:
        if self.N < 1:
            raise ValueError("dimension must be >= 1")
        clean = {}
        for d, vals in self.diagonals.items():
            vals = tuple(Fraction(v) for v in vals)
            if len(vals) != self.N - abs(d):
                raise ValueError(f"diagonal {d} has length {len(vals)}, expected {self.N - abs(d)}")
            if any(vals):
                clean[d] = vals
        object.__setattr__(self, "diagonals", clean)

    @property
    def bandwidth(self) -> int:
        return max((abs(d) for d in self.diagonals), default=0)

    def entry(self, i: int, j: int) -> Fraction:
        d = j - i
        if not (0 <= i < self.N and 0 <= j < self.N) or d not in self.diagonals:
            return Fraction(0)
        return self.diagonals[d][min(i, j)]

    def to_dense(self) -> list[list[Fraction]]:
        return [[self.entry(i, j) for j in range(self.N)] for i in range(self.N)]

    def matvec(self, x: list[Fraction]) -> list[Fraction]:
        if len(x) != self.N:
            raise ValueError("dimension mismatch")
        y = [Fraction(0)] * self.N
        for d, vals in self.diagonals.items():
            if d >= 0:
                for i, a in enumerate(vals):
                    y[i] += a * x[i + d]
            else:
                for j, a in enumerate(vals):
                    y[j - d] += a * x[j]
        return y

    def shift(self, s) -> "BandedOperator":
        """``A + s * 1``."""
        s = Fraction(s)
        diags = dict(self.diagonals)
        main = diags.get(0, (Fraction(0),) * self.N)
        diags[0] = tuple(a + s for a in main)
        return BandedOperator(self.N, diags)

    def compress(self, indices: list[int]) -> "BandedOperator":
        """Restriction to the span of the given basis vectors, as a new band matrix."""
        m = len(indices)
        diags: dict[int, list[Fraction]] = {}
        for a, i in enumerate(indices):
            for b, j in enumerate(indices):
                val = self.entry(i, j)
                if val:
                    diags.setdefault(b - a, [Fraction(0)] * (m - abs(b - a)))[min(a, b)] = val
        return BandedOperator(m, {d: tuple(v) for d, v in diags.items()})


def _pentadiagonal(N: int, diag0: Fraction, diag: Fraction, off2: Fraction) -> BandedOperator:
    main = (diag0,) + (diag,) * (N - 1)
    off = (off2,) * (N - 2)
    return BandedOperator(N, {0: main, 2: off, -2: off})


def _tridiagonal(N: int, diag0: Fraction, diag: Fraction, off1: Fraction) -> BandedOperator:
    main = (diag0,) + (diag,) * (N - 1)
    off = (off1,) * (N - 1)
    return BandedOperator(N, {0: main, 1: off, -1: off})


def _positive(rho) -> Fraction:
    rho = as_fraction(rho)
    if rho <= 0:
        raise ValueError("rho must be positive")
    return rho


def build_tstar_t(rho, N: int) -> BandedOperator:
    """Truncation of ``t*t`` to ``delta_0 .. delta_{N-1}``."""
    rho = _positive(rho)
    if N < 3:
        raise ValueError("need N >= 3")
    return _pentadiagonal(N, rho, rho + 1 / rho, Fraction(1))


def build_even_restriction(rho, N: int) -> BandedOperator:
    """``t*t`` on ``delta_0, delta_2, delta_4, ...``: a tridiagonal matrix."""
    rho = _positive(rho)
    if N < 2:
        raise ValueError("need N >= 2")
    return _tridiagonal(N, rho, rho + 1 / rho, Fraction(1))


def build_odd_restriction(rho, N: int) -> BandedOperator:
    """``t*t`` on ``delta_1, delta_3, ...``: ``l + l* + (rho + 1/rho)``."""
    rho = _positive(rho)
    if N < 2:
        raise ValueError("need N >= 2")
    c = rho + 1 / rho
    return _tridiagonal(N, c, c, Fraction(1))


def build_general_tstar_t(a, b, N: int) -> BandedOperator:
    """``t*t`` for ``t = a l + b l*`` with rational ``a, b``."""
    a, b = as_fraction(a), as_fraction(b)
    if a == 0 and b == 0:
        raise ValueError("a and b are both zero")
    if N < 3:
        raise ValueError("need N >= 3")
    return _pentadiagonal(N, a * a, a * a + b * b, a * b)


def required_size(n: int, bandwidth: int) -> int:
    return bandwidth * n + 2


def vacuum_moment(op: BandedOperator, n: int) -> Fraction:
    """Exact ``<op**n delta_0, delta_0>``.

    Raises if the truncation is small enough for ``delta_0`` to feel the
    boundary, because then the result would not be the moment of the
    infinite operator.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if op.N <= n * op.bandwidth:
        raise ValueError(
            f"truncation N={op.N} too small for order {n} at bandwidth {op.bandwidth}; "
            f"need N > {n * op.bandwidth}"
        )
    x = [Fraction(0)] * op.N
    x[0] = Fraction(1)
    for _ in range(n):
        x = op.matvec(x)
    return x[0]


def tstar_t_moment(rho, n: int) -> Fraction:
    """Vacuum moment of ``t*t`` with the truncation chosen from ``n``."""
    return vacuum_moment(build_tstar_t(rho, max(3, required_size(n, 2))), n)


def general_t_moments(a, b, n: int) -> Fraction:
    """``<(t*t)**n delta_0, delta_0>`` for ``t = a l + b l*``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return vacuum_moment(build_general_tstar_t(a, b, max(3, required_size(n, 2))), n)


def krylov_rank(op: BandedOperator) -> int:
    """Rank of ``[delta_0, A delta_0, ..., A**(N-1) delta_0]`` over the rationals."""
    N = op.N
    x = [Fraction(0)] * N
    x[0] = Fraction(1)
    rows = []
    for _ in range(N):
        rows.append(list(x))
        x = op.matvec(x)
    return rational_rank(rows)


def rational_rank(rows: list[list[Fraction]]) -> int:
    """Row rank by exact Gaussian elimination."""
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col] / m[rank][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank
