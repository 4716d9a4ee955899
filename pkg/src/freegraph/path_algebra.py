"""The graded path space of a weighted graph and its two products.

``fock_mul`` is the weighted product that cancels matching edge/dual-edge
pairs at the junction of two paths; ``gr_mul`` is plain concatenation.
Both act on :class:`PathVector`, a finite rational combination of paths.

Everything is kept in the unnormalised ``[xi]`` basis: every coefficient
that appears is a ratio of weights, so no square roots are ever needed.
When ``sum(mu**2) != 1`` the traces are divided by that sum so that the
identity still has trace 1.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .graph import Path, WeightedGraph
from .noncrossing import enumerate_nc2

Number = int | Fraction


class P0Element:
    """Rational combination of vertices, i.e. an element of the vertex algebra.

    Multiplication is pointwise: the vertices are orthogonal idempotents.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[str, Number] | None = None) -> None:
        self.terms: dict[str, Fraction] = {
            v: Fraction(c) for v, c in (terms or {}).items() if c != 0
        }

    @classmethod
    def vertex(cls, v: str, coeff: Number = 1) -> "P0Element":
        return cls({v: coeff})

    def coeff(self, v: str) -> Fraction:
        return self.terms.get(v, Fraction(0))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, P0Element):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "P0Element") -> "P0Element":
        out = dict(self.terms)
        for v, c in other.terms.items():
            out[v] = out.get(v, 0) + c
        return P0Element(out)

    def __sub__(self, other: "P0Element") -> "P0Element":
        return self + other * -1

    def __mul__(self, other) -> "P0Element":
        if isinstance(other, P0Element):
            return P0Element({v: c * other.terms[v] for v, c in self.terms.items() if v in other.terms})
        return P0Element({v: c * other for v, c in self.terms.items()})

    __rmul__ = __mul__

    def __repr__(self) -> str:
        if not self.terms:
            return "P0Element(0)"
        return "P0Element(" + " + ".join(f"{c}[{v}]" for v, c in sorted(self.terms.items())) + ")"

    def to_json(self) -> dict[str, str]:
        return {v: str(c) for v, c in sorted(self.terms.items())}


class PathVector:
    """Finite rational combination of paths of one graph."""

    __slots__ = ("graph", "terms")

    def __init__(self, graph: WeightedGraph, terms: Mapping[Path, Number] | None = None) -> None:
        self.graph = graph
        self.terms: dict[Path, Fraction] = {
            p: Fraction(c) for p, c in (terms or {}).items() if c != 0
        }

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, g: WeightedGraph) -> "PathVector":
        return cls(g)

    @classmethod
    def basis(cls, g: WeightedGraph, edges: Sequence[str] | Path, coeff: Number = 1) -> "PathVector":
        p = edges if isinstance(edges, Path) else g.path(edges)
        return cls(g, {p: coeff})

    @classmethod
    def vertex(cls, g: WeightedGraph, v: str, coeff: Number = 1) -> "PathVector":
        return cls(g, {g.vertex_path(v): coeff})

    @classmethod
    def identity(cls, g: WeightedGraph) -> "PathVector":
        return cls(g, {g.vertex_path(v): 1 for v in g.vertices})

    @classmethod
    def from_p0(cls, g: WeightedGraph, b: P0Element) -> "PathVector":
        return cls(g, {g.vertex_path(v): c for v, c in b.terms.items()})

    # -- vector space ----------------------------------------------------------

    def _check(self, other: "PathVector") -> None:
        if other.graph != self.graph:
            raise ValueError("path vectors over different graphs")

    def __add__(self, other: "PathVector") -> "PathVector":
        self._check(other)
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, 0) + c
        return PathVector(self.graph, out)

    def __sub__(self, other: "PathVector") -> "PathVector":
        return self + other * -1

    def __mul__(self, scalar: Number) -> "PathVector":
        if isinstance(scalar, PathVector):
            raise TypeError("use fock_mul() or gr_mul() to multiply path vectors")
        return PathVector(self.graph, {p: c * scalar for p, c in self.terms.items()})

    __rmul__ = __mul__

    def __neg__(self) -> "PathVector":
        return self * -1

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, PathVector):
            return NotImplemented
        return self.graph == other.graph and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[tuple[Path, Fraction]]:
        g = self.graph
        return iter(sorted(self.terms.items(), key=lambda pc: g.path_sort_key(pc[0])))

    def coeff(self, p: Path) -> Fraction:
        return self.terms.get(p, Fraction(0))

    def degrees(self) -> set[int]:
        return {len(p) for p in self.terms}

    def component(self, n: int) -> "PathVector":
        """The degree-``n`` homogeneous part."""
        return PathVector(self.graph, {p: c for p, c in self.terms.items() if len(p) == n})

    def __repr__(self) -> str:
        if not self.terms:
            return "PathVector(0)"
        return "PathVector(" + " + ".join(f"{c}{p}" for p, c in self) + ")"


# -- products -----------------------------------------------------------------


def _fock_basis(g: WeightedGraph, xi: Path, eta: Path) -> dict[Path, Fraction]:
    """``[xi] # [eta]`` on basis paths, as a dict path -> coefficient."""
    out: dict[Path, Fraction] = {}
    if xi.range != eta.source:
        return out
    a, b = xi.edges, eta.edges
    m, n = len(a), len(b)
    # vertex sequence of xi: v_0 = s(xi), v_i = r(xi_i)
    verts = [xi.source] + [g.range(e) for e in a]
    for k in range(min(m, n) + 1):
        if k > 0 and a[m - k] != g.dual(b[k - 1]):
            break
        coeff = g.mu[verts[m]] / g.mu[verts[m - k]]
        edges = a[: m - k] + b[k:]
        if edges:
            p = Path(g.source(edges[0]), g.range(edges[-1]), edges)
        else:
            p = Path(verts[m - k], verts[m - k], ())
        out[p] = out.get(p, 0) + coeff
    return out


def fock_mul(x: PathVector, y: PathVector) -> PathVector:
    """The weighted product ``x # y``.

    On basis paths, ``[xi] # [eta] = sum_k c_k [xi_1..xi_{m-k} eta_{k+1}..eta_n]``
    where the ``k``-th term is present only if the last ``k`` edges of ``xi``
    are the duals of the first ``k`` edges of ``eta`` (in mirrored order),
    and ``c_k = mu(v_m) / mu(v_{m-k})`` with ``v_i`` the ``i``-th vertex
    along ``xi``.  Non-composable pairs contribute nothing.
    """
    x._check(y)
    g = x.graph
    out: dict[Path, Fraction] = {}
    for p, c in x.terms.items():
        for q, d in y.terms.items():
            for r, e in _fock_basis(g, p, q).items():
                out[r] = out.get(r, 0) + c * d * e
    return PathVector(g, out)


def gr_mul(x: PathVector, y: PathVector) -> PathVector:
    """Concatenation product; non-composable concatenations vanish."""
    x._check(y)
    g = x.graph
    out: dict[Path, Fraction] = {}
    for p, c in x.terms.items():
        for q, d in y.terms.items():
            if p.range != q.source:
                continue
            r = Path(p.source, q.range, p.edges + q.edges)
            out[r] = out.get(r, 0) + c * d
    return PathVector(g, out)


def star(x: PathVector) -> PathVector:
    """Reverse every path and replace each edge by its dual; coefficients kept."""
    g = x.graph
    out = {}
    for p, c in x.terms.items():
        rp = Path(p.range, p.source, tuple(g.dual(e) for e in reversed(p.edges)))
        out[rp] = c
    return PathVector(g, out)


def fock_product(factors: Iterable[PathVector]) -> PathVector:
    factors = list(factors)
    if not factors:
        raise ValueError("empty product")
    acc = factors[-1]
    for f in reversed(factors[:-1]):
        acc = fock_mul(f, acc)
    return acc


def p0_act(b: P0Element | None, x: PathVector, b2: P0Element | None = None) -> PathVector:
    """``b . x . b2`` for vertex-algebra elements acting on either side."""
    out = {}
    for p, c in x.terms.items():
        left = b.coeff(p.source) if b is not None else 1
        right = b2.coeff(p.range) if b2 is not None else 1
        if left and right:
            out[p] = c * left * right
    return PathVector(x.graph, out)


# -- states ----------------------------------------------------------------------


def phi_F(x: PathVector) -> P0Element:
    """Degree-0 component of ``x`` as a vertex-algebra element."""
    return P0Element({p.source: c for p, c in x.terms.items() if not p.edges})


def weighted_trace(b: P0Element, g: WeightedGraph) -> Fraction:
    """``sum_v mu(v)**2 b_v`` divided by ``sum_v mu(v)**2``."""
    total = sum((g.mu[v] ** 2 * c for v, c in b.terms.items()), Fraction(0))
    return total / g.mu_sq_sum


def tau_F(x: PathVector) -> Fraction:
    return weighted_trace(phi_F(x), x.graph)


def inner(x: PathVector, y: PathVector) -> Fraction:
    """``<x, y> = tau(x # y*)``."""
    return tau_F(fock_mul(x, star(y)))


def norm_sq(p: Path, g: WeightedGraph) -> Fraction:
    """``tau([xi] # [xi]*) = mu(s) mu(r)`` (before the trace normalisation)."""
    return g.mu[p.source] * g.mu[p.range]


# -- traces of edge words -------------------------------------------------------------


def tr_pairpartition(word: Sequence[str], g: WeightedGraph) -> Fraction:
    """Trace of ``[e_1 ... e_n]`` in the concatenation algebra.

    Sum over non-crossing pairings in which every pair ``{i < j}`` has
    ``e_j = dual(e_i)``; the pair contributes ``mu(r(e_i)) / mu(r(e_j))``.
    The total is multiplied by ``mu(s(e_1))**2`` and divided by the sum of
    squared weights.  Words that are not closed loops give 0.
    """
    word = tuple(word)
    n = len(word)
    if n == 0:
        return Fraction(1)
    if n % 2 or not g.is_loop(word):
        return Fraction(0)
    total = Fraction(0)
    for pi in enumerate_nc2(n):
        term = Fraction(1)
        for i, j in pi.blocks:
            ei, ej = word[i - 1], word[j - 1]
            if ej != g.dual(ei):
                term = Fraction(0)
                break
            term *= g.mu[g.range(ei)] / g.mu[g.range(ej)]
        total += term
    return total * g.normalized_mu_sq(g.source(word[0]))


def vacuum_moment_operator_model(word: Sequence[str], g: WeightedGraph) -> Fraction:
    """``tau(lambda[e_1] ... lambda[e_n] 1)`` by repeated left ``#``-multiplication.

    Each step multiplies by a single edge, which changes degree by at most
    one, so no truncation is involved.
    """
    acc = PathVector.identity(g)
    for e in reversed(tuple(word)):
        acc = fock_mul(PathVector.basis(g, (e,)), acc)
        if not acc:
            return Fraction(0)
    return tau_F(acc)


def fock_word_product(word: Sequence[str], g: WeightedGraph) -> PathVector:
    """``[e_1] # ... # [e_n]`` (the identity for the empty word)."""
    acc = PathVector.identity(g)
    for e in reversed(tuple(word)):
        acc = fock_mul(PathVector.basis(g, (e,)), acc)
    return acc


def parse_word(text: str, g: WeightedGraph) -> tuple[str, ...]:
    """Parse ``"e,e*,e"``: comma-separated edge ids, ``*`` suffix means dual."""
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            raise ValueError(f"empty token in word {text!r}")
        stars = len(tok) - len(tok.rstrip("*"))
        eid = tok.rstrip("*")
        g.edge(eid)
        for _ in range(stars):
            eid = g.dual(eid)
        out.append(eid)
    return tuple(out)


def format_word(word: Sequence[str]) -> str:
    return ",".join(word)
