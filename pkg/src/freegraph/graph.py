"""Weighted graphs with an edge-reversal involution, and their paths.

A graph is a finite set of vertices, a finite set of edges with source and
range maps, an involution ``e -> dual(e)`` reversing orientation, and a
positive rational weight ``mu`` on vertices.  Graphs are immutable.

Construction is permissive: :class:`WeightedGraph` accepts any structurally
well-typed data, :func:`validate` reports which invariants fail, and the
strict entry points (:func:`graph_from_dict`, :func:`load_graph`) refuse
invalid input.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from pathlib import Path as FsPath
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence


class GraphError(ValueError):
    """Raised for graph input that violates a structural invariant."""


def as_fraction(value) -> Fraction:
    """Parse an exact rational from an int, Fraction or ``"p/q"`` string.

    Floats are rejected: they would silently smuggle rounding into the
    exact modules.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact rational: {value!r}") from exc
    raise TypeError(f"expected int, Fraction or 'p/q' string, got {type(value).__name__}")


@dataclass(frozen=True)
class Edge:
    id: str
    source: str
    range: str


@dataclass(frozen=True)
class Path:
    """A composable edge sequence.

    ``source`` and ``range`` are stored so that a path can be handled
    without its graph; for a length-0 path both equal the basepoint.
    Build paths through :meth:`WeightedGraph.path` or
    :meth:`WeightedGraph.vertex_path` so composability is checked.
    """

    source: str
    range: str
    edges: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def basepoint(self) -> str:
        return self.source

    def __str__(self) -> str:
        if not self.edges:
            return f"[{self.source}]"
        return "[" + " ".join(self.edges) + "]"


class WeightedGraph:
    """Finite weighted graph ``(V, E, s, r, ~, mu)``.

    Parameters
    ----------
    vertices : iterable of str
        Vertex ids, in the order used for canonical output.
    edges : iterable of Edge or (id, source, range) triples
    dual : mapping edge id -> edge id
        The reversal involution.  Must be total on the edge set.
    mu : mapping vertex id -> positive rational
    """

    __slots__ = ("_vertices", "_edges", "_dual", "_mu", "_edge_index", "_vertex_index", "_key")

    def __init__(
        self,
        vertices: Iterable[str],
        edges: Iterable[Edge | Sequence[str]],
        dual: Mapping[str, str],
        mu: Mapping[str, object],
    ) -> None:
        verts = tuple(str(v) for v in vertices)
        if len(set(verts)) != len(verts):
            raise GraphError("duplicate vertex id")
        edge_list = []
        for e in edges:
            if not isinstance(e, Edge):
                e = Edge(*(str(x) for x in e))
            edge_list.append(e)
        ids = [e.id for e in edge_list]
        if len(set(ids)) != len(ids):
            raise GraphError("duplicate edge id")
        vset = set(verts)
        for e in edge_list:
            if e.source not in vset or e.range not in vset:
                raise GraphError(f"edge {e.id!r} has an endpoint outside the vertex set")
        if set(dual) != set(ids) or not set(dual.values()) <= set(ids):
            raise GraphError("dual must map every edge id to an edge id")
        if set(mu) != vset:
            raise GraphError("mu must assign a weight to every vertex")

        self._vertices = verts
        self._edges = MappingProxyType({e.id: e for e in edge_list})
        self._dual = MappingProxyType({str(k): str(v) for k, v in dual.items()})
        self._mu = MappingProxyType({str(v): as_fraction(m) for v, m in mu.items()})
        self._edge_index = MappingProxyType({eid: i for i, eid in enumerate(ids)})
        self._vertex_index = MappingProxyType({v: i for i, v in enumerate(verts)})
        self._key = (
            verts,
            tuple((e.id, e.source, e.range) for e in edge_list),
            tuple(sorted(self._dual.items())),
            tuple(sorted(self._mu.items())),
        )

    # -- structure ---------------------------------------------------------

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(self._edges.values())

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(self._edges)

    @property
    def mu(self) -> Mapping[str, Fraction]:
        return self._mu

    def edge(self, eid: str) -> Edge:
        try:
            return self._edges[eid]
        except KeyError:
            raise KeyError(f"unknown edge {eid!r}") from None

    def source(self, eid: str) -> str:
        return self.edge(eid).source

    def range(self, eid: str) -> str:
        return self.edge(eid).range

    def dual(self, eid: str) -> str:
        self.edge(eid)
        return self._dual[eid]

    def edge_order(self, eid: str) -> int:
        return self._edge_index[eid]

    def vertex_order(self, v: str) -> int:
        return self._vertex_index[v]

    @property
    def mu_sq_sum(self) -> Fraction:
        return sum((m * m for m in self._mu.values()), Fraction(0))

    @property
    def is_normalized(self) -> bool:
        return self.mu_sq_sum == 1

    def normalized_mu_sq(self, v: str) -> Fraction:
        """``mu(v)**2`` divided by the total, i.e. the state's weight on ``[v]``."""
        return self._mu[v] ** 2 / self.mu_sq_sum

    def dual_classes(self) -> list[tuple[str, ...]]:
        """Edge ids grouped into ``{e, dual(e)}`` classes, in edge order."""
        seen: set[str] = set()
        classes = []
        for eid in self._edges:
            if eid in seen:
                continue
            d = self._dual[eid]
            cls = (eid,) if d == eid else (eid, d)
            seen.update(cls)
            classes.append(cls)
        return classes

    # -- paths -------------------------------------------------------------

    def vertex_path(self, v: str) -> Path:
        if v not in self._vertex_index:
            raise KeyError(f"unknown vertex {v!r}")
        return Path(v, v, ())

    def path(self, edges: Sequence[str]) -> Path:
        """Build a path from edge ids, checking composability."""
        edges = tuple(edges)
        if not edges:
            raise ValueError("use vertex_path() for length-0 paths")
        for a, b in zip(edges, edges[1:]):
            if self.range(a) != self.source(b):
                raise ValueError(f"edges {a!r}, {b!r} are not composable")
        return Path(self.source(edges[0]), self.range(edges[-1]), edges)

    def is_composable(self, edges: Sequence[str]) -> bool:
        return all(self.range(a) == self.source(b) for a, b in zip(edges, edges[1:]))

    def is_loop(self, edges: Sequence[str]) -> bool:
        """True iff the word is composable and closes up: ``r(e_n) = s(e_1)``."""
        if not edges:
            return True
        return self.is_composable(edges) and self.range(edges[-1]) == self.source(edges[0])

    def path_sort_key(self, p: Path) -> tuple:
        if not p.edges:
            return (0, (self._vertex_index[p.source],))
        return (len(p.edges), tuple(self._edge_index[e] for e in p.edges))

    # -- identity ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self is other or self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return (
            f"WeightedGraph(vertices={list(self._vertices)}, "
            f"edges={[(e.id, e.source, e.range) for e in self.edges]}, "
            f"mu={ {v: str(m) for v, m in self._mu.items()} })"
        )


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...]
    normalized: bool
    mu_sq_sum: Fraction
    notes: tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(g: WeightedGraph) -> ValidationReport:
    """Check the involution and weight invariants; never raises."""
    violations = []
    for e in g.edges:
        d = g.dual(e.id)
        if g.dual(d) != e.id:
            violations.append(f"dual is not an involution at {e.id!r}")
        de = g.edge(d)
        if de.source != e.range or de.range != e.source:
            violations.append(f"dual of {e.id!r} does not reverse its endpoints")
        if d == e.id and e.source != e.range:
            violations.append(f"self-dual edge is not a loop: {e.id!r}")
    for v, m in g.mu.items():
        if m <= 0:
            violations.append(f"mu({v}) = {m} is not positive")
    total = g.mu_sq_sum
    notes = () if total == 1 else (f"unnormalized: sum of mu^2 = {total}",)
    return ValidationReport(tuple(violations), total == 1, total, notes)


def enumerate_paths(
    g: WeightedGraph, n: int, start: str | None = None, end: str | None = None
) -> list[Path]:
    """All paths of length ``n``, optionally filtered by endpoints.

    Output is in canonical order (lexicographic in edge order).
    """
    if n < 0:
        raise ValueError("path length must be >= 0")
    if n == 0:
        return [
            g.vertex_path(v)
            for v in g.vertices
            if (start is None or v == start) and (end is None or v == end)
        ]
    out_edges: dict[str, list[str]] = {v: [] for v in g.vertices}
    for e in g.edges:
        out_edges[e.source].append(e.id)

    paths: list[tuple[str, ...]] = []
    firsts = out_edges[start] if start is not None else list(g.edge_ids)

    def extend(prefix: tuple[str, ...]) -> None:
        if len(prefix) == n:
            if end is None or g.range(prefix[-1]) == end:
                paths.append(prefix)
            return
        for nxt in out_edges[g.range(prefix[-1])]:
            extend(prefix + (nxt,))

    for e in firsts:
        extend((e,))
    paths.sort(key=lambda p: tuple(g.edge_order(e) for e in p))
    return [Path(g.source(p[0]), g.range(p[-1]), p) for p in paths]


def all_words(g: WeightedGraph, n: int) -> Iterable[tuple[str, ...]]:
    """Every length-``n`` edge tuple, composable or not."""
    return product(g.edge_ids, repeat=n)


def reverse_path(p: Path, g: WeightedGraph) -> Path:
    """``xi_1 ... xi_n  ->  dual(xi_n) ... dual(xi_1)``."""
    if not p.edges:
        return p
    return Path(p.range, p.source, tuple(g.dual(e) for e in reversed(p.edges)))


# -- constructors ------------------------------------------------------------


def make_flower(n: int, pairing: Sequence[int | Sequence[int]] | None = None) -> WeightedGraph:
    """One vertex ``v`` with ``mu(v) = 1`` and ``n`` loops ``e1 .. en``.

    ``pairing`` lists the involution classes using 1-based petal indices:
    an int ``i`` (or a 1-tuple) makes ``ei`` self-dual, a pair ``(i, j)``
    makes ``ej = dual(ei)``.  Every index must appear exactly once.  The
    default makes every petal self-dual.
    """
    if n < 1:
        raise ValueError("a flower needs at least one petal")
    if pairing is None:
        pairing = list(range(1, n + 1))
    dual: dict[str, str] = {}
    used: list[int] = []
    for entry in pairing:
        group = (entry,) if isinstance(entry, int) else tuple(entry)
        if len(group) not in (1, 2):
            raise ValueError(f"pairing entry {entry!r} must be a singleton or a pair")
        used.extend(group)
        ids = [f"e{i}" for i in group]
        if len(group) == 1:
            dual[ids[0]] = ids[0]
        else:
            dual[ids[0]], dual[ids[1]] = ids[1], ids[0]
    if sorted(used) != list(range(1, n + 1)):
        raise ValueError(f"pairing {pairing!r} does not partition petals 1..{n}")
    edges = [Edge(f"e{i}", "v", "v") for i in range(1, n + 1)]
    return WeightedGraph(["v"], edges, dual, {"v": 1})


def make_two_vertex(mu_v, mu_w) -> WeightedGraph:
    """Vertices ``v, w``; edge ``e: v -> w`` and its reverse ``e~: w -> v``.

    Requires ``mu_v >= mu_w > 0`` so that ``rho = mu_v / mu_w >= 1``.
    """
    mv, mw = as_fraction(mu_v), as_fraction(mu_w)
    if mw <= 0:
        raise ValueError("weights must be positive")
    if mw > mv:
        raise ValueError(f"need mu(w) <= mu(v), got mu(v)={mv}, mu(w)={mw}")
    return WeightedGraph(
        ["v", "w"],
        [Edge("e", "v", "w"), Edge("e~", "w", "v")],
        {"e": "e~", "e~": "e"},
        {"v": mv, "w": mw},
    )


def two_vertex_rho(g: WeightedGraph) -> Fraction:
    """``mu(v) / mu(w)`` for a graph built by :func:`make_two_vertex`."""
    if g.vertices != ("v", "w") or set(g.edge_ids) != {"e", "e~"}:
        raise ValueError("not a two-vertex graph from make_two_vertex()")
    return g.mu["v"] / g.mu["w"]


# -- JSON ---------------------------------------------------------------------


def graph_to_dict(g: WeightedGraph) -> dict:
    return {
        "vertices": [{"id": v, "mu": str(g.mu[v])} for v in g.vertices],
        "edges": [
            {"id": e.id, "source": e.source, "range": e.range, "dual": g.dual(e.id)}
            for e in g.edges
        ],
    }


def graph_from_dict(data: Mapping) -> WeightedGraph:
    """Build a graph from the JSON description and reject invalid ones."""
    try:
        vertices = [str(v["id"]) for v in data["vertices"]]
        mu = {str(v["id"]): as_fraction(str(v["mu"])) for v in data["vertices"]}
        edges = [Edge(str(e["id"]), str(e["source"]), str(e["range"])) for e in data["edges"]]
        dual = {str(e["id"]): str(e["dual"]) for e in data["edges"]}
    except (KeyError, TypeError) as exc:
        raise GraphError(f"malformed graph description: {exc}") from exc
    g = WeightedGraph(vertices, edges, dual, mu)
    report = validate(g)
    if not report.ok:
        raise GraphError("; ".join(report.violations))
    return g


def load_graph(path: str | FsPath) -> WeightedGraph:
    with open(path, encoding="utf-8") as fh:
        return graph_from_dict(json.load(fh))


def dump_graph(g: WeightedGraph, path: str | FsPath) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(graph_to_dict(g), fh, indent=2)
        fh.write("\n")
