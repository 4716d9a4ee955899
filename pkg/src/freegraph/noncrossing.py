"""Non-crossing partitions, Narayana numbers and the Temperley-Lieb bijection.

Partitions are on the ground set ``{1, ..., n}``.  Blocks are stored as
sorted tuples and ordered by their minimum, so two equal partitions always
have equal representations.

The bijection ``NC_2(2n) -> NC(n)`` reads a block ``{i_1 < ... < i_k}`` of
the image off the pairs ``{2 i_1 - 1, 2 i_k}`` (one per block, odd minimum)
and ``{2 i_j, 2 i_{j+1} - 1}`` (linking consecutive block elements, even
minimum).  Segment ``k`` of the diagram sits between points ``2k - 1`` and
``2k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence


def catalan(n: int) -> int:
    if n < 0:
        raise ValueError("n must be >= 0")
    return comb(2 * n, n) // (n + 1)


def _canonical(blocks: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0]))


def is_noncrossing(blocks: Sequence[Sequence[int]]) -> bool:
    """No ``a < b < c < d`` with ``a, c`` in one block and ``b, d`` in another."""
    owner = {x: i for i, b in enumerate(blocks) for x in b}
    for blk in blocks:
        # A block with an element strictly inside a gap of blk must lie inside that gap.
        members = sorted(blk)
        for a, c in zip(members, members[1:]):
            for x in range(a + 1, c):
                if any(y < a or y > c for y in blocks[owner[x]]):
                    return False
    return True


@dataclass(frozen=True)
class NCPartition:
    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        blocks = _canonical(self.blocks)
        object.__setattr__(self, "blocks", blocks)
        flat = sorted(x for b in blocks for x in b)
        if flat != list(range(1, self.n + 1)):
            raise ValueError(f"blocks {blocks} do not partition 1..{self.n}")
        if any(len(b) == 0 for b in blocks):
            raise ValueError("empty block")
        if not is_noncrossing(blocks):
            raise ValueError(f"partition {blocks} is crossing")

    def __len__(self) -> int:
        return len(self.blocks)

    def block_sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]

    def is_pairing(self) -> bool:
        return all(len(b) == 2 for b in self.blocks)

    def interval_blocks(self) -> list[tuple[int, ...]]:
        """Blocks made of consecutive integers; every non-empty NC partition has one."""
        return [b for b in self.blocks if b[-1] - b[0] + 1 == len(b)]

    def without_block(self, block: tuple[int, ...]) -> "NCPartition":
        """Restriction to the complement of ``block``, relabelled to ``1..n-|block|``."""
        if block not in self.blocks:
            raise ValueError(f"{block} is not a block")
        keep = [x for x in range(1, self.n + 1) if x not in block]
        relabel = {x: i + 1 for i, x in enumerate(keep)}
        rest = [tuple(relabel[x] for x in b) for b in self.blocks if b != block]
        return NCPartition(len(keep), tuple(rest))

    @classmethod
    def parse_blocks(cls, text: str, n: int | None = None) -> "NCPartition":
        """Parse ``"1.3.4,2,5.6"``; ``-`` also separates elements, so ``"1-4,2-3"`` works."""
        blocks = [tuple(int(x) for x in chunk.replace("-", ".").split(".")) for chunk in text.split(",")]
        if n is None:
            n = max(max(b) for b in blocks)
        return cls(n, tuple(blocks))

    def __str__(self) -> str:
        return "{" + ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + "}"


@dataclass(frozen=True)
class NCPairPartition(NCPartition):
    def __post_init__(self) -> None:
        super().__post_init__()
        if self.n % 2:
            raise ValueError("a pair partition needs an even ground set")
        if not self.is_pairing():
            raise ValueError(f"{self.blocks} is not a pair partition")

    @classmethod
    def parse(cls, text: str) -> "NCPairPartition":
        """Parse ``"1-8,2-5,3-4"``."""
        pairs = []
        for chunk in text.split(","):
            a, b = chunk.strip().split("-")
            pairs.append((int(a), int(b)))
        return cls(2 * len(pairs), tuple(pairs))


# -- enumeration ---------------------------------------------------------------


def _nc_on(points: tuple[int, ...]) -> list[list[tuple[int, ...]]]:
    """NC partitions of an ordered tuple of labels, by placement of the first block."""
    if not points:
        return [[]]
    first, rest = points[0], points[1:]
    out: list[list[tuple[int, ...]]] = []
    m = len(rest)

    # Choose which later positions join `first`; the gaps between chosen
    # positions (and after the last one) are filled independently.
    def choose(start: int, chosen: list[int]) -> None:
        block = (first,) + tuple(rest[i] for i in chosen)
        gaps = []
        prev = -1
        for i in chosen:
            gaps.append(rest[prev + 1 : i])
            prev = i
        gaps.append(rest[prev + 1 :])
        combos: list[list[tuple[int, ...]]] = [[block]]
        for gap in gaps:
            subs = _nc_on(gap)
            combos = [c + s for c in combos for s in subs]
        out.extend(combos)
        for j in range(start, m):
            choose(j + 1, chosen + [j])

    choose(0, [])
    return out


@lru_cache(maxsize=None)
def _nc_cached(n: int) -> tuple[NCPartition, ...]:
    parts = [NCPartition(n, tuple(blocks)) for blocks in _nc_on(tuple(range(1, n + 1)))]
    parts.sort(key=lambda p: (len(p), p.blocks))
    return tuple(parts)


def enumerate_nc(n: int) -> list[NCPartition]:
    """All non-crossing partitions of ``{1..n}``, ordered by block count then blocks."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return list(_nc_cached(n))


def _nc2_on(points: tuple[int, ...]) -> list[list[tuple[int, int]]]:
    if not points:
        return [[]]
    out = []
    first = points[0]
    for j in range(1, len(points), 2):
        inner, outer = points[1:j], points[j + 1 :]
        for a in _nc2_on(inner):
            for b in _nc2_on(outer):
                out.append([(first, points[j])] + a + b)
    return out


@lru_cache(maxsize=None)
def _nc2_cached(m: int) -> tuple[NCPairPartition, ...]:
    parts = [NCPairPartition(m, tuple(p)) for p in _nc2_on(tuple(range(1, m + 1)))]
    parts.sort(key=lambda p: p.blocks)
    return tuple(parts)


def enumerate_nc2(m: int) -> list[NCPairPartition]:
    """All non-crossing pair partitions of ``{1..m}``; ``m`` must be even."""
    if m < 0 or m % 2:
        raise ValueError(f"pair partitions need an even, non-negative size, got {m}")
    return list(_nc2_cached(m))


# -- Narayana -------------------------------------------------------------------


@lru_cache(maxsize=None)
def narayana_row(n: int) -> tuple[int, ...]:
    """``(N(n,1), ..., N(n,n))`` counted from :func:`enumerate_nc`."""
    if n < 1:
        raise ValueError("n must be >= 1")
    row = [0] * n
    for p in _nc_cached(n):
        row[len(p) - 1] += 1
    return tuple(row)


def narayana(n: int, k: int) -> int:
    """Number of non-crossing partitions of ``n`` points with ``k`` blocks."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    return narayana_row(n)[k - 1]


def narayana_closed(n: int, k: int) -> int:
    """``binom(n,k) binom(n,k-1) / n``; used where enumeration would be slow."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    return comb(n, k) * comb(n, k - 1) // n


def narayana_poly(n: int, T) -> Fraction:
    """``N_n(T) = sum_k N(n,k) T**k``, evaluated exactly."""
    T = Fraction(T)
    return sum((c * T ** (k + 1) for k, c in enumerate(narayana_row(n))), Fraction(0))


# -- Temperley-Lieb bijection ------------------------------------------------------


def odd_block_count(p: NCPairPartition) -> int:
    """Number of pairs whose smaller element is odd."""
    return sum(1 for a, _ in p.blocks if a % 2 == 1)


def even_block_count(p: NCPairPartition) -> int:
    return sum(1 for a, _ in p.blocks if a % 2 == 0)


def tl_bijection(p: NCPairPartition) -> NCPartition:
    """Send a non-crossing pairing of ``2n`` points to a partition of ``n`` segments.

    Each pair with even minimum ``{2i, 2j - 1}`` glues segments ``i`` and
    ``j`` into the same block; the classes of that gluing are the blocks.
    """
    if not isinstance(p, NCPairPartition):
        p = NCPairPartition(p.n, p.blocks)
    n = p.n // 2
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in p.blocks:
        if a % 2 == 0:
            i, j = a // 2, (b + 1) // 2
            parent[find(j)] = find(i)
    groups: dict[int, list[int]] = {}
    for i in range(1, n + 1):
        groups.setdefault(find(i), []).append(i)
    return NCPartition(n, tuple(tuple(g) for g in groups.values()))


def tl_inverse(q: NCPartition) -> NCPairPartition:
    """Inverse of :func:`tl_bijection`."""
    pairs = []
    for blk in q.blocks:
        pairs.append((2 * blk[0] - 1, 2 * blk[-1]))
        for a, b in zip(blk, blk[1:]):
            pairs.append((2 * a, 2 * b - 1))
    return NCPairPartition(2 * q.n, tuple(pairs))
