"""Brute-force reference implementations used only by the tests.

They are deliberately naive and share no code with the package.
"""

from fractions import Fraction
from itertools import product


def set_partitions(n):
    """Every set partition of {1..n}, as a list of tuples."""

    def rec(i, blocks):
        if i > n:
            yield [tuple(b) for b in blocks]
            return
        for b in blocks:
            b.append(i)
            yield from rec(i + 1, blocks)
            b.pop()
        blocks.append([i])
        yield from rec(i + 1, blocks)
        blocks.pop()

    yield from rec(1, [])


def crosses(blocks):
    for A in blocks:
        for B in blocks:
            if A is B:
                continue
            for a, c in product(A, A):
                for b, d in product(B, B):
                    if a < b < c < d:
                        return True
    return False


def nc_brute(n):
    return [p for p in set_partitions(n) if not crosses(p)]


def canon(blocks):
    return tuple(sorted(tuple(sorted(b)) for b in blocks))


def composable_words(g, n, start=None, end=None):
    """Filter all n-letter words instead of walking the graph."""
    out = []
    for w in product(g.edge_ids, repeat=n):
        if any(g.range(a) != g.source(b) for a, b in zip(w, w[1:])):
            continue
        if start is not None and g.source(w[0]) != start:
            continue
        if end is not None and g.range(w[-1]) != end:
            continue
        out.append(w)
    return out


def ldl_is_psd(matrix):
    """Exact LDL^T test of positive semidefiniteness for a symmetric rational matrix."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] for row in matrix]
    for k in range(n):
        d = a[k][k]
        if d < 0:
            return False
        if d == 0:
            if any(a[k][j] != 0 for j in range(k + 1, n)):
                return False
            continue
        for i in range(k + 1, n):
            f = a[i][k] / d
            for j in range(k + 1, n):
                a[i][j] -= f * a[k][j]
    return True
