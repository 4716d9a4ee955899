import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from freegraph.graph import Edge, WeightedGraph, make_flower, make_two_vertex  # noqa: E402


def three_vertex_graph():
    """v -e- w -f- u plus a self-dual loop g at u; unnormalised weights."""
    return WeightedGraph(
        ["v", "w", "u"],
        [
            Edge("e", "v", "w"),
            Edge("e~", "w", "v"),
            Edge("f", "w", "u"),
            Edge("f~", "u", "w"),
            Edge("g", "u", "u"),
        ],
        {"e": "e~", "e~": "e", "f": "f~", "f~": "f", "g": "g"},
        {"v": Fraction(3), "w": Fraction(2), "u": Fraction(1, 2)},
    )


GRAPH_SUITE = {
    "two_vertex_4_3": lambda: make_two_vertex(Fraction(4, 5), Fraction(3, 5)),
    "two_vertex_2_1": lambda: make_two_vertex(2, 1),
    "flower1": lambda: make_flower(1),
    "flower2_selfdual": lambda: make_flower(2),
    "flower2_dual": lambda: make_flower(2, [(1, 2)]),
    "flower3_mixed": lambda: make_flower(3, [(1, 2), 3]),
    "three_vertex": three_vertex_graph,
}


@pytest.fixture(params=sorted(GRAPH_SUITE))
def any_graph(request):
    return GRAPH_SUITE[request.param]()


@pytest.fixture
def two_vertex():
    return make_two_vertex(2, 1)
