import json

import pytest

from pebblekit.errors import (DisconnectedGraph, InvalidParameter,
                              UnknownVertex)
from pebblekit.graphs import (EdgeVertex, Graph, Original, Pair,
                              cartesian_product, complete, cycle, cycle_u,
                              delete_vertices, fiber, fiber_factor_bijection,
                              middle_cycle, middle_graph, parse_label, path,
                              path_u, respects_adjacency,
                              trimmed_middle_path)


# -- labels ------------------------------------------------------------------

def test_label_str_roundtrip():
    for lab in (Original(3), EdgeVertex(1, 2), Pair(Original(0), EdgeVertex(2, 5)),
                Pair(Pair(Original(1), Original(2)), Original(3))):
        assert parse_label(str(lab)) == lab


def test_edge_vertex_sorts_endpoints():
    assert EdgeVertex(3, 0) == EdgeVertex(0, 3)
    ev = EdgeVertex(3, 0)
    assert (ev.i, ev.j) == (0, 3)


def test_edge_vertex_rejects_loop():
    with pytest.raises(InvalidParameter):
        EdgeVertex(2, 2)


def test_cycle_u_wraps():
    assert cycle_u(4, 3) == EdgeVertex(0, 3)
    assert cycle_u(6, 5) == EdgeVertex(0, 5)
    assert path_u(2) == EdgeVertex(2, 3)


def test_parse_label_garbage():
    for bad in ("w3", "u(1)", "v", "(a|b", ""):
        with pytest.raises(InvalidParameter):
            parse_label(bad)


# -- basic families ----------------------------------------------------------

def test_path_structure():
    g = path(4)
    assert g.n == 4 and g.m == 3
    assert g.adjacent(Original(1), Original(2))
    assert not g.adjacent(Original(1), Original(3))
    assert g.distance(Original(1), Original(4)) == 3


def test_single_vertex_path():
    g = path(1)
    assert g.n == 1 and g.m == 0 and g.diameter() == 0


def test_cycle_structure():
    g = cycle(5)
    assert g.n == 5 and g.m == 5
    assert g.adjacent(Original(0), Original(4))
    assert g.diameter() == 2


def test_complete_structure():
    g = complete(4)
    assert g.m == 6 and g.diameter() == 1


def test_bad_params():
    with pytest.raises(InvalidParameter):
        path(0)
    with pytest.raises(InvalidParameter):
        cycle(2)
    with pytest.raises(InvalidParameter):
        middle_cycle(1)


def test_disconnected_rejected():
    with pytest.raises(DisconnectedGraph):
        Graph([Original(1), Original(2), Original(3)], [(0, 1)])


# -- middle graphs -----------------------------------------------------------

def test_middle_graph_counts():
    # |V| = n + m edges; |E| = 2m + sum C(deg, 2)
    g = cycle(6)
    mg = middle_graph(g)
    assert mg.n == 6 + 6
    assert mg.m == 2 * 6 + 6 * 1  # every degree is 2, C(2,2) = 1
    # original-original edges do not survive
    assert not mg.adjacent(Original(0), Original(1))
    assert mg.adjacent(Original(0), EdgeVertex(0, 1))
    assert mg.adjacent(EdgeVertex(0, 1), EdgeVertex(1, 2))


def test_middle_cycle_diameter():
    for n in (2, 3, 4):
        assert middle_cycle(n).diameter() == n + 1


def test_middle_graph_of_star():
    # K_{1,3}: center degree 3 contributes C(3,2) = 3 edge-vertex edges
    star = Graph([Original(0), Original(1), Original(2), Original(3)],
                 [(0, 1), (0, 2), (0, 3)])
    mg = middle_graph(star)
    assert mg.n == 7 and mg.m == 2 * 3 + 3


def test_trimmed_middle_path_structure():
    g = trimmed_middle_path(4)
    assert g.n == 2 * 4 - 3
    assert Original(1) not in g and Original(4) not in g
    assert g.adjacent(path_u(1), path_u(2))
    assert g.adjacent(Original(2), path_u(1))
    assert g.adjacent(Original(2), path_u(2))


def test_delete_vertices_errors():
    g = path(4)
    with pytest.raises(UnknownVertex):
        delete_vertices(g, [Original(9)])
    with pytest.raises(DisconnectedGraph):
        delete_vertices(g, [Original(2)])


# -- products and fibers -----------------------------------------------------

def test_cartesian_product_c4():
    p2 = path(2)
    c4 = cartesian_product(p2, p2)
    assert c4.n == 4 and c4.m == 4 and c4.diameter() == 2


def test_product_adjacency_rule():
    g = cartesian_product(path(2), path(3))
    a = Pair(Original(1), Original(1))
    assert g.adjacent(a, Pair(Original(2), Original(1)))
    assert g.adjacent(a, Pair(Original(1), Original(2)))
    assert not g.adjacent(a, Pair(Original(2), Original(2)))


def test_fiber_isomorphic_to_factor():
    gp = cartesian_product(path(3), cycle(4))
    mapping = fiber_factor_bijection(gp, "left", Original(2))
    assert respects_adjacency(fiber(gp, "left", Original(2)), cycle(4), mapping)
    mapping = fiber_factor_bijection(gp, "right", Original(0))
    assert respects_adjacency(fiber(gp, "right", Original(0)), path(3), mapping)


def test_fiber_unknown_anchor():
    gp = cartesian_product(path(2), path(2))
    with pytest.raises(UnknownVertex):
        fiber(gp, "left", Original(9))


# -- serialization -----------------------------------------------------------

def test_json_roundtrip():
    g = middle_cycle(2)
    again = Graph.from_json(g.to_json())
    assert again == g and hash(again) == hash(g)


def test_json_shape():
    data = json.loads(path(2).to_json())
    assert data == {"vertices": ["v1", "v2"], "edges": [[0, 1]]}


def test_dot_output():
    dot = path(2).to_dot()
    assert '"v1" -- "v2"' in dot and dot.startswith("graph")
