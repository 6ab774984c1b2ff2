import json
import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from spr_sparsify import (
    GeneratorConfig,
    GraphError,
    SprInstance,
    SprMinor,
    WeightedGraph,
    distortion,
    generate_series_parallel,
    verify_minor,
    voronoi_spr_minor,
)
from spr_sparsify.serialize import graph_from_json
from spr_sparsify.spr import contract_witness, voronoi_cells

from corpus import path
from oracles import nx_distances, voronoi_owner

FIXTURES = Path(__file__).parent / "fixtures"


def _star():
    g, _, terms = graph_from_json(json.loads((FIXTURES / "star.json").read_text()))
    return g, terms


def test_star_minor_and_distortion_two():
    g, terms = _star()
    m = voronoi_spr_minor(SprInstance(g, terms))
    # the centre is equidistant from all leaves and joins terminal 1's cell
    assert m.witness == (1, 1, 2, 3, 4)
    assert m.minor_graph.edges == ((0, 1, 2), (0, 2, 2), (0, 3, 2))
    ratio, pair = distortion(g, m)
    assert ratio == 2 and float(ratio) == 2.0
    assert pair == (2, 3)
    assert verify_minor(g, m).ok


def test_all_vertices_terminal_is_identity():
    g = generate_series_parallel(3, 25)
    m = voronoi_spr_minor(SprInstance(g, range(g.n)))
    # every edge of a unit-weight graph is its own shortest path
    assert m.minor_graph == g
    assert distortion(g, m)[0] == 1


def test_single_terminal():
    g = path(5)
    m = voronoi_spr_minor(SprInstance(g, [2]))
    assert m.minor_graph.n == 1 and m.minor_graph.m == 0
    assert m.witness == (2,) * 5
    assert distortion(g, m) == (Fraction(1), None)
    assert verify_minor(g, m).ok


def test_instance_validation():
    g = path(4)
    with pytest.raises(GraphError):
        SprInstance(g, [])
    with pytest.raises(GraphError):
        SprInstance(g, [1, 1])
    with pytest.raises(GraphError):
        SprInstance(g, [7])
    with pytest.raises(GraphError):
        SprInstance(WeightedGraph.from_edges(3, [(0, 1)]), [0])
    assert SprInstance(g, [3, 0]).terminals == (0, 3)


def test_disconnected_supernode_named():
    g = path(5)
    m = voronoi_spr_minor(SprInstance(g, [0, 4]))
    assert m.witness == (0, 0, 0, 4, 4)
    # hand vertex 1 to terminal 4 so its cell {1, 3, 4} splits
    w = list(m.witness)
    w[1] = 4
    bad = SprMinor(m.minor_graph, m.terminals, tuple(w))
    rep = verify_minor(g, bad)
    assert rep.failed("supernodes")
    assert any(v.witness == 4 for v in rep.violations if v.check == "supernodes")


def test_unsupported_minor_edge_fails():
    g = path(5)
    m = voronoi_spr_minor(SprInstance(g, [0, 2, 4]))
    extra = WeightedGraph(3, m.minor_graph.edges + ((0, 2, 4),))
    rep = verify_minor(g, SprMinor(extra, m.terminals, m.witness))
    assert rep.failed("edges")


def test_shortcut_minor_edge_fails_distances():
    g = path(5)
    m = voronoi_spr_minor(SprInstance(g, [0, 4]))
    short = WeightedGraph(2, ((0, 1, 1),))
    assert verify_minor(g, SprMinor(short, m.terminals, m.witness)).failed("distances")


def test_non_terminal_owner_fails():
    g = path(3)
    m = voronoi_spr_minor(SprInstance(g, [0, 2]))
    bad = SprMinor(m.minor_graph, m.terminals, (0, 1, 2))
    assert verify_minor(g, bad).failed("disjoint")


def test_witness_length_mismatch():
    g = path(3)
    m = voronoi_spr_minor(SprInstance(g, [0, 2]))
    assert verify_minor(g, SprMinor(m.minor_graph, m.terminals, m.witness[:2])).failed("witness")


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 40), st.integers(1, 4), st.data())
def test_voronoi_minor_properties(seed, n, w, data):
    g = generate_series_parallel(seed, n, GeneratorConfig(max_weight=w))
    k = data.draw(st.integers(1, g.n))
    terms = sorted(random.Random(seed).sample(range(g.n), k))
    m = voronoi_spr_minor(SprInstance(g, terms))
    assert list(voronoi_cells(g, terms)) == voronoi_owner(g.n, g.edges, terms)
    assert verify_minor(g, m).ok
    assert contract_witness(g, m) == {(i, j) for i, j, _ in m.minor_graph.edges}
    ratio, _ = distortion(g, m)
    assert ratio >= 1
    dg = nx_distances(g.n, g.edges)
    dm = nx_distances(m.minor_graph.n, m.minor_graph.edges)
    for i in range(k):
        for j in range(i + 1, k):
            assert dm[i][j] >= dg[terms[i]][terms[j]]
            assert Fraction(dm[i][j], dg[terms[i]][terms[j]]) <= ratio
