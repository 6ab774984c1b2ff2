import json
from fractions import Fraction
from pathlib import Path

import pytest

from spr_sparsify import (
    GraphError,
    SprInstance,
    WeightedGraph,
    build_hammock_decomposition,
    distortion,
    generate_series_parallel,
    nested_ear_decomposition,
    scattering_chop,
    scattering_partition,
    voronoi_spr_minor,
)
from spr_sparsify import serialize as ser

from corpus import cycle, path

FIXTURES = Path(__file__).parent / "fixtures"


def test_dumps_is_canonical():
    assert ser.dumps({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}\n'


def test_malformed_json_raises_graph_error():
    with pytest.raises(GraphError):
        ser.loads("{not json")
    with pytest.raises(GraphError):
        ser.graph_from_json({"edges": []})
    with pytest.raises(GraphError):
        ser.graph_from_json({"n": 3, "edges": [[0]]})
    with pytest.raises(GraphError):
        ser.graph_from_json({"n": 3, "edges": [[0, 1]], "root": 5})


def test_graph_round_trip():
    g = WeightedGraph.from_edges(4, [(0, 1, 2), (1, 2), (2, 3, 5)])
    doc = ser.loads(ser.dumps(ser.graph_to_json(g, 1, [3, 0])))
    assert doc["terminals"] == [0, 3]
    assert ser.graph_from_json(doc) == (g, 1, [0, 3])


def test_decomposition_round_trip():
    g, r, _ = ser.graph_from_json(json.loads((FIXTURES / "hammock_fixture_graph.json").read_text()))
    hd = build_hammock_decomposition(g, r)
    text = ser.dumps(ser.decomposition_to_json(g, hd))
    g2, hd2 = ser.decomposition_from_json(ser.loads(text))
    assert g2 == g
    assert hd2.root == hd.root and hd2.base_tree == hd.base_tree
    assert hd2.parent_edges == hd.parent_edges
    assert hd2.forest.parent_of == hd.forest.parent_of
    assert [(h.tree_a, h.tree_b, h.root_a, h.root_b) for h in hd2.hammocks] == [
        (h.tree_a, h.tree_b, h.root_a, h.root_b) for h in hd.hammocks
    ]
    assert ser.dumps(ser.decomposition_to_json(g2, hd2)) == text


def test_decomposition_needs_class_order():
    g = cycle(6)
    doc = ser.decomposition_to_json(g, build_hammock_decomposition(g, 0))
    doc["hammocks"][0]["class"] = 3
    with pytest.raises(GraphError):
        ser.decomposition_from_json(doc)


def test_chop_round_trip_with_fraction_width():
    g = path(9)
    sc = scattering_chop(g, build_hammock_decomposition(g, 0), Fraction(7, 3))
    doc = ser.loads(ser.dumps(ser.chop_to_json(g, sc)))
    assert doc["delta"] == "7/3"
    g2, chop = ser.chop_from_json(doc)
    assert g2 == g
    assert chop.delta == Fraction(7, 3)
    assert chop.annulus == sc.chop.annulus


def test_chop_annulus_length_checked():
    g = path(5)
    doc = ser.chop_to_json(g, scattering_chop(g, build_hammock_decomposition(g, 0), 2))
    doc["annulus"] = doc["annulus"][:-1]
    with pytest.raises(GraphError):
        ser.chop_from_json(doc)


def test_partition_round_trip():
    g = path(30)
    p = scattering_partition(g, 880)
    g2, p2 = ser.partition_from_json(ser.loads(ser.dumps(ser.partition_to_json(g, p))))
    assert g2 == g
    assert (p2.parts, p2.tau, p2.delta, p2.diameters, p2.tau_observed) == (
        p.parts, p.tau, p.delta, p.diameters, p.tau_observed
    )


def test_ears_round_trip():
    g = WeightedGraph.from_edges(7, [(0, 1), (0, 2), (1, 3), (1, 5), (2, 4), (2, 6), (3, 4), (5, 6)])
    hd = build_hammock_decomposition(g, 0)
    ed = nested_ear_decomposition(g, hd)
    g2, hd2, ed2 = ser.ears_from_json(ser.loads(ser.dumps(ser.ears_to_json(g, hd, ed))))
    assert g2 == g and ed2 == ed
    assert hd2.base_tree == hd.base_tree


def test_minor_round_trip():
    g = generate_series_parallel(4, 30)
    m = voronoi_spr_minor(SprInstance(g, [0, 5, 9, 20]))
    ratio, arg = distortion(g, m)
    doc = ser.loads(ser.dumps(ser.minor_to_json(g, m, ratio, arg)))
    assert doc["distortionExact"] == str(ratio)
    assert doc["distortion"] == float(ratio)
    g2, m2 = ser.minor_from_json(doc)
    assert g2 == g and m2 == m


def test_graph_dot_marks_tree_and_cross_edges():
    dot = ser.graph_to_dot(WeightedGraph.from_edges(3, [(0, 1), (1, 2), (0, 2, 4)]), 0)
    assert dot.startswith("graph G {") and dot.endswith("}\n")
    assert "0 [shape=doublecircle];" in dot
    # 0-2 has weight 4, so 2 hangs below 1 and 0-2 is the cross edge
    assert "0 -- 2 [style=dashed label=\"4\"];" in dot
    assert "1 -- 2 [style=solid];" in dot


def test_decomposition_dot_lists_every_edge():
    g, r, _ = ser.graph_from_json(json.loads((FIXTURES / "hammock_fixture_graph.json").read_text()))
    hd = build_hammock_decomposition(g, r)
    dot = ser.decomposition_to_dot(g, hd)
    assert sum(" -- " in line for line in dot.splitlines()) == g.m
    assert dot.count('label="Ep"') == len(hd.parent_edges)
