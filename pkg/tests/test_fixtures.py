import json
from pathlib import Path

from spr_sparsify import build_bfs_tree, build_hammock_decomposition, verify_hammock_decomposition
from spr_sparsify import serialize as ser

FIXTURES = Path(__file__).parent / "fixtures"


def test_hammock_fixture_reproduces_golden_bytes():
    g, r, _ = ser.graph_from_json(json.loads((FIXTURES / "hammock_fixture_graph.json").read_text()))
    hd = build_hammock_decomposition(g, r)
    golden = (FIXTURES / "hammock_fixture_golden.json").read_bytes()
    assert ser.dumps(ser.decomposition_to_json(g, hd)).encode() == golden
    assert verify_hammock_decomposition(g, build_bfs_tree(g, r), hd).ok


def test_golden_is_canonical_json():
    raw = (FIXTURES / "hammock_fixture_golden.json").read_text()
    assert ser.dumps(json.loads(raw)) == raw


def test_small_fixtures_load():
    for name in ("star.json", "two_hammocks.json", "hammock_fixture_graph.json"):
        g, r, _ = ser.graph_from_json(json.loads((FIXTURES / name).read_text()))
        assert r == 0 and g.n > 0
