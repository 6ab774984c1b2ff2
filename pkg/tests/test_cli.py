import json
from pathlib import Path

import pytest

from spr_sparsify import serialize as ser
from spr_sparsify.cli import INVALID, INVARIANT, NOT_SP, OK, main

from corpus import complete

FIXTURES = Path(__file__).parent / "fixtures"


def _run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def _write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(ser.dumps(doc))
    return p


def test_generate_two_vertices(capsys):
    code, out, _ = _run(capsys, "generate", "--seed", 1, "--n", 2)
    assert code == OK
    doc = json.loads(out)
    assert doc["n"] == 2 and doc["edges"] == [[0, 1, 1]]


def test_generate_is_deterministic_and_sp(capsys, tmp_path):
    _, a, _ = _run(capsys, "generate", "--seed", 7, "--n", 50)
    _, b, _ = _run(capsys, "generate", "--seed", 7, "--n", 50)
    assert a == b
    p = tmp_path / "g.json"
    p.write_text(a)
    code, out, _ = _run(capsys, "verify", "--in", p)
    assert code == OK and json.loads(out)["seriesParallel"] is True


def test_generate_flag_errors(capsys):
    assert _run(capsys, "generate", "--n", 5)[0] == INVALID
    assert _run(capsys, "generate", "--seed", 1, "--n", 1)[0] == INVALID
    assert _run(capsys, "frobnicate")[0] == INVALID


def test_generate_dot(capsys):
    code, out, _ = _run(capsys, "generate", "--seed", 3, "--n", 6, "--format", "dot")
    assert code == OK and out.startswith("graph G {")


def test_decompose_fixture_matches_golden(capsys):
    code, out, _ = _run(capsys, "decompose", "--in", FIXTURES / "hammock_fixture_graph.json")
    assert code == OK
    assert out == (FIXTURES / "hammock_fixture_golden.json").read_text()


def test_decompose_tree_has_no_hammocks(capsys, tmp_path):
    p = _write(tmp_path, "t.json", {"n": 4, "edges": [[0, 1], [1, 2], [1, 3]], "root": 0})
    code, out, _ = _run(capsys, "decompose", "--in", p)
    assert code == OK and json.loads(out)["hammocks"] == []


def test_decompose_k4_is_not_series_parallel(capsys, tmp_path):
    p = _write(tmp_path, "k4.json", ser.graph_to_json(complete(4), 0))
    code, out, err = _run(capsys, "decompose", "--in", p)
    assert code == NOT_SP
    assert err.strip()
    code, _, _ = _run(capsys, "verify", "--in", p)
    assert code == NOT_SP


def test_bad_inputs_exit_invalid(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    assert _run(capsys, "decompose", "--in", bad)[0] == INVALID
    assert _run(capsys, "decompose")[0] == INVALID
    assert _run(capsys, "decompose", "--in", tmp_path / "missing.json")[0] == INVALID
    split = _write(tmp_path, "split.json", {"n": 4, "edges": [[0, 1], [2, 3]]})
    assert _run(capsys, "decompose", "--in", split)[0] == INVALID
    heavy = _write(tmp_path, "heavy.json", {"n": 2, "edges": [[0, 1, 3]]})
    assert _run(capsys, "decompose", "--in", heavy)[0] == INVALID
    g = FIXTURES / "two_hammocks.json"
    assert _run(capsys, "chop", "--in", g, "--delta", "0")[0] == INVALID
    assert _run(capsys, "chop", "--in", g, "--delta", "x")[0] == INVALID


def test_chop_and_its_verification(capsys, tmp_path):
    code, out, _ = _run(capsys, "chop", "--in", FIXTURES / "two_hammocks.json", "--delta", "5/2", "--levels", 1)
    assert code == OK
    doc = json.loads(out)
    assert doc["delta"] == "5/2"
    assert doc["budgets"]["ok"] is True
    p = _write(tmp_path, "c.json", doc)
    assert _run(capsys, "verify", "--in", p)[0] == OK
    # push the root three annuli out
    doc["annulus"][0] = 3
    p = _write(tmp_path, "c2.json", doc)
    code, out, _ = _run(capsys, "verify", "--in", p)
    assert code == INVARIANT
    assert json.loads(out)["violations"][0]["witness"][0] == 0


def test_partition_verify_and_corruption(capsys, tmp_path):
    g = _write(tmp_path, "p.json", {"n": 40, "edges": [[i, i + 1] for i in range(39)], "root": 0})
    code, out, _ = _run(capsys, "partition", "--in", g, "--delta", 880)
    assert code == OK
    doc = json.loads(out)
    p = _write(tmp_path, "part.json", doc)
    assert _run(capsys, "verify", "--in", p)[0] == OK
    # glue the two end parts together: disconnected and too wide
    doc["parts"] = [doc["parts"][0] + doc["parts"][-1]] + doc["parts"][1:-1]
    doc["diameters"] = [0] * len(doc["parts"])
    p = _write(tmp_path, "bad.json", doc)
    code, out, err = _run(capsys, "verify", "--in", p)
    assert code == INVARIANT
    assert json.loads(out)["checks"]["connected"] is False
    assert "connected" in err


def test_partition_budget_flag(capsys, tmp_path):
    g = _write(tmp_path, "g.json", {"n": 40, "edges": [[i, i + 1] for i in range(39)], "root": 0})
    assert _run(capsys, "partition", "--in", g, "--delta", 880, "--budget-tau", 1)[0] == INVARIANT


def test_spr_star_distortion_two(capsys):
    code, out, _ = _run(capsys, "spr", "--in", FIXTURES / "star.json")
    assert code == OK
    doc = json.loads(out)
    assert doc["distortion"] == 2.0 and doc["distortionExact"] == "2"


def test_spr_terminal_flags(capsys, tmp_path):
    star = FIXTURES / "star.json"
    code, out, _ = _run(capsys, "spr", "--in", star, "--terminals", "0,1")
    assert code == OK and json.loads(out)["terminals"] == [0, 1]
    assert _run(capsys, "spr", "--in", star, "--terminals", 9)[0] == INVALID
    assert _run(capsys, "spr", "--in", star, "--terminals", "a,b")[0] == INVALID
    p = _write(tmp_path, "s.json", {"n": 3, "edges": [[0, 1], [1, 2]]})
    assert _run(capsys, "spr", "--in", p)[0] == INVALID


def test_spr_output_verifies(capsys, tmp_path):
    code, out, _ = _run(capsys, "spr", "--in", FIXTURES / "star.json")
    p = tmp_path / "m.json"
    p.write_text(out)
    code, out, _ = _run(capsys, "verify", "--in", p)
    assert code == OK and json.loads(out)["distortion"] == 2.0


def test_ears_round_trip_through_verify(capsys, tmp_path):
    theta = {"n": 7, "edges": [[0, 1], [0, 2], [1, 3], [1, 5], [2, 4], [2, 6], [3, 4], [5, 6]], "root": 0}
    code, out, _ = _run(capsys, "ears", "--in", _write(tmp_path, "t.json", theta))
    assert code == OK
    doc = json.loads(out)
    assert len(doc["ears"]) == 2
    assert _run(capsys, "verify", "--in", _write(tmp_path, "e.json", doc))[0] == OK
    doc["parentEar"] = [None, None]
    assert _run(capsys, "verify", "--in", _write(tmp_path, "e2.json", doc))[0] == INVARIANT


def test_decomposition_verify_flags_corruption(capsys, tmp_path):
    doc = json.loads((FIXTURES / "hammock_fixture_golden.json").read_text())
    assert _run(capsys, "verify", "--in", FIXTURES / "hammock_fixture_golden.json")[0] == OK
    doc["ep"] = doc["ep"][1:]
    code, out, _ = _run(capsys, "verify", "--in", _write(tmp_path, "d.json", doc))
    assert code == INVARIANT and json.loads(out)["checks"]["partition"] is False


def test_batch_writes_one_file_per_input(capsys, tmp_path):
    outdir = tmp_path / "out"
    k4 = _write(tmp_path, "k4.json", ser.graph_to_json(complete(4), 0))
    code, _, err = _run(capsys, "decompose", "--in", FIXTURES / "two_hammocks.json", "--in", k4, "--out", outdir)
    # worst exit code wins and the failing file is named
    assert code == NOT_SP
    assert "k4.json" in err
    assert (outdir / "two_hammocks.decompose.json").exists()
    assert not (outdir / "k4.decompose.json").exists()


def test_batch_with_threads(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("SPR_SPARSIFY_THREADS", "3")
    outdir = tmp_path / "out"
    ins = [FIXTURES / n for n in ("two_hammocks.json", "hammock_fixture_graph.json", "star.json")]
    argv = ["decompose", "--out", outdir] + [x for p in ins for x in ("--in", p)]
    assert _run(capsys, *argv)[0] == OK
    golden = (FIXTURES / "hammock_fixture_golden.json").read_text()
    assert (outdir / "hammock_fixture_graph.decompose.json").read_text() == golden
    monkeypatch.setenv("SPR_SPARSIFY_THREADS", "many")
    assert _run(capsys, *argv)[0] == INVALID


def test_out_and_stdout(capsys, tmp_path):
    target = tmp_path / "g.json"
    code, out, _ = _run(capsys, "generate", "--seed", 2, "--n", 8, "--out", target)
    assert code == OK and out == "" and target.read_text()
    code, out, _ = _run(capsys, "generate", "--seed", 2, "--n", 8, "--out", target, "--stdout")
    assert out == target.read_text()


def test_config_file_and_flag_precedence(capsys, tmp_path):
    cfg = _write(tmp_path, "cfg.json", {"seed": 5, "n": 12})
    _, from_cfg, _ = _run(capsys, "generate", "--config", cfg)
    _, direct, _ = _run(capsys, "generate", "--seed", 5, "--n", 12)
    assert from_cfg == direct
    _, override, _ = _run(capsys, "generate", "--config", cfg, "--n", 13)
    assert json.loads(override)["n"] == 13
    bad = _write(tmp_path, "bad.json", {"colour": "red"})
    assert _run(capsys, "generate", "--config", bad)[0] == INVALID
    assert _run(capsys, "generate", "--config", tmp_path / "none.json")[0] == INVALID


def test_help_exits_ok(capsys):
    assert _run(capsys, "--help")[0] == OK
