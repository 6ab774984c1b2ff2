"""Command-line front end: ``spr-sparsify <command> [flags]``.

Exit codes: 0 ok, 2 invalid parameters or input, 3 input is not
series-parallel, 4 a construction or verification invariant failed.
Machine output goes to ``--out`` (or stdout); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path as FsPath
from typing import Callable, Dict, List, Optional, Tuple

from . import serialize as ser
from .chops import as_fraction, verify_fuzzy
from .ears import nested_ear_decomposition, verify_ear_decomposition
from .generate import GeneratorConfig, generate_series_parallel
from .graph import GraphError, WeightedGraph, is_connected
from .hammock_verify import verify_hammock_decomposition
from .bfs import build_bfs_tree
from .hammocks import build_hammock_decomposition
from .recognition import is_series_parallel
from .report import Report, StructuredFailure
from .scattering import (
    C_PRIME,
    LEVELS,
    TAU_PARTITION,
    cut_budget_report,
    scattering_chop,
    scattering_chopper,
    scattering_partition,
    verify_scattering,
)
from .chops import recursive_chops
from .spr import SprInstance, distortion, verify_minor, voronoi_spr_minor

OK, INVALID, NOT_SP, INVARIANT = 0, 2, 3, 4
COMMANDS = ("generate", "decompose", "chop", "partition", "spr", "verify", "ears")
DEFAULTS = {"seed": None, "n": None, "delta": 8, "levels": LEVELS, "terminals": None,
            "format": "json", "budget_tau": None, "root": None}


class CliError(Exception):
    def __init__(self, code: int, message: str, payload: Optional[dict] = None):
        super().__init__(message)
        self.code = code
        self.payload = payload


@dataclass
class Outcome:
    code: int
    text: str  # machine output, possibly empty
    message: str = ""  # diagnostic for stderr


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spr-sparsify", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--seed", type=int)
        s.add_argument("--n", type=int)
        s.add_argument("--delta")
        s.add_argument("--levels", type=int)
        s.add_argument("--terminals", help="count, or comma-separated vertex ids")
        s.add_argument("--root", type=int)
        s.add_argument("--in", dest="inputs", action="append", default=[], metavar="FILE")
        s.add_argument("--out")
        s.add_argument("--format", choices=("json", "dot"))
        s.add_argument("--budget-tau", dest="budget_tau", type=int)
        s.add_argument("--stdout", action="store_true", help="write machine output to stdout")
        s.add_argument("--config", help="JSON file supplying any flag; explicit flags win")
    return p


def _apply_config(args: argparse.Namespace) -> None:
    file_vals: Dict[str, object] = {}
    if args.config:
        try:
            file_vals = json.loads(FsPath(args.config).read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise CliError(INVALID, f"cannot read config {args.config}: {e}")
        if not isinstance(file_vals, dict):
            raise CliError(INVALID, "config file must hold a JSON object")
        file_vals = {k.replace("-", "_"): v for k, v in file_vals.items()}
        unknown = set(file_vals) - set(DEFAULTS) - {"inputs", "out", "stdout"}
        if unknown:
            raise CliError(INVALID, f"unknown config keys: {sorted(unknown)}")
    for key, default in DEFAULTS.items():
        if getattr(args, key) is None:
            setattr(args, key, file_vals.get(key, default))
    if not args.inputs and "inputs" in file_vals:
        args.inputs = list(file_vals["inputs"])
    if args.out is None and "out" in file_vals:
        args.out = file_vals["out"]
    if not args.stdout and file_vals.get("stdout"):
        args.stdout = True


# helpers

def _load(path: str) -> dict:
    try:
        return ser.loads(FsPath(path).read_text())
    except OSError as e:
        raise CliError(INVALID, f"cannot read {path}: {e}")


def _delta(args) -> object:
    try:
        d = as_fraction(args.delta)
    except (ValueError, ZeroDivisionError, TypeError):
        raise CliError(INVALID, f"bad --delta {args.delta!r}")
    if d <= 0:
        raise CliError(INVALID, "--delta must be positive")
    return d


def _sp_graph(doc: dict, args) -> Tuple[WeightedGraph, int]:
    g, root, _ = ser.graph_from_json(doc)
    if args.root is not None:
        root = args.root
    root = 0 if root is None else root
    if not 0 <= root < max(g.n, 1):
        raise CliError(INVALID, f"root {root} outside the vertex range")
    if not is_connected(g):
        raise CliError(INVALID, "input graph is disconnected")
    if not g.unit_weight:
        raise CliError(INVALID, "input has non-unit weights; expand them first")
    sp = is_series_parallel(g)
    if not sp:
        raise CliError(NOT_SP, sp.summary())
    return g, root


def _report_outcome(kind: str, rep: Report, extra: Optional[dict] = None) -> Outcome:
    doc = {"kind": kind, **rep.to_json(), **(extra or {})}
    if rep.ok:
        return Outcome(OK, ser.dumps(doc))
    first = rep.violations[0]
    return Outcome(INVARIANT, ser.dumps(doc), f"{kind}: check {first.check!r} failed: {first.message}")


# commands

def cmd_generate(args, _doc) -> Outcome:
    if args.seed is None:
        raise CliError(INVALID, "generate needs --seed")
    if args.n is None or args.n < 2:
        raise CliError(INVALID, "generate needs --n >= 2")
    g = generate_series_parallel(args.seed, args.n, GeneratorConfig())
    if args.format == "dot":
        return Outcome(OK, ser.graph_to_dot(g, 0))
    return Outcome(OK, ser.dumps(ser.graph_to_json(g, 0)))


def cmd_decompose(args, doc) -> Outcome:
    g, root = _sp_graph(doc, args)
    hd = build_hammock_decomposition(g, root)
    rep = verify_hammock_decomposition(g, build_bfs_tree(g, root), hd)
    if not rep.ok:
        v = rep.violations[0]
        raise CliError(INVARIANT, f"decomposition failed check {v.check!r}: {v.message}", rep.to_json())
    if args.format == "dot":
        return Outcome(OK, ser.decomposition_to_dot(g, hd))
    return Outcome(OK, ser.dumps(ser.decomposition_to_json(g, hd)))


def cmd_chop(args, doc) -> Outcome:
    g, root = _sp_graph(doc, args)
    delta = _delta(args)
    hd = build_hammock_decomposition(g, root)
    sc = scattering_chop(g, hd, delta)
    budgets = cut_budget_report(g, hd, sc, delta)
    fuzzy = verify_fuzzy(sc.chop)
    out = ser.chop_to_json(g, sc)
    out["budgets"] = budgets.to_json()
    out["tauObserved"] = budgets.stats.get("full_path_cuts")
    if args.levels and args.levels > 1:
        tree = recursive_chops(g, delta, args.levels, scattering_chopper)
        out["components"] = tree.to_json()
    if not fuzzy.ok:
        raise CliError(INVARIANT, f"chop is not fuzzy: {fuzzy.violators[:3]}", out)
    if not budgets.ok:
        v = budgets.violations[0]
        raise CliError(INVARIANT, f"cut budget check {v.check!r} failed: {v.message}", out)
    return Outcome(OK, ser.dumps(out))


def cmd_partition(args, doc) -> Outcome:
    g, _ = _sp_graph(doc, args)
    delta = _delta(args)
    p = scattering_partition(g, delta)
    out = ser.partition_to_json(g, p)
    budget = args.budget_tau if args.budget_tau is not None else TAU_PARTITION
    out["budgetTau"] = budget
    out["chopWidth"] = ser._num(C_PRIME * delta)
    if p.tau_observed > budget:
        raise CliError(INVARIANT, f"scattering: observed {p.tau_observed} parts on a path > budget {budget}", out)
    return Outcome(OK, ser.dumps(out))


def _terminals(args, g: WeightedGraph, from_file: Optional[List[int]]) -> List[int]:
    spec = args.terminals
    if spec is None:
        if from_file is None:
            raise CliError(INVALID, "spr needs --terminals or a terminals field in the input")
        return list(from_file)
    spec = str(spec)
    if "," in spec:
        try:
            return [int(x) for x in spec.split(",") if x.strip()]
        except ValueError:
            raise CliError(INVALID, f"bad --terminals {spec!r}")
    try:
        k = int(spec)
    except ValueError:
        raise CliError(INVALID, f"bad --terminals {spec!r}")
    if not 1 <= k <= g.n:
        raise CliError(INVALID, f"--terminals count must be in 1..{g.n}")
    return sorted(random.Random(args.seed or 0).sample(range(g.n), k))


def cmd_spr(args, doc) -> Outcome:
    g, _, terms = ser.graph_from_json(doc)
    inst = SprInstance(g, tuple(_terminals(args, g, terms)))
    m = voronoi_spr_minor(inst)
    rep = verify_minor(g, m)
    ratio, arg = distortion(g, m)
    out = ser.minor_to_json(g, m, ratio, arg)
    if not rep.ok:
        v = rep.violations[0]
        raise CliError(INVARIANT, f"minor failed check {v.check!r}: {v.message}", out)
    return Outcome(OK, ser.dumps(out))


def cmd_ears(args, doc) -> Outcome:
    g, root = _sp_graph(doc, args)
    hd = build_hammock_decomposition(g, root)
    ed = nested_ear_decomposition(g, hd)
    rep = verify_ear_decomposition(g, hd, ed)
    out = ser.ears_to_json(g, hd, ed)
    if not rep.ok:
        v = rep.violations[0]
        raise CliError(INVARIANT, f"ear decomposition failed check {v.check!r}: {v.message}", out)
    return Outcome(OK, ser.dumps(out))


def cmd_verify(args, doc) -> Outcome:
    """Recognise the document kind by its fields and run the matching verifier."""
    if "ears" in doc:
        g, hd, ed = ser.ears_from_json(doc)
        return _report_outcome("ears", verify_ear_decomposition(g, hd, ed))
    if "hammocks" in doc:
        g, hd = ser.decomposition_from_json(doc)
        return _report_outcome("decomposition", verify_hammock_decomposition(g, build_bfs_tree(g, hd.root), hd))
    if "parts" in doc:
        g, p = ser.partition_from_json(doc)
        if args.budget_tau is not None:
            p = type(p)(p.parts, args.budget_tau, p.delta, p.diameters, p.tau_observed)
        return _report_outcome("partition", verify_scattering(g, p))
    if "minor" in doc:
        g, m = ser.minor_from_json(doc)
        rep = verify_minor(g, m)
        extra = {}
        if rep.ok:
            ratio, arg = distortion(g, m)
            extra = {"distortion": float(ratio), "argmax": None if arg is None else list(arg)}
        return _report_outcome("minor", rep, extra)
    if "annulus" in doc:
        g, chop = ser.chop_from_json(doc)
        fr = verify_fuzzy(chop)
        doc_out = {"kind": "chop", "ok": fr.ok, "checks": {"fuzzy-bands": fr.ok},
                   "violations": [{"check": "fuzzy-bands", "witness": list(v)} for v in fr.violators]}
        if fr.ok:
            return Outcome(OK, ser.dumps(doc_out))
        return Outcome(INVARIANT, ser.dumps(doc_out), f"chop: check 'fuzzy-bands' failed at {fr.violators[0]}")
    if "edges" in doc:
        g, _, _ = ser.graph_from_json(doc)
        sp = is_series_parallel(g)
        if not sp:
            return Outcome(NOT_SP, ser.dumps({"kind": "graph", "ok": False, "seriesParallel": False}), sp.summary())
        return Outcome(OK, ser.dumps({"kind": "graph", "ok": True, "seriesParallel": True}))
    raise CliError(INVALID, "unrecognised document")


HANDLERS: Dict[str, Callable] = {
    "generate": cmd_generate,
    "decompose": cmd_decompose,
    "chop": cmd_chop,
    "partition": cmd_partition,
    "spr": cmd_spr,
    "verify": cmd_verify,
    "ears": cmd_ears,
}


def _run_one(args, path: Optional[str]) -> Outcome:
    try:
        doc = _load(path) if path is not None else None
        if doc is None and args.command != "generate":
            raise CliError(INVALID, f"{args.command} needs --in")
        return HANDLERS[args.command](args, doc)
    except CliError as e:
        text = ser.dumps(e.payload) if e.payload is not None else ""
        return Outcome(e.code, text, str(e))
    except StructuredFailure as e:
        return Outcome(INVARIANT, ser.dumps({"failure": e.to_json()}), str(e))
    except (GraphError, ValueError) as e:
        return Outcome(INVALID, "", str(e))


def _threads() -> int:
    raw = os.environ.get("SPR_SPARSIFY_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise CliError(INVALID, f"SPR_SPARSIFY_THREADS must be an integer, got {raw!r}")


def _emit(args, outcomes: List[Tuple[Optional[str], Outcome]]) -> None:
    batch = len(outcomes) > 1
    for path, oc in outcomes:
        if oc.message:
            prefix = f"{path}: " if batch and path else ""
            print(f"{prefix}{oc.message}", file=sys.stderr)
    if args.out and batch:
        outdir = FsPath(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        ext = "dot" if args.format == "dot" else "json"
        for path, oc in outcomes:
            if oc.text:
                (outdir / f"{FsPath(path).stem}.{args.command}.{ext}").write_text(oc.text)
    elif args.out:
        text = outcomes[0][1].text
        if text:
            FsPath(args.out).write_text(text)
    if args.stdout or not args.out:
        for _, oc in outcomes:
            sys.stdout.write(oc.text)


def main(argv: Optional[List[str]] = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return INVALID if e.code else OK
    try:
        _apply_config(args)
        workers = _threads()
    except CliError as e:
        print(str(e), file=sys.stderr)
        return e.code
    paths: List[Optional[str]] = list(args.inputs) or [None]
    if len(paths) > 1 and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda p: _run_one(args, p), paths))
    else:
        results = [_run_one(args, p) for p in paths]
    outcomes = list(zip(paths, results))
    _emit(args, outcomes)
    return max(oc.code for _, oc in outcomes)


if __name__ == "__main__":
    sys.exit(main())
