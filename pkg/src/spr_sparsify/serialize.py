"""JSON and DOT interchange for graphs, decompositions, chops, partitions and minors.

JSON is written compactly with sorted keys and a trailing newline so equal
objects always give equal bytes.  Non-integer rationals are written as
"p/q" strings.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .bfs import build_bfs_tree
from .chops import FuzzyChop, _num, as_fraction
from .ears import Ear, EarDecomposition
from .graph import GraphError, WeightedGraph
from .hammocks import Hammock, HammockDecomposition, HammockForest
from .scattering import ScatteringChop, ScatteringPartition
from .spr import SprMinor


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise GraphError(f"malformed JSON: {e}") from None


def _field(doc: dict, key: str):
    if not isinstance(doc, dict) or key not in doc:
        raise GraphError(f"missing field {key!r}")
    return doc[key]


# graphs

def graph_to_json(g: WeightedGraph, root: Optional[int] = None, terminals: Optional[Sequence[int]] = None) -> dict:
    return {
        "n": g.n,
        "edges": [list(e) for e in g.edges],
        "root": root,
        "terminals": None if terminals is None else sorted(terminals),
    }


def graph_from_json(doc: dict) -> Tuple[WeightedGraph, Optional[int], Optional[List[int]]]:
    n = _field(doc, "n")
    edges = _field(doc, "edges")
    if not isinstance(n, int) or not isinstance(edges, list):
        raise GraphError("graph needs an integer n and an edge list")
    for e in edges:
        if not isinstance(e, list) or len(e) not in (2, 3) or not all(isinstance(x, int) for x in e):
            raise GraphError(f"bad edge entry {e!r}")
    g = WeightedGraph.from_edges(n, edges)
    root = doc.get("root")
    terms = doc.get("terminals")
    if root is not None and not (isinstance(root, int) and 0 <= root < n):
        raise GraphError(f"root {root!r} outside 0..{n - 1}")
    return g, root, None if terms is None else list(terms)


# hammock decompositions

def decomposition_to_json(g: WeightedGraph, hd: HammockDecomposition) -> dict:
    return {
        "graph": graph_to_json(g, hd.root),
        "root": hd.root,
        "t0": sorted(hd.base_tree),
        "ep": [list(e) for e in sorted(hd.parent_edges)],
        "hammocks": [
            {
                "class": h.class_id,
                "treeA": sorted(h.tree_a),
                "treeB": sorted(h.tree_b),
                "rootA": h.root_a,
                "rootB": h.root_b,
                "parent": hd.forest.parent_of[h.class_id],
            }
            for h in hd.hammocks
        ],
    }


def decomposition_from_json(doc: dict) -> Tuple[WeightedGraph, HammockDecomposition]:
    g, _, _ = graph_from_json(_field(doc, "graph"))
    hs = []
    parents = []
    for k, h in enumerate(_field(doc, "hammocks")):
        if _field(h, "class") != k:
            raise GraphError("hammocks must be listed in class order")
        hs.append(Hammock(k, frozenset(_field(h, "treeA")), frozenset(_field(h, "treeB")),
                          _field(h, "rootA"), _field(h, "rootB"), "final"))
        parents.append(_field(h, "parent"))
    roots = tuple(k for k, p in enumerate(parents) if p is None)
    forest = HammockForest(tuple(hs), tuple(parents), roots)
    ep = tuple(sorted(tuple(e) for e in _field(doc, "ep")))
    return g, HammockDecomposition(_field(doc, "root"), frozenset(_field(doc, "t0")), forest, ep)


# chops and partitions

def chop_to_json(g: WeightedGraph, c: ScatteringChop) -> dict:
    out = c.to_json()
    out["graph"] = graph_to_json(g, c.chop.root)
    return out


def chop_from_json(doc: dict) -> Tuple[WeightedGraph, FuzzyChop]:
    g, root, _ = graph_from_json(_field(doc, "graph"))
    root = 0 if root is None else root
    t = build_bfs_tree(g, root)
    annulus = tuple(_field(doc, "annulus"))
    if len(annulus) != g.n:
        raise GraphError("annulus list does not match the vertex count")
    return g, FuzzyChop(as_fraction(_field(doc, "delta")), as_fraction(_field(doc, "fuzz")), root, annulus, t.depth)


def partition_to_json(g: WeightedGraph, p: ScatteringPartition) -> dict:
    return {
        "graph": graph_to_json(g),
        "delta": _num(p.delta),
        "tau": p.tau,
        "parts": [list(part) for part in p.parts],
        "diameters": list(p.diameters),
        "tauObserved": p.tau_observed,
        "chops": None if p.chops is None else p.chops.to_json(),
    }


def partition_from_json(doc: dict) -> Tuple[WeightedGraph, ScatteringPartition]:
    g, _, _ = graph_from_json(_field(doc, "graph"))
    parts = tuple(tuple(part) for part in _field(doc, "parts"))
    diam = tuple(doc.get("diameters") or ())
    p = ScatteringPartition(parts, int(_field(doc, "tau")), as_fraction(_field(doc, "delta")), diam,
                            int(doc.get("tauObserved") or 0))
    return g, p


# ears

def ears_to_json(g: WeightedGraph, hd: HammockDecomposition, ed: EarDecomposition) -> dict:
    return {
        "decomposition": decomposition_to_json(g, hd),
        "ears": [{"vertices": list(e.vertices), "cross": list(e.cross_edge)} for e in ed.ears],
        "parentEar": list(ed.parent_ear),
    }


def ears_from_json(doc: dict) -> Tuple[WeightedGraph, HammockDecomposition, EarDecomposition]:
    g, hd = decomposition_from_json(_field(doc, "decomposition"))
    ears = tuple(Ear(tuple(_field(e, "vertices")), tuple(_field(e, "cross"))) for e in _field(doc, "ears"))
    return g, hd, EarDecomposition(ears, tuple(_field(doc, "parentEar")))


# SPR

def minor_to_json(g: WeightedGraph, m: SprMinor, ratio: Fraction, argmax) -> dict:
    return {
        "instance": {"graph": graph_to_json(g), "terminals": list(m.terminals)},
        "minor": graph_to_json(m.minor_graph),
        "terminals": list(m.terminals),
        "witness": list(m.witness),
        "distortion": float(ratio),
        "distortionExact": str(ratio),
        "argmax": None if argmax is None else list(argmax),
    }


def minor_from_json(doc: dict) -> Tuple[WeightedGraph, SprMinor]:
    g, _, _ = graph_from_json(_field(_field(doc, "instance"), "graph"))
    mg, _, _ = graph_from_json(_field(doc, "minor"))
    return g, SprMinor(mg, tuple(_field(doc, "terminals")), tuple(_field(doc, "witness")))


# DOT

_PALETTE = ("#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#1f78b4")


def graph_to_dot(g: WeightedGraph, root: int = 0) -> str:
    t = build_bfs_tree(g, root)
    lines = ["graph G {", f"  {root} [shape=doublecircle];"]
    for u, v, w in g.edges:
        style = "solid" if t.is_tree_edge(u, v) else "dashed"
        label = f' label="{w}"' if w != 1 else ""
        lines.append(f"  {u} -- {v} [style={style}{label}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def decomposition_to_dot(g: WeightedGraph, hd: HammockDecomposition) -> str:
    color: Dict[Tuple[int, int], str] = {}
    for h in hd.hammocks:
        c = _PALETTE[h.class_id % len(_PALETTE)]
        vs = h.vertices
        for u, v, _ in g.edges:
            if u in vs and v in vs:
                color[(u, v)] = c
    ep = set(hd.parent_edges)
    lines = ["graph H {"]
    for v in sorted(hd.base_tree | {hd.root}):
        shape = " shape=doublecircle" if v == hd.root else ""
        fill = " style=filled fillcolor=lightgray" if v in hd.base_tree else ""
        lines.append(f"  {v} [{(shape + fill).strip()}];")
    for u, v, _ in g.edges:
        if (u, v) in ep:
            attrs = 'color=red style=bold label="Ep"'
        elif (u, v) in color:
            attrs = f'color="{color[(u, v)]}"'
        else:
            attrs = "color=black"
        lines.append(f"  {u} -- {v} [{attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
