"""Nested ear decompositions read off a hammock decomposition.

Hammocks are processed in BFS order of the hammock forest.  Inside a hammock
the next cross edge is one whose endpoints have no other unprocessed cross
edge endpoint above them; its ear climbs the tree from both endpoints until
it meets the part already decomposed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

import networkx as nx

from .bfs import RootedBfsTree, build_bfs_tree
from .graph import GraphError, WeightedGraph, edge_key
from .hammocks import HammockDecomposition
from .report import Report, ReportBuilder, StructuredFailure


@dataclass(frozen=True)
class Ear:
    """Vertices in order; a closed ear starts and ends at the same vertex."""

    vertices: Tuple[int, ...]
    cross_edge: Tuple[int, int]

    @property
    def closed(self) -> bool:
        return self.vertices[0] == self.vertices[-1]

    @property
    def ends(self) -> Tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    def edges(self) -> List[Tuple[int, int]]:
        vs = self.vertices
        return [edge_key(a, b) for a, b in zip(vs, vs[1:])]


@dataclass(frozen=True)
class EarDecomposition:
    ears: Tuple[Ear, ...]
    parent_ear: Tuple[Optional[int], ...]


def _to_nx(g: WeightedGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edge_pairs())
    return h


def _attach(ears: List[Ear], upto: int, a: int, b: int) -> Optional[int]:
    for j in range(upto):
        vs = ears[j].vertices
        if a in vs and b in vs:
            return j
    return None


def _hammock_cross_edges(g: WeightedGraph, t: RootedBfsTree, h) -> List[Tuple[int, int]]:
    cross = t.cross_edge_set
    return sorted(
        (u, v) for u in h.tree_a for v, _ in g.neighbors(u)
        if v in h.tree_b and edge_key(u, v) in cross
    )


def _candidate(t: RootedBfsTree, todo: List[Tuple[int, int]]) -> Optional[Tuple[int, int]]:
    """First edge with no other remaining endpoint strictly above either of
    its endpoints; failing that, the first edge not dominated on both sides
    at once (such a maximal edge always exists)."""
    def above(x, y):
        return t.is_proper_ancestor(x, y)

    for u, v in todo:
        if not any((a, b) != (u, v) and (above(a, u) or above(b, v)) for a, b in todo):
            return u, v
    for u, v in todo:
        if not any(
            (a, b) != (u, v) and t.is_ancestor(a, u) and t.is_ancestor(b, v)
            for a, b in todo
        ):
            return u, v
    return None


def _hammock_ears(t: RootedBfsTree, todo: List[Tuple[int, int]], in_d: Set[int], i: int) -> List[Ear]:
    """Ears of one hammock given the vertices already decomposed; ``in_d`` is
    updated in place."""
    todo = list(todo)
    out: List[Ear] = []
    while todo:
        pick = _candidate(t, todo)
        if pick is None:
            raise StructuredFailure("candidate-cross-edge", f"no candidate cross edge in hammock {i}",
                                    stage="ears", witness=todo)
        todo.remove(pick)
        u, v = pick
        if not in_d:
            in_d.add(t.lca(u, v))
        legs = []
        for x in (u, v):
            leg = [x]
            while leg[-1] not in in_d:
                p = t.parent[leg[-1]]
                if p is None:
                    raise StructuredFailure("candidate-cross-edge", f"climb from {x} never meets the ear set",
                                            stage="ears", witness=pick)
                leg.append(p)
            legs.append(leg)
        vs = tuple(legs[0][::-1] + legs[1])
        out.append(Ear(vs, edge_key(u, v)))
        in_d.update(vs)
    return out


def _all_open(ears: List[Ear], first: bool) -> bool:
    return all(not e.closed for e in (ears[1:] if first else ears))


def nested_ear_decomposition(g: WeightedGraph, hd: HammockDecomposition, t: Optional[RootedBfsTree] = None) -> EarDecomposition:
    """Hammocks are taken level by level in the hammock forest.  Within a
    level the order is free, so the next hammock is the first one whose ears
    all come out open given what is already decomposed."""
    if g.n < 3 or not nx.is_biconnected(_to_nx(g)):
        raise GraphError("ear decompositions need a 2-vertex-connected graph")
    if t is None:
        t = build_bfs_tree(g, hd.root)
    forest = hd.forest
    level: Dict[int, int] = {}
    for i in forest.bfs_order():
        p = forest.parent_of[i]
        level[i] = 0 if p is None else level[p] + 1
    by_level: Dict[int, List[int]] = {}
    for i in forest.bfs_order():
        by_level.setdefault(level[i], []).append(i)
    in_d: Set[int] = set()
    ears: List[Ear] = []
    for lv in sorted(by_level):
        pending = list(by_level[lv])
        while pending:
            chosen = None
            for i in pending:
                trial = set(in_d)
                got = _hammock_ears(t, _hammock_cross_edges(g, t, hd.hammocks[i]), trial, i)
                if _all_open(got, not ears):
                    chosen = (i, got, trial)
                    break
            if chosen is None:
                raise StructuredFailure("open-ear-order", f"every remaining hammock at level {lv} yields a closed ear",
                                        stage="ears", witness=pending)
            i, got, in_d = chosen
            pending.remove(i)
            ears.extend(got)
    parents = tuple(None if k == 0 else _attach(ears, k, *ears[k].ends) for k in range(len(ears)))
    return EarDecomposition(tuple(ears), parents)


def _crossing(pos: Dict[int, int], size: int, a: int, b: int, c: int, d: int) -> bool:
    # chords (a,b) and (c,d) on a path or cycle cross when their four
    # positions are distinct and strictly interleave
    pa, pb, pc, pd = pos[a], pos[b], pos[c], pos[d]
    if len({pa, pb, pc, pd}) < 4:
        return False
    lo, hi = min(pa, pb), max(pa, pb)
    return (lo < pc < hi) != (lo < pd < hi)


def verify_ear_decomposition(g: WeightedGraph, hd: HammockDecomposition, ed: EarDecomposition,
                             t: Optional[RootedBfsTree] = None) -> Report:
    rb = ReportBuilder("partition", "shape", "open", "tree", "nested", "parent-edges", "same-lca")
    if t is None:
        t = build_bfs_tree(g, hd.root)
    ep = {tuple(e) for e in hd.parent_edges}
    seen_e: Dict[Tuple[int, int], int] = {}
    seen_v: Set[int] = set()
    ears = ed.ears
    if len(ed.parent_ear) != len(ears):
        rb.fail("tree", f"{len(ed.parent_ear)} parent entries for {len(ears)} ears")
        ed = EarDecomposition(ears, (tuple(ed.parent_ear) + (None,) * len(ears))[: len(ears)])
    for k, ear in enumerate(ears):
        vs = ear.vertices
        es = ear.edges()
        for e in es:
            if not g.has_edge(*e):
                rb.fail("partition", f"ear {k} uses non-edge {e}", k)
            if e in seen_e:
                rb.fail("partition", f"edge {e} in ears {seen_e[e]} and {k}", e)
            seen_e[e] = k
        crosses = [e for e in es if e in t.cross_edge_set]
        if crosses != [ear.cross_edge]:
            rb.fail("shape", f"ear {k} has cross edges {crosses}", k)
        else:
            j = es.index(ear.cross_edge)
            for leg in (vs[: j + 1], vs[j + 1:][::-1]):
                if any(t.parent[leg[s + 1]] != leg[s] for s in range(len(leg) - 1)):
                    rb.fail("shape", f"ear {k} leg {leg} is not a monotone tree path", k)
        inner = set(vs[1:-1])
        if k == 0:
            if not ear.closed:
                rb.fail("open", "first ear is not a cycle", 0)
            if len(set(vs)) != len(vs) - 1:
                rb.fail("open", "first ear is not a simple cycle", 0)
        else:
            if ear.closed or len(set(vs)) != len(vs):
                rb.fail("open", f"ear {k} is not an open simple path with distinct ends", k)
            if inner & seen_v:
                rb.fail("open", f"ear {k} reuses vertices {sorted(inner & seen_v)}", k)
            if not set(ear.ends) <= seen_v:
                rb.fail("open", f"ear {k} endpoints are not on earlier ears", k)
            if ed.parent_ear[k] is None or _attach(list(ears), k, *ear.ends) != ed.parent_ear[k]:
                rb.fail("tree", f"ear {k} endpoints do not lie on a single earlier ear", k)
        seen_v.update(vs)
        n_ep = sum(1 for e in es if e in ep)
        if n_ep > 1:
            rb.fail("parent-edges", f"ear {k} holds {n_ep} parent edges", k)
    if len(seen_e) != g.m:
        rb.fail("partition", f"ears cover {len(seen_e)} of {g.m} edges")

    # nesting of ears hanging off a common ear
    for j, ear in enumerate(ears):
        vs = ear.vertices[:-1] if ear.closed else ear.vertices
        pos = {v: s for s, v in enumerate(vs)}
        # children not actually attached to ear j are reported by "tree"
        kids = [k for k, p in enumerate(ed.parent_ear) if p == j and set(ears[k].ends) <= pos.keys()]
        for x in range(len(kids)):
            for y in range(x + 1, len(kids)):
                a, b = ears[kids[x]].ends
                c, d = ears[kids[y]].ends
                if _crossing(pos, len(vs), a, b, c, d):
                    rb.fail("nested", f"ears {kids[x]} and {kids[y]} cross on ear {j}", (kids[x], kids[y]))

    # after removing ears with parent edges, ear-tree components share an lca
    keep = [k for k, ear in enumerate(ears) if not any(e in ep for e in ear.edges())]
    kept = set(keep)
    group: Dict[int, int] = {}
    for k in keep:
        p = ed.parent_ear[k]
        group[k] = group[p] if p in group else k
    lcas: Dict[int, Set[int]] = {}
    for k in keep:
        lcas.setdefault(group[k], set()).add(t.lca(*ears[k].cross_edge))
    for top, ls in lcas.items():
        if len(ls) > 1:
            rb.fail("same-lca", f"ears under ear {top} have lcas {sorted(ls)}", top)
    rb.stats["ears"] = len(ears)
    return rb.build()
