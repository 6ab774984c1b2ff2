"""Minors on terminal sets built by Voronoi contraction, with checks and distortion."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .graph import GraphError, WeightedGraph, connected_components, distance, edge_key, is_connected
from .report import Report, ReportBuilder


@dataclass(frozen=True)
class SprInstance:
    graph: WeightedGraph
    terminals: Tuple[int, ...]

    def __post_init__(self):
        ts = tuple(int(x) for x in self.terminals)
        if not ts:
            raise GraphError("terminal set must be nonempty")
        if len(set(ts)) != len(ts):
            raise GraphError("terminals must be distinct")
        if any(not 0 <= x < self.graph.n for x in ts):
            raise GraphError("terminal outside the vertex range")
        if not is_connected(self.graph):
            raise GraphError("SPR instances need a connected graph")
        object.__setattr__(self, "terminals", tuple(sorted(ts)))


@dataclass(frozen=True)
class SprMinor:
    """``minor_graph`` vertex ``i`` stands for ``terminals[i]``; ``witness[v]``
    is the terminal whose supernode holds ``v`` (None if deleted)."""

    minor_graph: WeightedGraph
    terminals: Tuple[int, ...]
    witness: Tuple[Optional[int], ...]

    def index_of(self, terminal: int) -> int:
        return self.terminals.index(terminal)


def voronoi_cells(g: WeightedGraph, terminals: Sequence[int]) -> Tuple[Optional[int], ...]:
    """Nearest terminal of every vertex, ties to the smaller terminal id.

    Settling in (distance, terminal) order makes every cell a union of
    shortest paths to its terminal, hence connected.
    """
    owner: List[Optional[int]] = [None] * g.n
    heap = [(0, t, t) for t in sorted(terminals)]
    heapq.heapify(heap)
    while heap:
        d, t, v = heapq.heappop(heap)
        if owner[v] is not None:
            continue
        owner[v] = t
        for x, w in g.neighbors(v):
            if owner[x] is None:
                heapq.heappush(heap, (d + w, t, x))
    return tuple(owner)


def voronoi_spr_minor(inst: SprInstance) -> SprMinor:
    g = inst.graph
    ts = inst.terminals
    owner = voronoi_cells(g, ts)
    idx = {t: i for i, t in enumerate(ts)}
    pairs = set()
    for u, v, _ in g.edges:
        a, b = owner[u], owner[v]
        if a is not None and b is not None and a != b:
            pairs.add(edge_key(idx[a], idx[b]))
    edges = [(i, j, distance(g, ts[i], ts[j])) for i, j in sorted(pairs)]
    return SprMinor(WeightedGraph(len(ts), tuple(edges)), ts, owner)


def contract_witness(g: WeightedGraph, m: SprMinor) -> frozenset:
    """Edge set (in terminal-index space) obtained by contracting supernodes
    and dropping unassigned vertices."""
    idx = {t: i for i, t in enumerate(m.terminals)}
    out = set()
    for u, v, _ in g.edges:
        a, b = m.witness[u], m.witness[v]
        if a is not None and b is not None and a != b and a in idx and b in idx:
            out.add(edge_key(idx[a], idx[b]))
    return frozenset(out)


def _all_distances(g: WeightedGraph, sources: Sequence[int]) -> Dict[int, List[Optional[int]]]:
    out = {}
    for s in sources:
        dist: List[Optional[int]] = [None] * g.n
        heap = [(0, s)]
        while heap:
            d, v = heapq.heappop(heap)
            if dist[v] is not None:
                continue
            dist[v] = d
            for x, w in g.neighbors(v):
                if dist[x] is None:
                    heapq.heappush(heap, (d + w, x))
        out[s] = dist
    return out


def verify_minor(g: WeightedGraph, m: SprMinor) -> Report:
    rb = ReportBuilder("supernodes", "disjoint", "edges", "witness", "distances")
    k = len(m.terminals)
    if m.minor_graph.n != k:
        rb.fail("witness", f"minor has {m.minor_graph.n} vertices for {k} terminals")
    if len(m.witness) != g.n:
        rb.fail("witness", f"witness has {len(m.witness)} entries for {g.n} vertices")
        return rb.build()
    # each vertex maps to at most one terminal, so supernodes are disjoint by
    # construction; what can still go wrong is a vertex naming a non-terminal
    # or a terminal sitting in someone else's supernode
    tset = set(m.terminals)
    for v, t in enumerate(m.witness):
        if t is not None and t not in tset:
            rb.fail("disjoint", f"vertex {v} assigned to non-terminal {t}", v)
    for t in m.terminals:
        if m.witness[t] != t:
            rb.fail("supernodes", f"terminal {t} is not in its own supernode", t)
        cell = [v for v, o in enumerate(m.witness) if o == t]
        if cell and len(connected_components(g, cell)) != 1:
            rb.fail("supernodes", f"supernode of terminal {t} is disconnected", t)
    support = contract_witness(g, m)
    for i, j, _ in m.minor_graph.edges:
        if (i, j) not in support:
            rb.fail("edges", f"minor edge ({m.terminals[i]}, {m.terminals[j]}) has no supporting edge",
                    (m.terminals[i], m.terminals[j]))
    extra = support - {(i, j) for i, j, _ in m.minor_graph.edges}
    if extra:
        rb.fail("witness", f"contraction yields {len(extra)} edges missing from the minor", sorted(extra))
    dg = _all_distances(g, m.terminals)
    dm = _all_distances(m.minor_graph, range(k))
    for i in range(k):
        for j in range(i + 1, k):
            a, b = m.terminals[i], m.terminals[j]
            if dm[i][j] is None:
                rb.fail("distances", f"terminals {a} and {b} are disconnected in the minor", (a, b))
            elif dm[i][j] < dg[a][b]:
                rb.fail("distances", f"minor shortens {a}-{b}: {dm[i][j]} < {dg[a][b]}", (a, b))
    return rb.build()


def distortion(g: WeightedGraph, m: SprMinor) -> Tuple[Fraction, Optional[Tuple[int, int]]]:
    """Largest ratio of minor to graph distance over terminal pairs."""
    k = len(m.terminals)
    dg = _all_distances(g, m.terminals)
    dm = _all_distances(m.minor_graph, range(k))
    best, arg = Fraction(1), None
    for i in range(k):
        for j in range(i + 1, k):
            a, b = m.terminals[i], m.terminals[j]
            r = Fraction(dm[i][j], dg[a][b])
            if arg is None or r > best:
                best, arg = r, (a, b)
    return best, arg
