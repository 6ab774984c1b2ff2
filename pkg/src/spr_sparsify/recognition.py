"""Series-parallel (K4-minor-free) recognition with clawed-cycle witnesses."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Set, Tuple, Union

from .graph import Path, WeightedGraph, edge_key


@dataclass(frozen=True)
class SeriesParallel:
    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class ClawedCycle:
    """A cycle plus three paths from ``claw_root`` to distinct cycle vertices.

    ``cycle`` lists the cycle vertices in order (first vertex not repeated).
    The claw paths are internally disjoint from the cycle and from each other.
    """

    cycle: Path
    claw_root: int
    claw_paths: Tuple[Path, Path, Path]

    def __bool__(self) -> bool:
        return False

    def summary(self) -> str:
        legs = "; ".join("-".join(map(str, p.vertices)) for p in self.claw_paths)
        cyc = "-".join(map(str, self.cycle.vertices))
        return f"clawed cycle: cycle {cyc}; root {self.claw_root}; paths {legs}"


SpWitness = Union[SeriesParallel, ClawedCycle]


def _reduces_to_empty(n: int, edges: Iterable[Tuple[int, int]]) -> bool:
    """Series/parallel reduction: drop degree <= 1, smooth degree 2 (merging
    any parallel edge that appears).  Empty at the end iff no K4 minor."""
    adj: Dict[int, Set[int]] = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    queue = [v for v in adj if len(adj[v]) <= 2]
    while queue:
        v = queue.pop()
        nbrs = adj.get(v)
        if nbrs is None or len(nbrs) > 2:
            continue
        del adj[v]
        for x in nbrs:
            adj[x].discard(v)
        if len(nbrs) == 2:
            a, b = nbrs
            adj[a].add(b)
            adj[b].add(a)
        for x in nbrs:
            if len(adj[x]) <= 2:
                queue.append(x)
    return not adj


def has_k4_minor(g: WeightedGraph) -> bool:
    return not _reduces_to_empty(g.n, g.edge_pairs())


def _minimal_k4_subgraph(g: WeightedGraph) -> List[Tuple[int, int]]:
    # Greedily drop edges while a K4 minor survives.  What is left is a
    # minimal subgraph with a K4 minor, which (K4 being cubic) is a
    # subdivision of K4.
    keep = g.edge_pairs()
    i = 0
    while i < len(keep):
        trial = keep[:i] + keep[i + 1:]
        if not _reduces_to_empty(g.n, trial):
            keep = trial
        else:
            i += 1
    return keep


def _witness_from_subdivision(edges: List[Tuple[int, int]]) -> ClawedCycle:
    adj: Dict[int, List[int]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    branch = sorted(v for v, a in adj.items() if len(a) == 3)
    assert len(branch) == 4, "minimal K4-minor subgraph is not a K4 subdivision"

    def trace(start: int, first: int) -> List[int]:
        path = [start, first]
        while path[-1] not in branch:
            a, b = adj[path[-1]]
            path.append(a if a != path[-2] else b)
        return path

    root = branch[0]
    legs = {}
    for x in sorted(adj[root]):
        p = trace(root, x)
        legs[p[-1]] = p
    others = sorted(legs)
    a, b, c = others
    # Walk the cycle a -> b -> c -> a along the branch paths avoiding root.
    between: Dict[Tuple[int, int], List[int]] = {}
    for s in others:
        for x in adj[s]:
            p = trace(s, x)
            if p[-1] != root:
                between[(s, p[-1])] = p
    cycle = between[(a, b)][:-1] + between[(b, c)][:-1] + between[(c, a)][:-1]
    return ClawedCycle(Path(tuple(cycle)), root, tuple(Path(tuple(legs[x])) for x in others))


def is_series_parallel(g: WeightedGraph) -> SpWitness:
    """``SeriesParallel()`` iff ``g`` has no K4 minor, else a clawed cycle."""
    if _reduces_to_empty(g.n, g.edge_pairs()):
        return SeriesParallel()
    return _witness_from_subdivision(_minimal_k4_subgraph(g))


def check_clawed_cycle(g: WeightedGraph, w: ClawedCycle) -> Optional[str]:
    """Independent validity check of a witness; returns an error or None."""
    cyc = list(w.cycle.vertices)
    if len(cyc) < 3 or len(set(cyc)) != len(cyc):
        return "cycle must have >= 3 distinct vertices"
    for a, b in zip(cyc, cyc[1:] + cyc[:1]):
        if not g.has_edge(a, b):
            return f"cycle edge ({a}, {b}) missing"
    on_cycle = set(cyc)
    if len(w.claw_paths) != 3:
        return "need exactly three claw paths"
    ends = set()
    used: Set[int] = set()
    for p in w.claw_paths:
        vs = p.vertices
        if vs[0] != w.claw_root:
            return "claw path does not start at the claw root"
        if not p.is_valid(g):
            return f"claw path {vs} is not a simple path in the graph"
        if vs[-1] not in on_cycle:
            return f"claw path {vs} does not end on the cycle"
        inner = set(vs[1:-1])
        if inner & on_cycle:
            return f"claw path {vs} touches the cycle internally"
        if inner & used:
            return "claw paths are not internally disjoint"
        used |= inner
        ends.add(vs[-1])
    if w.claw_root in on_cycle:
        return "claw root lies on the cycle"
    if len(ends) != 3:
        return "claw paths must end at three distinct cycle vertices"
    return None
