"""Scattering chops built on hammock decompositions, and scattering partitions.

A scattering chop starts from the sharp annuli ``A_i`` of width ``delta``
and then, independently inside T_0 and each hammock, shifts vertices near an
annulus boundary by one annulus (``c = 1/3``):

* rule ``a-i``: the region's root ``x`` sits in ``A_i`` within ``c*delta`` of
  the lower boundary; region vertices in that same band move down to
  ``A_{i+1}``.
* rule ``a-ii``: ``x`` is above that band; region vertices within
  ``c*delta`` of the upper boundary of ``A_i`` move up to ``A_{i-1}``.

T_0 uses the tree root as its region root; its moves are logged as
``base-tree``.  A vertex shared between a hammock and its parent (or T_0)
is the child hammock's attachment root, and it follows the child's rule.
All children sharing that root agree, since the rule only looks at depths.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .bfs import RootedBfsTree, build_bfs_tree
from .chops import (
    ChopComponentTree,
    FuzzyChop,
    as_fraction,
    count_cut_edges,
    recursive_chops,
    sharp_annuli,
    weak_diameter,
)
from .graph import GraphError, Path, WeightedGraph, connected_components, edge_key
from .hammocks import HammockDecomposition, build_hammock_decomposition, induced_edges
from .report import Report, ReportBuilder, StructuredFailure

C = Fraction(1, 3)
FUZZ = 2 * C
H_MINOR = 4  # K4-minor-free
C_PRIME = Fraction(1, 22 * H_MINOR)
LEVELS = H_MINOR - 1

# Cut budgets, each counted from the case analysis of the corresponding bound:
# a monotone path of length <= c*delta spans at most one sharp boundary and
# its two shifted copies, plus one change of region (T_0 or hammock) -> 4.
K_MONO = 4
# a shortest cross-edge path shorter than c*delta: two monotone wings (4 each).
K_CROSS = 8
# a path of length <= delta: three pieces, each prefix + cross path + suffix.
TAU_MAX = 36
MAX_CROSS_IN_HAMMOCK = 2
TAU_PARTITION = TAU_MAX ** LEVELS * 22 * H_MINOR


@dataclass(frozen=True)
class Move:
    vertex: int
    src: int
    dst: int
    rule: str  # "a-i", "a-ii" or "base-tree"
    region: Optional[int]  # hammock class id, None for T_0

    def to_json(self) -> list:
        return [self.vertex, self.src, self.dst, self.rule]


@dataclass(frozen=True)
class ScatteringChop:
    chop: FuzzyChop
    moves: Tuple[Move, ...]
    region: Tuple[Optional[int], ...]
    cross_edges: FrozenSet[Tuple[int, int]]
    tau_observed: Optional[int] = None

    def to_json(self) -> dict:
        out = self.chop.to_json()
        out["moves"] = [m.to_json() for m in self.moves]
        out["tauObserved"] = self.tau_observed
        return out


def _regions(g: WeightedGraph, hd: HammockDecomposition) -> List[Optional[int]]:
    region: List[Optional[int]] = [None] * g.n
    rooted: Dict[int, int] = {}
    for h in hd.hammocks:
        rooted.setdefault(h.root_a, h.class_id)
        for v in h.vertices:
            if region[v] is None:
                region[v] = h.class_id
    for v, i in rooted.items():
        region[v] = i
    return region


def scattering_chop(g: WeightedGraph, hd: HammockDecomposition, delta, t: Optional[RootedBfsTree] = None) -> ScatteringChop:
    delta = as_fraction(delta)
    if delta <= 0:
        raise GraphError("delta must be positive")
    if t is None:
        t = build_bfs_tree(g, hd.root)
    if len(hd.base_tree) == 0 or hd.root != t.root:
        raise GraphError("decomposition does not match the tree")
    depth = t.depth
    sharp = sharp_annuli(depth, delta)
    region = _regions(g, hd)
    roots = {h.class_id: h.root_a for h in hd.hammocks}
    band = C * delta
    final = list(sharp)
    moves = []
    for v in range(g.n):
        i = sharp[v]
        reg = region[v]
        x = t.root if reg is None else roots[reg]
        dx, dv = depth[x], depth[v]
        if sharp[x] == i and dx >= i * delta - band:
            if dv >= i * delta - band:
                final[v] = i + 1
                moves.append(Move(v, i, i + 1, "a-i" if reg is not None else "base-tree", reg))
        elif dx < i * delta - band:
            if dv <= (i - 1) * delta + band:
                final[v] = i - 1
                moves.append(Move(v, i, i - 1, "a-ii" if reg is not None else "base-tree", reg))
    chop = FuzzyChop(delta, FUZZ, t.root, tuple(final), depth)
    return ScatteringChop(chop, tuple(moves), tuple(region), t.cross_edge_set)


@dataclass(frozen=True)
class CutCount:
    value: int
    path: Optional[Path]
    prefix: Optional[Path] = None
    cross_part: Optional[Path] = None
    suffix: Optional[Path] = None


def split_at_cross_edges(p: Path, cross: FrozenSet[Tuple[int, int]]) -> Tuple[Path, Optional[Path], Path]:
    """Prefix up to the first cross edge, the cross-edge path, and the suffix."""
    es = p.edges()
    idx = [k for k, e in enumerate(es) if e in cross]
    vs = p.vertices
    if not idx:
        return p, None, Path(vs[-1:])
    a, b = idx[0], idx[-1] + 1
    return Path(vs[: a + 1]), Path(vs[a: b + 1]), Path(vs[b:])


def max_cut_count(g: WeightedGraph, chop: ScatteringChop, delta) -> CutCount:
    """Max number of cut edges over canonical shortest paths of length <= delta."""
    delta = as_fraction(delta)
    best = CutCount(0, None)
    for u in range(g.n):
        spt = g.spt(u)
        for v in range(u + 1, g.n):
            d = spt.dist[v]
            if d is None or d > delta:
                continue
            p = spt.path_to(v)
            k = count_cut_edges(p, chop.chop)
            if k > best.value:
                pre, mid, suf = split_at_cross_edges(p, chop.cross_edges)
                best = CutCount(k, p, pre, mid, suf)
    return best


def cut_budget_report(g: WeightedGraph, hd: HammockDecomposition, chop: ScatteringChop, delta) -> Report:
    """Exhaustive check of the per-segment cut budgets of a scattering chop.

    ``stats`` carries the observed maximum of each quantity so the budgets
    can be compared against evidence.
    """
    delta = as_fraction(delta)
    rb = ReportBuilder("hammock-cross-edges", "monotone-cuts", "cross-path-cuts", "full-path-cuts")
    t = build_bfs_tree(g, hd.root)
    cross = chop.cross_edges
    annulus = chop.chop
    edge_home: Dict[Tuple[int, int], int] = {}
    for h in hd.hammocks:
        for e in induced_edges(g, h.vertices):
            edge_home[e] = h.class_id
    third = delta * C
    worst = {"hammock_cross_edges": 0, "monotone_cuts": 0, "cross_path_cuts": 0, "full_path_cuts": 0}
    for v in range(g.n):
        path = [v]
        while t.parent[path[-1]] is not None and t.depth[v] - t.depth[t.parent[path[-1]]] <= third:
            path.append(t.parent[path[-1]])
            k = count_cut_edges(Path(tuple(path)), annulus)
            if k > worst["monotone_cuts"]:
                worst["monotone_cuts"] = k
            if k > K_MONO:
                rb.fail("monotone-cuts", f"monotone path cut {k} times", list(path))
    for u in range(g.n):
        spt = g.spt(u)
        for v in range(u + 1, g.n):
            d = spt.dist[v]
            if d is None:
                continue
            p = spt.path_to(v)
            es = p.edges()
            run_home, run_cross = None, 0
            for e in es:
                home = edge_home.get(e)
                if home != run_home:
                    run_home, run_cross = home, 0
                if home is not None and e in cross:
                    run_cross += 1
                    if run_cross > worst["hammock_cross_edges"]:
                        worst["hammock_cross_edges"] = run_cross
                    if run_cross > MAX_CROSS_IN_HAMMOCK:
                        rb.fail("hammock-cross-edges", f"path inside hammock {home} uses {run_cross} cross edges", p)
            if d > delta:
                continue
            k = count_cut_edges(p, annulus)
            if k > worst["full_path_cuts"]:
                worst["full_path_cuts"] = k
            if k > TAU_MAX:
                rb.fail("full-path-cuts", f"path cut {k} times", p)
            if d < third and es and es[0] in cross and es[-1] in cross:
                if k > worst["cross_path_cuts"]:
                    worst["cross_path_cuts"] = k
                if k > K_CROSS:
                    rb.fail("cross-path-cuts", f"cross-edge path cut {k} times", p)
    rb.stats.update(worst)
    return rb.build()


# ---------------------------------------------------------------- partitions


def scattering_chopper(g: WeightedGraph, root: int, width: Fraction) -> FuzzyChop:
    hd = build_hammock_decomposition(g, root)
    return scattering_chop(g, hd, width).chop


@dataclass(frozen=True)
class ScatteringPartition:
    parts: Tuple[Tuple[int, ...], ...]
    tau: int
    delta: Fraction
    diameters: Tuple[int, ...]
    tau_observed: int = 0
    chops: Optional[ChopComponentTree] = None

    def part_of(self) -> Dict[int, int]:
        return {v: k for k, part in enumerate(self.parts) for v in part}


CONNECTED = "connected"
DIAMETER = "low-weak-diameter"
SCATTERING = "scattering"
COVER = "covers-vertices"


def verify_scattering(g: WeightedGraph, p: ScatteringPartition) -> Report:
    rb = ReportBuilder(COVER, CONNECTED, DIAMETER, SCATTERING)
    owner: Dict[int, int] = {}
    for k, part in enumerate(p.parts):
        for v in part:
            if v in owner:
                rb.fail(COVER, f"vertex {v} lies in parts {owner[v]} and {k}", v)
            owner[v] = k
    missing = [v for v in range(g.n) if v not in owner]
    if missing:
        rb.fail(COVER, f"{len(missing)} vertices in no part", missing[:10])
    max_diam = 0
    for k, part in enumerate(p.parts):
        if not part:
            rb.fail(COVER, f"part {k} is empty", k)
            continue
        if len(connected_components(g, part)) != 1:
            rb.fail(CONNECTED, f"part {k} is not connected", list(part))
        diam = weak_diameter(g, part)
        max_diam = max(max_diam, diam)
        if diam > p.delta:
            rb.fail(DIAMETER, f"part {k} has weak diameter {diam} > {p.delta}", list(part))
    touched_max, argmax = 0, None
    for u in range(g.n):
        spt = g.spt(u)
        for v in range(u, g.n):
            d = spt.dist[v]
            if d is None or d > p.delta:
                continue
            path = spt.path_to(v)
            touched = len({owner.get(x, -1 - x) for x in path.vertices})
            if touched > touched_max:
                touched_max, argmax = touched, path
            if touched > p.tau:
                rb.fail(SCATTERING, f"path {u}->{v} meets {touched} parts > {p.tau}", path)
    rb.stats.update({"max_parts_touched": touched_max, "argmax": argmax, "max_weak_diameter": max_diam})
    return rb.build()


def scattering_partition(g: WeightedGraph, delta) -> ScatteringPartition:
    """Three levels of scattering chops of width ``delta / 88``."""
    delta = as_fraction(delta)
    if delta <= 0:
        raise GraphError("delta must be positive")
    if not g.unit_weight:
        raise GraphError("scattering partitions need unit weights (expand first)")
    tree = recursive_chops(g, C_PRIME * delta, LEVELS, scattering_chopper)
    parts = tuple(sorted(leaf.vertices for leaf in tree.leaves))
    diam = tuple(weak_diameter(g, part) for part in parts)
    part = ScatteringPartition(parts, TAU_PARTITION, delta, diam, 0, tree)
    rep = verify_scattering(g, part)
    if not rep.ok:
        v = rep.violations[0]
        raise StructuredFailure(v.check, v.message, stage="partition", witness=v.witness)
    return ScatteringPartition(parts, TAU_PARTITION, delta, diam, rep.stats["max_parts_touched"], tree)
