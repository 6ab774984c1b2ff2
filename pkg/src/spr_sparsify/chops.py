"""Delta-chops, fuzzy chops and recursive chop component trees."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .bfs import RootedBfsTree, build_bfs_tree
from .graph import GraphError, Path, WeightedGraph, connected_components, induced_subgraph

Number = Union[int, Fraction]


def as_fraction(x) -> Fraction:
    """Exact value of an int, Fraction, "p/q" string or float."""
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**9)
    return Fraction(x)


@dataclass(frozen=True)
class FuzzyChop:
    """Assignment of every vertex to a fuzzy annulus index.

    ``depth`` holds d(r, v) so the band condition can be checked on its own.
    """

    delta: Fraction
    fuzz: Fraction
    root: int
    annulus: Tuple[int, ...]
    depth: Tuple[int, ...]

    def to_json(self) -> dict:
        return {"delta": _num(self.delta), "fuzz": _num(self.fuzz), "annulus": list(self.annulus)}


def _num(x: Fraction):
    # exact: integers stay integers, anything else becomes "p/q"
    return int(x) if x.denominator == 1 else str(x)


def sharp_annuli(depth: Sequence[int], delta: Number) -> Tuple[int, ...]:
    """Index floor(d / delta) + 1 for each depth; any positive width allowed."""
    delta = as_fraction(delta)
    if delta <= 0:
        raise GraphError("chop width must be positive")
    return tuple(math.floor(Fraction(d) / delta) + 1 for d in depth)


def delta_chop(t: RootedBfsTree, delta: Number) -> FuzzyChop:
    delta = as_fraction(delta)
    if delta < 1:
        raise GraphError("delta must be >= 1")
    return FuzzyChop(delta, Fraction(0), t.root, sharp_annuli(t.depth, delta), t.depth)


@dataclass(frozen=True)
class FuzzyReport:
    ok: bool
    violators: Tuple[Tuple[int, int, int], ...]  # (vertex, annulus, depth)

    def __bool__(self) -> bool:
        return self.ok


def verify_fuzzy(chop: FuzzyChop) -> FuzzyReport:
    """Check (i-1)D - cD/2 <= d(r,v) < iD + cD/2 for each vertex.

    For c > 0 the upper end is checked as ``<=``: the scattering chop moves
    vertices sitting exactly cD past a sharp boundary, and any c' slightly
    above c would accept them, so nothing downstream depends on strictness.
    """
    bad = []
    d_, c = chop.delta, chop.fuzz
    half = c * d_ / 2
    for v, (i, d) in enumerate(zip(chop.annulus, chop.depth)):
        lo = (i - 1) * d_ - half
        hi = i * d_ + half
        upper_ok = d < hi if c == 0 else d <= hi
        if i < 0 or not (lo <= d and upper_ok):
            bad.append((v, i, d))
    return FuzzyReport(not bad, tuple(bad))


def chop_components(g: WeightedGraph, chop: FuzzyChop) -> List[List[int]]:
    """Connected components of each annulus, ordered by smallest vertex."""
    by_annulus: Dict[int, List[int]] = {}
    for v, i in enumerate(chop.annulus):
        by_annulus.setdefault(i, []).append(v)
    parts = []
    for members in by_annulus.values():
        parts.extend(connected_components(g, members))
    parts.sort(key=lambda p: p[0])
    return parts


def count_cut_edges(p: Path, chop: FuzzyChop) -> int:
    a = chop.annulus
    vs = p.vertices
    return sum(1 for x, y in zip(vs, vs[1:]) if a[x] != a[y])


def weak_diameter(g: WeightedGraph, part: Iterable[int]) -> int:
    """Max distance in the full graph ``g`` over pairs of ``part``."""
    vs = sorted(set(part))
    if not vs:
        raise GraphError("part must be nonempty")
    best = 0
    for i, u in enumerate(vs):
        dist = g.spt(u).dist
        for v in vs[i + 1:]:
            d = dist[v]
            if d is None:
                raise GraphError(f"vertices {u} and {v} are disconnected")
            if d > best:
                best = d
    return best


# A chopper maps (connected graph, root, width) to a FuzzyChop of that graph.
Chopper = Callable[[WeightedGraph, int, Fraction], FuzzyChop]


def plain_chopper(g: WeightedGraph, root: int, delta: Fraction) -> FuzzyChop:
    return delta_chop(build_bfs_tree(g, root), delta)


@dataclass(frozen=True)
class ChopNode:
    vertices: Tuple[int, ...]
    lineage: Tuple[int, ...]
    children: Tuple["ChopNode", ...] = ()

    def to_json(self):
        if not self.children:
            return list(self.vertices)
        return [c.to_json() for c in self.children]


@dataclass(frozen=True)
class ChopComponentTree:
    levels: int
    top: Tuple[ChopNode, ...]

    @property
    def leaves(self) -> List[ChopNode]:
        out: List[ChopNode] = []
        stack = list(reversed(self.top))
        while stack:
            node = stack.pop()
            if node.children:
                stack.extend(reversed(node.children))
            else:
                out.append(node)
        return out

    def level_parts(self, level: int) -> List[Tuple[int, ...]]:
        """Parts after ``level`` chops (level 0 = the connected components)."""
        nodes = list(self.top)
        for _ in range(level):
            nodes = [c for n in nodes for c in (n.children or (n,))]
        return [n.vertices for n in nodes]

    def to_json(self):
        return [n.to_json() for n in self.top]


def _chop_part(g: WeightedGraph, part: Tuple[int, ...], lineage, delta, levels, chopper) -> ChopNode:
    if levels == 0:
        return ChopNode(part, lineage)
    sub, old = induced_subgraph(g, part)
    chop = chopper(sub, 0, delta)
    children = []
    for comp in chop_components(sub, chop):
        i = chop.annulus[comp[0]]
        mapped = tuple(old[x] for x in comp)
        children.append(_chop_part(g, mapped, lineage + (i,), delta, levels - 1, chopper))
    return ChopNode(part, lineage, tuple(children))


def recursive_chops(g: WeightedGraph, delta: Number, levels: int, chopper: Chopper = plain_chopper) -> ChopComponentTree:
    """Chop each connected component (root = lowest id), then recurse on
    every resulting component ``levels - 1`` more times."""
    if levels < 1:
        raise GraphError("levels must be >= 1")
    delta = as_fraction(delta)
    top = tuple(
        _chop_part(g, tuple(comp), (), delta, levels, chopper) for comp in connected_components(g)
    )
    return ChopComponentTree(levels, top)
