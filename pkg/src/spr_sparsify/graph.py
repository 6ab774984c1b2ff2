"""Weighted graphs, canonical shortest paths and unit-weight expansion.

Shortest paths are made unique by an exact perturbation: edge ``e`` with
index ``k`` (position in the sorted edge list) gets the integer weight
``(w(e) << m) | (1 << k)``.  Path keys are then ``length * 2**m + mask``
where ``mask`` is the bitmask of the edges used, so two distinct simple
paths never tie and the order is additive, which makes every subpath of a
canonical path canonical for its own endpoints.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

Edge = Tuple[int, int, int]

WEIGHT_CAP = 10_000
TOTAL_WEIGHT_CAP = 1_000_000


class GraphError(ValueError):
    """Raised for malformed graphs or violated preconditions."""


def edge_key(u: int, v: int) -> Tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class WeightedGraph:
    """Simple undirected graph on vertices ``0..n-1`` with integer weights >= 1."""

    n: int
    edges: Tuple[Edge, ...]

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("vertex count must be non-negative")
        norm = []
        for e in self.edges:
            if len(e) != 3:
                raise GraphError(f"edge {e!r} must be (u, v, w)")
            u, v, w = (int(x) for x in e)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge {e!r} has an endpoint outside 0..{self.n - 1}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if w < 1:
                raise GraphError(f"edge {e!r} has weight < 1")
            a, b = edge_key(u, v)
            norm.append((a, b, w))
        norm.sort()
        for x, y in zip(norm, norm[1:]):
            if x[:2] == y[:2]:
                raise GraphError(f"parallel edges between {x[0]} and {x[1]}")
        object.__setattr__(self, "edges", tuple(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "WeightedGraph":
        """Build from (u, v) or (u, v, w) tuples; missing weights default to 1."""
        full = []
        for e in edges:
            if len(e) == 2:
                full.append((e[0], e[1], 1))
            else:
                full.append(tuple(e))
        return cls(n, tuple(full))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_index(self) -> Dict[Tuple[int, int], int]:
        return {(u, v): i for i, (u, v, _) in enumerate(self.edges)}

    @cached_property
    def _adj(self) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
        adj: List[List[Tuple[int, int]]] = [[] for _ in range(self.n)]
        for u, v, w in self.edges:
            adj[u].append((v, w))
            adj[v].append((u, w))
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def _weights(self) -> Dict[Tuple[int, int], int]:
        return {(u, v): w for u, v, w in self.edges}

    def neighbors(self, v: int) -> Tuple[Tuple[int, int], ...]:
        """Sorted ``(neighbor, weight)`` pairs of ``v``."""
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self._weights

    def weight(self, u: int, v: int) -> int:
        try:
            return self._weights[edge_key(u, v)]
        except KeyError:
            raise GraphError(f"no edge between {u} and {v}") from None

    @property
    def unit_weight(self) -> bool:
        return all(w == 1 for _, _, w in self.edges)

    def edge_pairs(self) -> List[Tuple[int, int]]:
        return [(u, v) for u, v, _ in self.edges]

    @cached_property
    def _perturbed(self) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
        shift = self.m
        idx = self.edge_index
        out = []
        for v in range(self.n):
            out.append(tuple((x, (w << shift) | (1 << idx[edge_key(v, x)])) for x, w in self._adj[v]))
        return tuple(out)

    @cached_property
    def _trees(self) -> Dict[int, "ShortestPathTree"]:
        return {}

    def spt(self, source: int) -> "ShortestPathTree":
        """Canonical shortest-path tree from ``source`` (memoised)."""
        cache = self._trees
        tree = cache.get(source)
        if tree is None:
            tree = _canonical_spt(self, source)
            cache[source] = tree
        return tree


@dataclass(frozen=True)
class Path:
    vertices: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def edges(self) -> List[Tuple[int, int]]:
        vs = self.vertices
        return [edge_key(a, b) for a, b in zip(vs, vs[1:])]

    def length(self, g: WeightedGraph) -> int:
        vs = self.vertices
        return sum(g.weight(a, b) for a, b in zip(vs, vs[1:]))

    def internal(self) -> Tuple[int, ...]:
        return self.vertices[1:-1]

    def reversed(self) -> "Path":
        return Path(self.vertices[::-1])

    def is_valid(self, g: WeightedGraph) -> bool:
        vs = self.vertices
        if not vs or len(set(vs)) != len(vs):
            return False
        return all(g.has_edge(a, b) for a, b in zip(vs, vs[1:]))


@dataclass(frozen=True)
class ShortestPathTree:
    source: int
    dist: Tuple[Optional[int], ...]
    pred: Tuple[Optional[int], ...]

    def path_to(self, target: int) -> Path:
        if self.dist[target] is None:
            raise GraphError(f"vertex {target} is unreachable from {self.source}")
        out = [target]
        while out[-1] != self.source:
            out.append(self.pred[out[-1]])
        out.reverse()
        return Path(tuple(out))


def _canonical_spt(g: WeightedGraph, s: int) -> ShortestPathTree:
    if not 0 <= s < g.n:
        raise GraphError(f"vertex {s} out of range")
    adj = g._perturbed
    key: List[Optional[int]] = [None] * g.n
    pred: List[Optional[int]] = [None] * g.n
    done = [False] * g.n
    key[s] = 0
    heap = [(0, s)]
    while heap:
        k, v = heapq.heappop(heap)
        if done[v]:
            continue
        done[v] = True
        for x, pw in adj[v]:
            nk = k + pw
            if key[x] is None or nk < key[x]:
                key[x] = nk
                pred[x] = v
                heapq.heappush(heap, (nk, x))
    shift = g.m
    dist = tuple(None if k is None else k >> shift for k in key)
    return ShortestPathTree(s, dist, tuple(pred))


def shortest_path(g: WeightedGraph, u: int, v: int) -> Path:
    """Canonical shortest path from ``u`` to ``v``.

    The path for ``(v, u)`` is the reverse of the path for ``(u, v)``.
    """
    if u <= v:
        return g.spt(u).path_to(v)
    return g.spt(v).path_to(u).reversed()


def distance(g: WeightedGraph, u: int, v: int) -> int:
    d = g.spt(min(u, v)).dist[max(u, v)]
    if d is None:
        raise GraphError(f"vertices {u} and {v} are disconnected")
    return d


def all_pairs_paths(g: WeightedGraph, max_length: Optional[float] = None):
    """Yield canonical paths for all unordered pairs ``u < v`` (and ``u == v``
    singletons are skipped), optionally only those of length <= max_length."""
    for u in range(g.n):
        tree = g.spt(u)
        for v in range(u + 1, g.n):
            d = tree.dist[v]
            if d is None or (max_length is not None and d > max_length):
                continue
            yield tree.path_to(v)


def connected_components(g: WeightedGraph, vertices: Optional[Iterable[int]] = None) -> List[List[int]]:
    """Components of ``g[vertices]`` as sorted lists, ordered by smallest member."""
    allowed = set(range(g.n)) if vertices is None else set(vertices)
    seen = set()
    comps = []
    for s in sorted(allowed):
        if s in seen:
            continue
        seen.add(s)
        stack = [s]
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for x, _ in g.neighbors(v):
                if x in allowed and x not in seen:
                    seen.add(x)
                    stack.append(x)
        comps.append(sorted(comp))
    return comps


def is_connected(g: WeightedGraph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def induced_subgraph(g: WeightedGraph, vertices: Iterable[int]) -> Tuple[WeightedGraph, Tuple[int, ...]]:
    """Induced subgraph relabelled monotonically; returns ``(sub, old_ids)``.

    Monotone relabelling keeps the relative edge order, so canonical paths of
    ``g`` that stay inside the vertex set are canonical in the subgraph too.
    """
    old = tuple(sorted(set(vertices)))
    new = {v: i for i, v in enumerate(old)}
    edges = tuple(
        (new[u], new[v], w) for u, v, w in g.edges if u in new and v in new
    )
    return WeightedGraph(len(old), edges), old


def expand_unit_weights(g: WeightedGraph) -> Tuple[WeightedGraph, Tuple[int, ...]]:
    """Replace each edge of weight ``w`` by a path of ``w`` unit edges.

    Original vertices keep their ids; new vertices are appended.  Returns the
    expanded graph and the map ``old id -> new id`` (the identity here).
    """
    total = 0
    for u, v, w in g.edges:
        if w > WEIGHT_CAP:
            raise GraphError(f"edge ({u}, {v}) weight {w} exceeds cap {WEIGHT_CAP}")
        total += w
    if total > TOTAL_WEIGHT_CAP:
        raise GraphError(f"total weight {total} exceeds cap {TOTAL_WEIGHT_CAP}")
    n = g.n
    edges = []
    for u, v, w in g.edges:
        prev = u
        for _ in range(w - 1):
            edges.append((prev, n, 1))
            prev = n
            n += 1
        edges.append((prev, v, 1))
    return WeightedGraph(n, tuple(edges)), tuple(range(g.n))
