"""Rooted BFS trees with ancestor and lca queries."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .graph import GraphError, WeightedGraph, edge_key


@dataclass(frozen=True)
class RootedBfsTree:
    """Canonical shortest-path tree of ``graph`` rooted at ``root``.

    ``depth[v]`` is the weighted distance from the root.  Tree paths from the
    root are exactly the canonical shortest paths (see ``graph.py``).
    """

    graph: WeightedGraph
    root: int
    parent: Tuple[Optional[int], ...]
    depth: Tuple[int, ...]
    tree_edges: FrozenSet[Tuple[int, int]]
    cross_edges: Tuple[Tuple[int, int], ...]

    @cached_property
    def children(self) -> Tuple[Tuple[int, ...], ...]:
        ch: List[List[int]] = [[] for _ in range(self.graph.n)]
        for v, p in enumerate(self.parent):
            if p is not None:
                ch[p].append(v)
        return tuple(tuple(c) for c in ch)

    @cached_property
    def _euler(self):
        # Iterative DFS giving entry/exit times plus an Euler tour for RMQ.
        n = self.graph.n
        tin = [0] * n
        tout = [0] * n
        first = [0] * n
        tour: List[int] = []
        clock = 0
        stack = [(self.root, 0)]
        while stack:
            v, i = stack.pop()
            if i == 0:
                tin[v] = clock
                clock += 1
                first[v] = len(tour)
            tour.append(v)
            kids = self.children[v]
            if i < len(kids):
                stack.append((v, i + 1))
                stack.append((kids[i], 0))
            else:
                tout[v] = clock
        # sparse table over tour by depth
        depth = self.depth
        table = [tour]
        span = 1
        while 2 * span <= len(tour):
            prev = table[-1]
            row = []
            for i in range(len(tour) - 2 * span + 1):
                a, b = prev[i], prev[i + span]
                row.append(a if (depth[a], a) <= (depth[b], b) else b)
            table.append(row)
            span *= 2
        return tin, tout, first, table

    def is_ancestor(self, a: int, b: int) -> bool:
        """True when ``a`` is an ancestor of ``b`` or equal to it."""
        tin, tout, _, _ = self._euler
        return tin[a] <= tin[b] and tout[b] <= tout[a]

    def is_proper_ancestor(self, a: int, b: int) -> bool:
        return a != b and self.is_ancestor(a, b)

    def related(self, a: int, b: int) -> bool:
        return self.is_ancestor(a, b) or self.is_ancestor(b, a)

    def lca(self, u: int, v: int) -> int:
        _, _, first, table = self._euler
        i, j = first[u], first[v]
        if i > j:
            i, j = j, i
        k = (j - i + 1).bit_length() - 1
        a, b = table[k][i], table[k][j - (1 << k) + 1]
        depth = self.depth
        return a if (depth[a], a) <= (depth[b], b) else b

    def lca_many(self, vertices: Iterable[int]) -> int:
        it = iter(vertices)
        x = next(it)
        for v in it:
            x = self.lca(x, v)
        return x

    def path_up(self, v: int, ancestor: int) -> List[int]:
        """Vertices from ``v`` up to ``ancestor`` inclusive."""
        out = [v]
        while out[-1] != ancestor:
            p = self.parent[out[-1]]
            if p is None:
                raise GraphError(f"{ancestor} is not an ancestor of {v}")
            out.append(p)
        return out

    def tree_path(self, u: int, v: int) -> List[int]:
        x = self.lca(u, v)
        down = self.path_up(v, x)
        return self.path_up(u, x) + down[-2::-1]

    def child_toward(self, ancestor: int, v: int) -> int:
        """The child of ``ancestor`` on the tree path to its descendant ``v``."""
        path = self.path_up(v, ancestor)
        if len(path) < 2:
            raise GraphError(f"{v} is not a proper descendant of {ancestor}")
        return path[-2]

    def subtree(self, v: int) -> FrozenSet[int]:
        out = []
        stack = [v]
        while stack:
            x = stack.pop()
            out.append(x)
            stack.extend(self.children[x])
        return frozenset(out)

    def high(self, vertices: Iterable[int]) -> int:
        """Highest vertex of a tree-connected vertex set."""
        return min(vertices, key=lambda x: (self.depth[x], x))

    def is_tree_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self.tree_edges

    @cached_property
    def cross_edge_set(self) -> FrozenSet[Tuple[int, int]]:
        return frozenset(self.cross_edges)

    @cached_property
    def max_depth(self) -> int:
        return max(self.depth)

    def height(self, v: int) -> int:
        """Height with the deepest vertices of the tree at height 0."""
        return self.max_depth - self.depth[v]


def build_bfs_tree(g: WeightedGraph, r: int) -> RootedBfsTree:
    """Shortest-path tree from ``r`` whose root paths are canonical shortest paths."""
    if not 0 <= r < g.n:
        raise GraphError(f"root {r} out of range")
    spt = g.spt(r)
    for v, d in enumerate(spt.dist):
        if d is None:
            raise GraphError(f"graph is disconnected: vertex {v} is unreachable from root {r}")
    tree = frozenset(edge_key(v, p) for v, p in enumerate(spt.pred) if p is not None)
    cross = tuple((u, v) for u, v, _ in g.edges if (u, v) not in tree)
    return RootedBfsTree(g, r, spt.pred, tuple(spt.dist), tree, cross)


def lca(t: RootedBfsTree, u: int, v: int) -> int:
    return t.lca(u, v)
