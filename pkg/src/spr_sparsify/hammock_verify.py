"""Independent checks of a hammock decomposition against its definition."""

from __future__ import annotations

from collections import deque
from typing import Dict, List, Optional, Set, Tuple

from .bfs import RootedBfsTree
from .graph import WeightedGraph, edge_key
from .hammocks import HammockDecomposition, induced_edges
from .report import Report, ReportBuilder

PARTITION = "partition"
CYCLES = "cycle-property"
LCA = "lca-respecting"
CONTAINMENT = "cross-edge-paths"


def _def_parents(hd: HammockDecomposition) -> Tuple[Dict[int, Optional[int]], List[str]]:
    """Recompute parents from the designated roots: the root is the parent of
    every hammock meeting it; otherwise the parent is the first hammock met
    on the way towards the root of the tree of hammocks."""
    hs = hd.forest.hammocks
    where: Dict[int, List[int]] = {}
    for h in hs:
        for v in h.vertices:
            where.setdefault(v, []).append(h.class_id)
    parent: Dict[int, Optional[int]] = {}
    problems = []
    for root in hd.forest.roots:
        if root in parent:
            problems.append(f"root {root} lies in another root's tree")
            continue
        parent[root] = None
        queue = deque([root])
        while queue:
            i = queue.popleft()
            for v in sorted(hs[i].vertices):
                for j in where[v]:
                    if j not in parent:
                        parent[j] = i
                        queue.append(j)
    for h in hs:
        if h.class_id not in parent:
            problems.append(f"hammock {h.class_id} is in a tree without a designated root")
    return parent, problems


def verify_hammock_decomposition(g: WeightedGraph, t: RootedBfsTree, hd: HammockDecomposition) -> Report:
    rb = ReportBuilder(PARTITION, CYCLES, LCA, CONTAINMENT)
    hs = hd.forest.hammocks
    base = hd.base_tree

    # (a) partition of the edge set
    if t.root not in base:
        rb.fail(PARTITION, "base tree does not contain the root")
    for v in base:
        if v != t.root and t.parent[v] not in base:
            rb.fail(PARTITION, f"base tree is not a connected subtree at {v}", v)
    owner: Dict[Tuple[int, int], List[str]] = {}
    for u, v in t.tree_edges:
        if u in base and v in base:
            owner.setdefault((u, v), []).append("T0")
    h_edges: Dict[Tuple[int, int], int] = {}
    for h in hs:
        bad_shape = False
        if h.tree_a & h.tree_b:
            rb.fail(PARTITION, f"hammock {h.class_id} trees overlap", h.class_id)
            bad_shape = True
        for tree, root in ((h.tree_a, h.root_a), (h.tree_b, h.root_b)):
            if root not in tree or any(x != root and t.parent[x] not in tree for x in tree):
                rb.fail(PARTITION, f"hammock {h.class_id} tree rooted at {root} is not a subtree", h.class_id)
                bad_shape = True
        if not bad_shape and t.related(h.root_a, h.root_b):
            rb.fail(PARTITION, f"hammock {h.class_id} roots are related", (h.root_a, h.root_b))
        if not any(g.has_edge(a, b) for a in h.tree_a for b, _ in g.neighbors(a) if b in h.tree_b):
            rb.fail(PARTITION, f"hammock {h.class_id} has no edge between its trees", h.class_id)
        for e in induced_edges(g, h.vertices):
            owner.setdefault(e, []).append(f"H{h.class_id}")
            h_edges[e] = h.class_id
    expected_ep = sorted(edge_key(h.root_b, t.parent[h.root_b]) for h in hs if t.parent[h.root_b] is not None)
    if sorted(hd.parent_edges) != expected_ep:
        rb.fail(PARTITION, "parent edges are not the parent edges of the hammocks' second roots",
                sorted(set(hd.parent_edges) ^ set(expected_ep)))
    for e in hd.parent_edges:
        owner.setdefault(tuple(e), []).append("Ep")
    for u, v, _ in g.edges:
        got = owner.get((u, v), [])
        if len(got) != 1:
            rb.fail(PARTITION, f"edge ({u}, {v}) is covered {len(got)} times: {got}", (u, v))

    # (b) every cycle of G[H] inside one hammock, via fundamental cycles
    parent_of: Dict[int, Optional[int]] = {}
    adj: Dict[int, List[int]] = {}
    for a, b in h_edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    depth: Dict[int, int] = {}
    tree_set = set()
    for s in sorted(adj):
        if s in depth:
            continue
        depth[s] = 0
        parent_of[s] = None
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in sorted(adj[x]):
                if y not in depth:
                    depth[y] = depth[x] + 1
                    parent_of[y] = x
                    tree_set.add(edge_key(x, y))
                    queue.append(y)
    cycles = 0
    for e, cid in sorted(h_edges.items()):
        if e in tree_set:
            continue
        cycles += 1
        a, b = e
        cyc = [e]
        while a != b:
            if depth[a] < depth[b]:
                a, b = b, a
            cyc.append(edge_key(a, parent_of[a]))
            a = parent_of[a]
        homes = {h_edges[f] for f in cyc}
        if len(homes) > 1:
            rb.fail(CYCLES, f"cycle through {e} spans hammocks {sorted(homes)}", cyc)
    rb.stats["fundamental_cycles"] = cycles
    for i in range(len(hs)):
        for j in range(i + 1, len(hs)):
            common = hs[i].vertices & hs[j].vertices
            if len(common) > 1:
                rb.fail(CYCLES, f"hammocks {i} and {j} share {len(common)} vertices", sorted(common))

    # (c) lca-respecting forest with base tree
    want, problems = _def_parents(hd)
    for p in problems:
        rb.fail(LCA, p)
    for h in hs:
        i = h.class_id
        stored = hd.forest.parent_of[i]
        if i in want and want[i] != stored:
            rb.fail(LCA, f"hammock {i} stores parent {stored}, definition gives {want[i]}", i)
        x = t.lca(h.root_a, h.root_b)
        if t.parent[h.root_b] != x:
            rb.fail(LCA, f"parent of second root {h.root_b} of hammock {i} is not lca {x}", i)
        if stored is None:
            if i not in hd.forest.roots:
                rb.fail(LCA, f"hammock {i} has no parent but is not a root", i)
            if h.root_a not in base or x not in base:
                rb.fail(LCA, f"root hammock {i} does not hang from the base tree", i)
            if t.parent[h.root_a] != x:
                rb.fail(LCA, f"roots of root hammock {i} are not both children of their lca", i)
        else:
            ph = hs[stored]
            if h.vertices & ph.vertices != {h.root_a}:
                rb.fail(LCA, f"hammock {i} meets parent {stored} in {sorted(h.vertices & ph.vertices)}", i)
            if x not in ph.vertices and x != t.lca(ph.root_a, ph.root_b):
                rb.fail(LCA, f"lca {x} of hammock {i} lies outside parent {stored}", i)

    # (d) canonical shortest cross-edge paths inside G[H]
    cross = t.cross_edge_set
    checked = 0
    for u in range(g.n):
        spt = g.spt(u)
        for v in range(u + 1, g.n):
            if spt.dist[v] is None:
                continue
            es = spt.path_to(v).edges()
            idx = [k for k, e in enumerate(es) if e in cross]
            if not idx:
                continue
            checked += 1
            seg = es[idx[0]: idx[-1] + 1]
            missing = [e for e in seg if e not in h_edges]
            if missing:
                rb.fail(CONTAINMENT, f"shortest path {u}->{v} leaves G[H] at {missing[0]}", (u, v))
    rb.stats["cross_edge_paths"] = checked
    return rb.build()
