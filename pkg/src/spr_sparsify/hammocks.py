"""Hammock decompositions of unit-weight series-parallel graphs.

Pipeline (each stage is a public function so it can be inspected alone):

1. ``lca_equivalence_classes``: group cross edges that share an lca and
   whose endpoints fall into the same pair of child subtrees of that lca.
2. ``build_initial_hammocks``: one hammock per class, the two trees being
   the Steiner subtrees spanning the class's endpoints on either side.
3. ``hammock_joining_graph`` + ``assign_components``: tree paths joining
   hammocks are grouped into components, each handed to the hammock that
   is an ancestor of every hammock it touches.
4. ``extend_lca_paths``: hammock trees grow up to the children of the lca.
5. ``attach_dangling_trees``: leftover tree pieces go to T_0 or to the
   hammock holding their top vertex; parent edges E_p are read off.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .bfs import RootedBfsTree, build_bfs_tree
from .graph import GraphError, Path, WeightedGraph, edge_key, is_connected
from .report import StructuredFailure

EdgePair = Tuple[int, int]


@dataclass(frozen=True)
class LcaEquivClass:
    """Cross edges sharing an lca and the same two child subtrees below it.

    ``edges`` are oriented ``(u, v)`` with ``u`` below ``child_a`` and ``v``
    below ``child_b``; the orientation follows the first edge in sorted order.
    """

    id: int
    edges: Tuple[EdgePair, ...]
    lca_vertex: int
    height: int
    child_a: int
    child_b: int


@dataclass(frozen=True)
class Hammock:
    class_id: int
    tree_a: FrozenSet[int]
    tree_b: FrozenSet[int]
    root_a: int
    root_b: int
    stage: str

    @property
    def vertices(self) -> FrozenSet[int]:
        return self.tree_a | self.tree_b


@dataclass(frozen=True)
class HammockForest:
    hammocks: Tuple[Hammock, ...]  # position == class id
    parent_of: Tuple[Optional[int], ...]
    roots: Tuple[int, ...]

    def children_of(self, i: int) -> List[int]:
        return [j for j, p in enumerate(self.parent_of) if p == i]

    def bfs_order(self) -> List[int]:
        order = []
        queue = deque(sorted(self.roots))
        while queue:
            i = queue.popleft()
            order.append(i)
            queue.extend(self.children_of(i))
        return order

    def is_ancestor(self, a: int, b: int) -> bool:
        """True when hammock ``a`` is an ancestor of, or equal to, ``b``."""
        x: Optional[int] = b
        while x is not None:
            if x == a:
                return True
            x = self.parent_of[x]
        return False


@dataclass(frozen=True)
class HammockDecomposition:
    root: int
    base_tree: FrozenSet[int]
    forest: HammockForest
    parent_edges: Tuple[EdgePair, ...]

    @property
    def hammocks(self) -> Tuple[Hammock, ...]:
        return self.forest.hammocks


def induced_edges(g: WeightedGraph, vertices: Iterable[int]) -> Set[EdgePair]:
    vs = set(vertices)
    out = set()
    for v in vs:
        for x, _ in g.neighbors(v):
            if x in vs and v < x:
                out.add((v, x))
    return out


def _fail(check: str, stage: str, message: str, witness=None):
    raise StructuredFailure(check, message, stage=stage, witness=witness)


# ---------------------------------------------------------------- classes


def lca_equivalence_classes(t: RootedBfsTree) -> List[LcaEquivClass]:
    groups: Dict[Tuple[int, FrozenSet[int]], List[EdgePair]] = {}
    orient: Dict[Tuple[int, FrozenSet[int]], Tuple[int, int]] = {}
    order: List[Tuple[int, FrozenSet[int]]] = []
    for u, v in sorted(t.cross_edges):
        x = t.lca(u, v)
        if x in (u, v):
            _fail("cross-edge-endpoints-unrelated", "classes",
                  f"cross edge ({u}, {v}) joins a vertex to its ancestor", (u, v))
        cu, cv = t.child_toward(x, u), t.child_toward(x, v)
        key = (x, frozenset((cu, cv)))
        if key not in groups:
            groups[key] = []
            orient[key] = (cu, cv)
            order.append(key)
        ca, _ = orient[key]
        groups[key].append((u, v) if cu == ca else (v, u))
    classes = []
    for i, key in enumerate(order):
        ca, cb = orient[key]
        classes.append(LcaEquivClass(i, tuple(groups[key]), key[0], t.height(key[0]), ca, cb))
    return classes


def lca_equivalent(t: RootedBfsTree, e: EdgePair, f: EdgePair) -> bool:
    """Pairwise relation checked directly, trying both orientations of ``f``."""
    le = t.lca(*e)
    if le != t.lca(*f):
        return False
    u, v = e
    for a, b in (f, f[::-1]):
        if t.is_proper_ancestor(le, t.lca(u, a)) and t.is_proper_ancestor(le, t.lca(v, b)):
            return True
    return False


# ---------------------------------------------------------------- connected below


def is_connected_below(t: RootedBfsTree, g: WeightedGraph, e: EdgePair) -> Tuple[bool, Optional[Path]]:
    """Is there a path from the root into subtree(v) that meets subtree(u)
    only inside subtree(v)?  ``e = (u, v)`` with ``v`` a child of ``u``."""
    u, v = e
    if t.parent[v] != u:
        if t.parent[u] == v:
            u, v = v, u
        else:
            raise GraphError(f"({u}, {v}) is not a tree edge")
    below = t.subtree(v)
    blocked = t.subtree(u) - below
    if t.root in blocked:
        return False, None
    prev = {t.root: None}
    queue = deque([t.root])
    while queue:
        x = queue.popleft()
        if x in below:
            path = [x]
            while prev[path[-1]] is not None:
                path.append(prev[path[-1]])
            return True, Path(tuple(reversed(path)))
        for y, _ in g.neighbors(x):
            if y not in prev and y not in blocked:
                prev[y] = x
                queue.append(y)
    return False, None


# ---------------------------------------------------------------- initial hammocks


def _steiner(t: RootedBfsTree, vertices: Iterable[int]) -> FrozenSet[int]:
    vs = list(vertices)
    top = t.lca_many(vs)
    out: Set[int] = set()
    for v in vs:
        for x in t.path_up(v, top):
            if x in out:
                break
            out.add(x)
    out.add(top)
    return frozenset(out)


def _check_hammock(t: RootedBfsTree, g: WeightedGraph, h: Hammock, cls: Optional[LcaEquivClass], stage: str) -> None:
    check = "hammock-shape"
    if h.tree_a & h.tree_b:
        _fail(check, stage, f"hammock {h.class_id} trees overlap", sorted(h.tree_a & h.tree_b))
    for tree, root in ((h.tree_a, h.root_a), (h.tree_b, h.root_b)):
        if t.high(tree) != root:
            _fail(check, stage, f"hammock {h.class_id} root {root} is not the top of its tree")
        for x in tree:
            if x != root and t.parent[x] not in tree:
                _fail(check, stage, f"hammock {h.class_id} tree is not connected at {x}")
    if t.related(h.root_a, h.root_b):
        _fail(check, stage, f"hammock {h.class_id} roots are related", (h.root_a, h.root_b))
    between = set()
    for u in h.tree_a:
        for x, _ in g.neighbors(u):
            if x in h.tree_b:
                between.add(edge_key(u, x))
    if not between:
        _fail(check, stage, f"hammock {h.class_id} has no cross edge between its trees")
    if cls is not None and between != {edge_key(*e) for e in cls.edges}:
        _fail(check, stage, f"hammock {h.class_id} cross edges differ from its class",
              sorted(between ^ {edge_key(*e) for e in cls.edges}))


def _check_edge_disjoint(g: WeightedGraph, hammocks: Sequence[Hammock], stage: str) -> Dict[EdgePair, int]:
    owner: Dict[EdgePair, int] = {}
    for h in hammocks:
        for e in induced_edges(g, h.vertices):
            if e in owner:
                _fail("hammocks-edge-disjoint", stage,
                      f"edge {e} lies in hammocks {owner[e]} and {h.class_id}", e)
            owner[e] = h.class_id
    return owner


def build_initial_hammocks(t: RootedBfsTree, classes: Sequence[LcaEquivClass]) -> List[Hammock]:
    g = t.graph
    out = []
    for c in classes:
        a = _steiner(t, [u for u, _ in c.edges])
        b = _steiner(t, [v for _, v in c.edges])
        h = Hammock(c.id, a, b, t.high(a), t.high(b), "initial")
        _check_hammock(t, g, h, c, "initial")
        out.append(h)
    _check_edge_disjoint(g, out, "initial")
    return out


# ---------------------------------------------------------------- joining graph


def _bridge(t: RootedBfsTree, s1: FrozenSet[int], s2: FrozenSet[int]) -> Optional[List[int]]:
    """Unique tree path from subtree ``s1`` to disjoint subtree ``s2``."""
    if s1 & s2:
        return None
    path = t.tree_path(t.high(s1), t.high(s2))
    last_in_1 = max(i for i, x in enumerate(path) if x in s1)
    first_in_2 = min(i for i, x in enumerate(path) if x in s2)
    return path[last_in_1:first_in_2 + 1]


def hammock_joining_graph(t: RootedBfsTree, g: WeightedGraph, initial: Sequence[Hammock]) -> FrozenSet[EdgePair]:
    """Edges of all tree paths between two distinct hammocks whose interior
    avoids both hammocks and which avoid both classes' lca vertices."""
    lcas = [t.lca(h.root_a, h.root_b) for h in initial]
    edges: Set[EdgePair] = set()
    for i, hi in enumerate(initial):
        for j in range(i + 1, len(initial)):
            hj = initial[j]
            both = hi.vertices | hj.vertices
            for s1 in (hi.tree_a, hi.tree_b):
                for s2 in (hj.tree_a, hj.tree_b):
                    p = _bridge(t, s1, s2)
                    if p is None or len(p) < 2:
                        continue
                    if any(x in both for x in p[1:-1]):
                        continue
                    if lcas[i] in p or lcas[j] in p:
                        continue
                    edges.update(edge_key(a, b) for a, b in zip(p, p[1:]))
    for e in sorted(edges):
        ok, _ = is_connected_below(t, g, e if t.parent[e[1]] == e[0] else e[::-1])
        if not ok:
            _fail("joining-edges-connected-below", "joining", f"edge {e} is not connected below", e)
    return frozenset(edges)


# ---------------------------------------------------------------- forest structure


def _forest_structure(
    t: RootedBfsTree,
    hammocks: Sequence[Hammock],
    stage: str,
    designated: Optional[Set[int]] = None,
) -> Tuple[Tuple[Optional[int], ...], Tuple[int, ...], Dict[int, int]]:
    """Parent pointers of a forest of hammocks.

    Hammocks sharing a vertex are adjacent; the hammock/shared-vertex
    incidence graph must be a forest.  Each tree is rooted at its designated
    hammock, or (when ``designated`` is None) at the one whose lca is highest,
    ties to the smallest class id.  Returns parents, roots and the vertex
    each child shares with its parent.
    """
    k = len(hammocks)
    where: Dict[int, List[int]] = {}
    for h in hammocks:
        for v in h.vertices:
            where.setdefault(v, []).append(h.class_id)
    shared = {v: sorted(hs) for v, hs in where.items() if len(hs) > 1}
    # components of hammocks
    comp = list(range(k))

    def find(x):
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    for hs in shared.values():
        for h in hs[1:]:
            comp[find(h)] = find(hs[0])
    members: Dict[int, List[int]] = {}
    for i in range(k):
        members.setdefault(find(i), []).append(i)
    roots = []
    for group in members.values():
        if designated is None:
            roots.append(min(group, key=lambda i: (-t.height(t.lca(hammocks[i].root_a, hammocks[i].root_b)), i)))
        else:
            chosen = [i for i in group if i in designated]
            if len(chosen) != 1:
                _fail("one-root-per-tree", stage,
                      f"tree of hammocks {group} has {len(chosen)} designated roots", group)
            roots.append(chosen[0])
    parent: List[Optional[int]] = [None] * k
    attach: Dict[int, int] = {}
    seen_h = set()
    seen_v = set()
    for root in sorted(roots):
        queue = deque([root])
        seen_h.add(root)
        while queue:
            i = queue.popleft()
            for v in sorted(hammocks[i].vertices):
                if v not in shared or attach.get(i) == v:
                    continue
                if v in seen_v:
                    _fail("forest-of-hammocks", stage, f"hammocks around vertex {v} form a cycle", v)
                seen_v.add(v)
                for j in shared[v]:
                    if j == i:
                        continue
                    if j in seen_h:
                        _fail("forest-of-hammocks", stage, f"hammock {j} reached twice", (i, j, v))
                    seen_h.add(j)
                    parent[j] = i
                    attach[j] = v
                    queue.append(j)
    return tuple(parent), tuple(sorted(roots)), attach


def _orient_by_attachment(hammocks: Sequence[Hammock], attach: Dict[int, int], stage: str, check: str) -> List[Hammock]:
    out = []
    for h in hammocks:
        v = attach.get(h.class_id)
        if v is None:
            out.append(replace(h, stage=stage))
        elif v == h.root_a:
            out.append(replace(h, stage=stage))
        elif v == h.root_b:
            out.append(Hammock(h.class_id, h.tree_b, h.tree_a, h.root_b, h.root_a, stage))
        else:
            _fail(check, stage,
                  f"hammock {h.class_id} meets its parent at {v}, not at a hammock root", (h.class_id, v))
    return out


# ---------------------------------------------------------------- assignment


def _edge_components(edges: Iterable[EdgePair]) -> List[Tuple[FrozenSet[int], Tuple[EdgePair, ...]]]:
    adj: Dict[int, List[int]] = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    seen: Set[int] = set()
    comps = []
    for s in sorted(adj):
        if s in seen:
            continue
        seen.add(s)
        stack = [s]
        vs = []
        while stack:
            x = stack.pop()
            vs.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        vset = frozenset(vs)
        es = tuple(sorted(e for e in edges if e[0] in vset))
        comps.append((vset, es))
    return comps


def _apply_assignment(t, g, initial, comps, assign, stage) -> List[Hammock]:
    grow_a: Dict[int, Set[int]] = {h.class_id: set(h.tree_a) for h in initial}
    grow_b: Dict[int, Set[int]] = {h.class_id: set(h.tree_b) for h in initial}
    for (vset, _), i in zip(comps, assign):
        h = initial[i]
        in_a, in_b = bool(vset & h.tree_a), bool(vset & h.tree_b)
        if in_a == in_b:
            _fail("joined-hammocks-are-hammocks", stage,
                  f"joining component touches {'both' if in_a else 'neither'} trees of hammock {i}", sorted(vset))
        (grow_a if in_a else grow_b)[i].update(vset)
    out = []
    for h in initial:
        a, b = frozenset(grow_a[h.class_id]), frozenset(grow_b[h.class_id])
        out.append(Hammock(h.class_id, a, b, t.high(a), t.high(b), stage))
    return out


def assign_components(
    t: RootedBfsTree,
    h_hj: FrozenSet[EdgePair],
    initial: Sequence[Hammock],
    classes: Sequence[LcaEquivClass],
) -> HammockForest:
    g = t.graph
    stage = "joined"
    hat_edges: Set[EdgePair] = set()
    for h in initial:
        hat_edges |= induced_edges(g, h.vertices)
    comps = _edge_components(sorted(e for e in h_hj if e not in hat_edges))
    lcas = [c.lca_vertex for c in classes]
    touching = []
    first = []
    for vset, _ in comps:
        touch = [h.class_id for h in initial if h.vertices & vset]
        valid = [i for i in touch if lcas[i] not in vset]
        if not valid:
            _fail("valid-assignment-exists", stage, "joining component has no valid hammock", sorted(vset))
        touching.append(touch)
        first.append(valid[0])
    trial = _apply_assignment(t, g, initial, comps, first, stage)
    parent, _, _ = _forest_structure(t, trial, stage)
    probe = HammockForest(tuple(trial), parent, ())
    final = []
    for (vset, _), touch in zip(comps, touching):
        tops = [i for i in touch if all(probe.is_ancestor(i, j) for j in touch)]
        if len(tops) != 1:
            _fail("unique-local-max", stage, f"joining component has {len(tops)} local maxima", sorted(vset))
        if lcas[tops[0]] in vset:
            _fail("valid-assignment-exists", stage, "ancestor hammock's lca lies on its component", sorted(vset))
        final.append(tops[0])
    joined = _apply_assignment(t, g, initial, comps, final, stage)
    for h in joined:
        _check_hammock(t, g, h, classes[h.class_id], stage)
    _check_edge_disjoint(g, joined, stage)
    parent, roots, attach = _forest_structure(t, joined, stage)
    joined = _orient_by_attachment(joined, attach, stage, "parent-meets-child-at-root")
    return HammockForest(tuple(joined), parent, roots)


# ---------------------------------------------------------------- lca paths


def extend_lca_paths(t: RootedBfsTree, joined: HammockForest) -> HammockForest:
    """Grow the non-attached tree of every hammock (and both trees of root
    hammocks) up to the child of the hammock's lca."""
    stage = "lca_extended"
    roots = set(joined.roots)
    taken: Dict[int, int] = {}
    for h in joined.hammocks:
        for v in h.vertices:
            taken[v] = -1
    out = []
    for h in joined.hammocks:
        x = t.lca(h.root_a, h.root_b)
        trees = [set(h.tree_a), set(h.tree_b)]
        sides = (0, 1) if h.class_id in roots else (1,)
        for s in sides:
            top = h.root_a if s == 0 else h.root_b
            for v in t.path_up(top, x)[1:-1]:
                if v in taken:
                    _fail("lca-paths-disjoint", stage,
                          f"lca path of hammock {h.class_id} reuses vertex {v}", (h.class_id, v))
                taken[v] = h.class_id
                trees[s].add(v)
        a, b = frozenset(trees[0]), frozenset(trees[1])
        out.append(Hammock(h.class_id, a, b, t.high(a), t.high(b), stage))
    parent, new_roots, attach = _forest_structure(t, out, stage, designated=roots)
    if parent != joined.parent_of:
        _fail("lca-extension-keeps-forest", stage, "parent structure changed after adding lca paths")
    out = _orient_by_attachment(out, attach, stage, "parent-meets-child-at-root")
    return HammockForest(tuple(out), parent, new_roots)


# ---------------------------------------------------------------- dangling trees


def attach_dangling_trees(t: RootedBfsTree, extended: HammockForest) -> HammockDecomposition:
    g = t.graph
    stage = "final"
    hs = list(extended.hammocks)
    ep = sorted(edge_key(h.root_b, t.parent[h.root_b]) for h in hs)
    used: Set[EdgePair] = set(ep)
    for h in hs:
        used |= induced_edges(g, h.vertices)
    leftover = [e for e in sorted(t.tree_edges) if e not in used]
    comps = _edge_components(leftover)
    base = frozenset([t.root])
    trees_a = {h.class_id: set(h.tree_a) for h in hs}
    trees_b = {h.class_id: set(h.tree_b) for h in hs}
    for vset, _ in comps:
        if t.root in vset:
            base = vset
            continue
        top = t.high(vset)
        holders = [h.class_id for h in hs if top in h.vertices]
        if not holders:
            _fail("dangling-tree-has-home", stage, f"leftover tree under {top} touches no hammock", sorted(vset))
        i = holders[0]
        (trees_a if top in trees_a[i] else trees_b)[i].update(vset)
    final = []
    for h in hs:
        a, b = frozenset(trees_a[h.class_id]), frozenset(trees_b[h.class_id])
        final.append(Hammock(h.class_id, a, b, t.high(a), t.high(b), stage))
    designated = {i for i in extended.roots if final[i].root_a in base}
    parent, roots, attach = _forest_structure(t, final, stage, designated=designated)
    for h in final:
        v = attach.get(h.class_id)
        if v is not None and v != h.root_a:
            _fail("parent-meets-child-at-root", stage,
                  f"hammock {h.class_id} meets its parent at {v}, not at its attached root", (h.class_id, v))
    return HammockDecomposition(t.root, base, HammockForest(tuple(final), parent, roots), tuple(ep))


# ---------------------------------------------------------------- full pipeline


@dataclass(frozen=True)
class PipelineStages:
    tree: RootedBfsTree
    classes: Tuple[LcaEquivClass, ...]
    initial: Tuple[Hammock, ...]
    joining_edges: FrozenSet[EdgePair]
    joined: HammockForest
    extended: HammockForest
    decomposition: HammockDecomposition


def hammock_pipeline(g: WeightedGraph, r: int) -> PipelineStages:
    if not g.unit_weight:
        raise GraphError("hammock decompositions need unit weights (expand first)")
    if not is_connected(g):
        build_bfs_tree(g, r)  # raises naming an unreachable vertex
    t = build_bfs_tree(g, r)
    classes = lca_equivalence_classes(t)
    initial = build_initial_hammocks(t, classes)
    h_hj = hammock_joining_graph(t, g, initial)
    joined = assign_components(t, h_hj, initial, classes)
    extended = extend_lca_paths(t, joined)
    hd = attach_dangling_trees(t, extended)
    return PipelineStages(t, tuple(classes), tuple(initial), h_hj, joined, extended, hd)


def build_hammock_decomposition(g: WeightedGraph, r: int) -> HammockDecomposition:
    return hammock_pipeline(g, r).decomposition
