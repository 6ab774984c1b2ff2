"""Seeded random series-parallel graphs."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Set, Tuple

from .graph import GraphError, WeightedGraph, edge_key


@dataclass(frozen=True)
class GeneratorConfig:
    """Knobs for ``generate_series_parallel``.

    p_series: chance that a growth step is a series step (subdivide an edge)
        rather than a parallel step (add a parallel path or a triangle chord).
    max_parallel: cap on how many parallel paths are stacked on one edge.
    glue_blocks: build several two-terminal blocks and glue them at cut
        vertices, giving graphs that are not 2-connected.
    max_weight: edge weights are drawn uniformly from 1..max_weight.
    """

    p_series: float = 0.45
    max_parallel: int = 3
    glue_blocks: bool = True
    max_weight: int = 1

    def __post_init__(self):
        if not 0.0 <= self.p_series <= 1.0:
            raise GraphError("p_series must lie in [0, 1]")
        if self.max_parallel < 1:
            raise GraphError("max_parallel must be >= 1")
        if self.max_weight < 1:
            raise GraphError("max_weight must be >= 1")


def _grow_block(rng: random.Random, size: int, cfg: GeneratorConfig) -> Tuple[int, List[Tuple[int, int]]]:
    # Two-terminal block on vertices 0..size-1, terminals 0 and 1.
    edges: Set[Tuple[int, int]] = {(0, 1)}
    stacked: Dict[Tuple[int, int], int] = {}
    n = 2
    while n < size:
        choice = rng.random()
        elist = sorted(edges)
        if choice < cfg.p_series:
            u, v = rng.choice(elist)
            edges.discard((u, v))
            edges.add(edge_key(u, n))
            edges.add(edge_key(n, v))
            n += 1
            continue
        u, v = rng.choice(elist)
        count = stacked.get((u, v), 0)
        if count >= cfg.max_parallel:
            continue
        room = size - n
        length = rng.randint(2, min(room + 1, 4))
        prev = u
        for _ in range(length - 1):
            edges.add(edge_key(prev, n))
            prev = n
            n += 1
        edges.add(edge_key(prev, v))
        stacked[(u, v)] = count + 1
    # Triangle chords across degree-2 vertices: reducing x then merging the
    # chord gives back the block, so the result stays series-parallel.
    adj: Dict[int, Set[int]] = {}
    for a, b in edges:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    for x in sorted(adj):
        if len(adj[x]) == 2 and rng.random() < 0.25:
            a, b = sorted(adj[x])
            if b not in adj[a]:
                edges.add((a, b))
                adj[a].add(b)
                adj[b].add(a)
    return n, sorted(edges)


def generate_series_parallel(seed: int, target_n: int, params: GeneratorConfig = GeneratorConfig()) -> WeightedGraph:
    """Random connected series-parallel graph with exactly ``target_n`` vertices.

    Blocks are grown by replacing edges with series or parallel compositions;
    with ``glue_blocks`` several blocks are attached at cut vertices.  Vertex
    ids are shuffled at the end so ids carry no structure.
    """
    if target_n < 2:
        raise GraphError("target_n must be >= 2")
    rng = random.Random(seed)
    if target_n == 2:
        return WeightedGraph(2, ((0, 1, rng.randint(1, params.max_weight)),))
    edges: List[Tuple[int, int]] = []
    n = 0
    remaining = target_n
    while remaining > 0:
        if n == 0:
            size = target_n if not params.glue_blocks else max(2, rng.randint(target_n // 3, target_n))
            size = min(size, remaining)
            _, block = _grow_block(rng, size, params)
            edges.extend(block)
            n = size
            remaining -= size
            continue
        # glue a block sharing one vertex with the current graph
        size = min(remaining + 1, max(2, rng.randint(2, max(2, target_n // 3))))
        _, block = _grow_block(rng, size, params)
        anchor = rng.randrange(n)
        mapping = {0: anchor}
        for b in range(1, size):
            mapping[b] = n + b - 1
        edges.extend(edge_key(mapping[a], mapping[b]) for a, b in block)
        n += size - 1
        remaining -= size - 1
    perm = list(range(n))
    rng.shuffle(perm)
    weighted = tuple(
        (perm[u], perm[v], rng.randint(1, params.max_weight)) for u, v in edges
    )
    return WeightedGraph(n, weighted)
