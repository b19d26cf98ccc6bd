"""Exhaustive flip-graph enumeration, distances, diameters, and chains.

Nodes are tilings keyed by their orientation bitvector (tilings inject into
orientation vectors, and a flip toggles exactly one bit, so neighbour keys
come from a single XOR).  Enumeration is breadth-first from the minimal
tiling with every layer processed in sorted key order, which makes node ids
stable across runs.

A raising edge adds one inversion (one circuit toggled from +1 to -1), so
maximal chains are the length-C(n,3) raising walks from the minimal to the
maximal tiling.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator, Sequence

from .core import Finding, PointConfig, full_mask, num_triples, triple_rank
from .tiling import Tiling, apply_flip, available_flips, extremal_tiling, orientation_of


class EnumerationCapError(ValueError):
    """Requested configuration exceeds the enumeration cap."""


@dataclass
class FlipGraph:
    """The graph of all fine tilings with level-labelled flip edges."""

    config: PointConfig
    nodes: list[Tiling]
    keys: list[int]
    index: dict[int, int]
    adj: list[list[tuple[int, int, bool]]]  # (neighbour id, level, raising)

    @property
    def n(self) -> int:
        return self.config.n

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def min_id(self) -> int:
        return 0

    @property
    def max_id(self) -> int:
        return self.index[full_mask(num_triples(self.n))]

    def node_of(self, tiling: Tiling) -> int:
        return self.index[orientation_of(tiling).bits]

    def opposite_node(self, node: int) -> int:
        """Node of the half-turn image; its key is the bitwise complement."""
        return self.index[self.keys[node] ^ full_mask(num_triples(self.n))]

    def undirected_edges(self) -> Iterator[tuple[int, int, int]]:
        """Each flip edge once as (u, v, level) with u < v."""
        for u, nbrs in enumerate(self.adj):
            for v, level, _raising in nbrs:
                if u < v:
                    yield (u, v, level)

    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adj) // 2

    def simple_adjacency(self) -> list[list[int]]:
        return [[v for v, _l, _r in nbrs] for nbrs in self.adj]

    def adjacency_excluding(self, levels: Iterable[int]) -> list[list[int]]:
        banned = set(levels)
        return [
            [v for v, level, _r in nbrs if level not in banned] for nbrs in self.adj
        ]


def enumerate_tilings(config: PointConfig, cap: int = 8) -> FlipGraph:
    """BFS over all tilings from the minimal one, deduped by orientation key."""
    if config.n > cap:
        raise EnumerationCapError(
            f"n={config.n} exceeds the enumeration cap {cap}"
        )
    start = extremal_tiling(config, "min")
    start_key = orientation_of(start).bits
    nodes = [start]
    keys = [start_key]
    index = {start_key: 0}
    adj: list[list[tuple[int, int, bool]]] = [[]]

    frontier = [0]
    while frontier:
        pending: list[tuple[int, int, int, bool]] = []  # (u, vkey, level, raising)
        discovered: dict[int, Tiling] = {}
        for u in frontier:
            tiling = nodes[u]
            ukey = keys[u]
            for move in available_flips(tiling):
                vkey = ukey ^ (1 << triple_rank(*move.triple))
                pending.append((u, vkey, move.level, move.raising))
                if vkey not in index and vkey not in discovered:
                    discovered[vkey] = apply_flip(tiling, move)
        next_frontier = []
        for vkey in sorted(discovered):
            vid = len(nodes)
            index[vkey] = vid
            keys.append(vkey)
            nodes.append(discovered[vkey])
            adj.append([])
            next_frontier.append(vid)
        for u, vkey, level, raising in pending:
            adj[u].append((index[vkey], level, raising))
        frontier = next_frontier

    return FlipGraph(config, nodes, keys, index, adj)


# ---------------------------------------------------------------------------
# BFS distances and diameters

def bfs_distances(adj: Sequence[Sequence[int]], source: int) -> list[int]:
    dist = [-1] * len(adj)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u]
        for v in adj[u]:
            if dist[v] < 0:
                dist[v] = du + 1
                queue.append(v)
    return dist


def distance(graph: FlipGraph, u: int, v: int) -> int:
    """Edge distance in the unlabelled flip graph."""
    dist = bfs_distances(graph.simple_adjacency(), u)
    if dist[v] < 0:
        raise ValueError("nodes are not connected")
    return dist[v]


def _eccentricity(adj: Sequence[Sequence[int]], source: int) -> tuple[int, int]:
    """(eccentricity, smallest farthest node); raises if disconnected."""
    dist = bfs_distances(adj, source)
    ecc = -1
    far = source
    for v, d in enumerate(dist):
        if d < 0:
            raise ValueError("graph is disconnected")
        if d > ecc:
            ecc = d
            far = v
    return ecc, far


def _diameter_chunk(args: tuple[Sequence[Sequence[int]], Sequence[int]]):
    adj, sources = args
    best = (-1, -1, -1)
    for s in sources:
        ecc, far = _eccentricity(adj, s)
        if ecc > best[0] or (ecc == best[0] and (s, far) < best[1:]):
            best = (ecc, s, far)
    return best


def graph_diameter(
    adj: Sequence[Sequence[int]], threads: int = 1
) -> tuple[int, tuple[int, int]]:
    """All-pairs BFS diameter with a deterministic witness pair.

    The reduction is order-independent (max eccentricity, ties broken by
    smallest source then smallest farthest node), so the result does not
    depend on the worker count.
    """
    if not adj:
        raise ValueError("empty graph has no diameter")
    if len(adj) == 1:
        return 0, (0, 0)
    sources = range(len(adj))
    if threads > 1:
        from concurrent.futures import ProcessPoolExecutor

        chunk = max(1, len(adj) // (threads * 4))
        jobs = [
            (adj, list(sources[i : i + chunk]))
            for i in range(0, len(adj), chunk)
        ]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_diameter_chunk, jobs))
    else:
        results = [_diameter_chunk((adj, list(sources)))]
    best = (-1, -1, -1)
    for ecc, s, far in results:
        if ecc > best[0] or (ecc == best[0] and (s, far) < best[1:]):
            best = (ecc, s, far)
    return best[0], (best[1], best[2])


def diameter(graph: FlipGraph, threads: int = 1) -> tuple[int, tuple[int, int]]:
    return graph_diameter(graph.simple_adjacency(), threads=threads)


# ---------------------------------------------------------------------------
# components after deleting flip levels (k-equivalence machinery)

def components_excluding_levels(
    graph: FlipGraph, deleted_levels: Iterable[int]
) -> list[int]:
    """Component label per node of the graph minus edges at deleted levels.

    Labels are canonical: the label of a component is the smallest node id
    it contains, so partitions compare across calls.
    """
    adj = graph.adjacency_excluding(deleted_levels)
    label = [-1] * len(adj)
    for start in range(len(adj)):
        if label[start] >= 0:
            continue
        label[start] = start
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if label[v] < 0:
                    label[v] = start
                    queue.append(v)
    return label


# ---------------------------------------------------------------------------
# maximal chains

@dataclass(frozen=True)
class Chain:
    """A raising walk from the minimal to the maximal tiling."""

    nodes: tuple[int, ...]
    levels: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.levels)


def level_census(chain: Chain, n: int) -> tuple[int, ...]:
    """Counts of chain flips at each level k = 1 .. n-2."""
    census = [0] * (n - 2)
    for level in chain.levels:
        census[level - 1] += 1
    return tuple(census)


def expected_level_census(n: int) -> tuple[int, ...]:
    """Every maximal chain carries k(n-k-1) flips at level k."""
    return tuple(k * (n - k - 1) for k in range(1, n - 1))


def sample_chain(graph: FlipGraph, seed: int) -> Chain:
    """Seeded uniform raising walk from the minimal tiling.

    Gradedness makes any such walk reach the maximal tiling in exactly
    C(n,3) steps; getting stuck earlier would falsify it and raises a
    Finding.
    """
    rng = random.Random(seed)
    target = comb(graph.n, 3)
    node = graph.min_id
    nodes = [node]
    levels = []
    for _ in range(target):
        raising = [(v, level) for v, level, r in graph.adj[node] if r]
        if not raising:
            raise Finding(
                f"raising walk stuck at node {node} after {len(levels)} steps"
            )
        v, level = raising[rng.randrange(len(raising))]
        nodes.append(v)
        levels.append(level)
        node = v
    if node != graph.max_id:
        raise Finding("raising walk of full length did not end at the maximum")
    return Chain(tuple(nodes), tuple(levels))


def max_chain_through(
    graph: FlipGraph,
    node: int,
    regular_nodes: frozenset[int] | set[int] | None = None,
) -> Chain:
    """A maximal chain from minimum to maximum passing through the node.

    With regular_nodes given, every chain node must belong to that set.
    Raising edges only add inversions, so reachability is a DAG sweep by
    inversion count; absence of a chain raises a Finding.
    """
    allowed = (lambda v: True) if regular_nodes is None else (lambda v: v in regular_nodes)
    if not allowed(node):
        raise ValueError(f"node {node} is outside the allowed node set")

    order = sorted(range(len(graph)), key=lambda v: graph.keys[v].bit_count())
    reach_down = [False] * len(graph)
    for v in order:
        if not allowed(v):
            continue
        if v == graph.min_id:
            reach_down[v] = True
            continue
        reach_down[v] = any(
            not r and allowed(w) and reach_down[w] for w, _level, r in graph.adj[v]
        )
    reach_up = [False] * len(graph)
    for v in reversed(order):
        if not allowed(v):
            continue
        if v == graph.max_id:
            reach_up[v] = True
            continue
        reach_up[v] = any(
            r and allowed(w) and reach_up[w] for w, _level, r in graph.adj[v]
        )
    if not (reach_down[node] and reach_up[node]):
        raise Finding(f"no monotone chain through node {node} within the allowed set")

    down_nodes = [node]
    down_levels = []
    v = node
    while v != graph.min_id:
        w, level = next(
            (w, level)
            for w, level, r in graph.adj[v]
            if not r and allowed(w) and reach_down[w]
        )
        down_nodes.append(w)
        down_levels.append(level)
        v = w
    up_nodes = []
    up_levels = []
    v = node
    while v != graph.max_id:
        w, level = next(
            (w, level)
            for w, level, r in graph.adj[v]
            if r and allowed(w) and reach_up[w]
        )
        up_nodes.append(w)
        up_levels.append(level)
        v = w
    nodes = tuple(reversed(down_nodes)) + tuple(up_nodes)
    levels = tuple(reversed(down_levels)) + tuple(up_levels)
    return Chain(nodes, levels)


# ---------------------------------------------------------------------------
# exports

def graph_to_json(graph: FlipGraph) -> dict:
    width = max(1, (num_triples(graph.n) + 3) // 4)
    return {
        "n": graph.n,
        "points": [str(a) for a in graph.config.coords],
        "nodes": [format(k, f"0{width}x") for k in graph.keys],
        "edges": [[u, v, level] for u, v, level in graph.undirected_edges()],
    }


def graph_to_dot(graph: FlipGraph, name: str = "flips") -> str:
    lines = [f"graph {name} {{"]
    for u in range(len(graph)):
        lines.append(f'  {u} [label="{u}"];')
    for u, v, level in graph.undirected_edges():
        lines.append(f'  {u} -- {v} [label="level={level}"];')
    lines.append("}")
    return "\n".join(lines)
