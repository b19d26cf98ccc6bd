"""Monotone-path cross-sections, strong separation, and reduced paths.

Slicing a tiling at height k collects its size-k vertex sets.  For a valid
tiling those sets are pairwise strongly separated, and the strong-separation
order (S before S' when max(S \\ S') < min(S' \\ S)) arranges them into a
monotone path from {1..k} to the top k-set, each step swapping one element
for a larger one.  A flip at level k inserts or removes exactly one size-k
vertex (the "upper" move); a flip at level k-1 likewise toggles one size-k
vertex (the "lower" move); flips at other levels leave the slice alone.

The reduced path at level k+1 is the invariant core of a k-equivalence
class: the intersection of the level-(k+1) slices over every tiling in the
class.  It satisfies the consecutive-triple condition
|A1 & A2 & A3| = (k+1) - 2 and is in bijection with the k-classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from typing import Iterable

from .core import Finding, PointConfig, mask_from, mask_points
from .flipgraph import FlipGraph, enumerate_tilings, graph_diameter
from .secondary import (
    skeleton,
    sigma_k_diameter_formula,
    sum_skeleton_diameter_formula,
)
from .tiling import Tiling


class StrongSeparationError(ValueError):
    """Two same-size sets that the separation order cannot compare."""


def strongly_separated(s1: Iterable[int] | int, s2: Iterable[int] | int) -> bool:
    """max(S1 \\ S2) < min(S2 \\ S1), or symmetrically; empty differences pass."""
    m1 = s1 if isinstance(s1, int) else mask_from(s1)
    m2 = s2 if isinstance(s2, int) else mask_from(s2)
    d1 = m1 & ~m2
    d2 = m2 & ~m1
    if d1 == 0 or d2 == 0:
        return True
    return d1.bit_length() < (d2 & -d2).bit_length() or d2.bit_length() < (d1 & -d1).bit_length()


def _separation_cmp(a: int, b: int) -> int:
    if a == b:
        return 0
    d1 = a & ~b
    d2 = b & ~a
    if d1 and d1.bit_length() < (d2 & -d2).bit_length():
        return -1
    if d2 and d2.bit_length() < (d1 & -d1).bit_length():
        return 1
    raise StrongSeparationError(
        f"sets {mask_points(a)} and {mask_points(b)} are not strongly separated"
    )


@dataclass(frozen=True)
class MonotonePath:
    """An ordered chain of k-element subsets of [n]."""

    k: int
    vertices: tuple[tuple[int, ...], ...]
    reduced: bool = False

    def __len__(self) -> int:
        return len(self.vertices)

    def vertex_masks(self) -> tuple[int, ...]:
        return tuple(mask_from(v) for v in self.vertices)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "vertices": [list(v) for v in self.vertices],
            "reduced": self.reduced,
        }


def _ordered_path(masks: Iterable[int], k: int, n: int, reduced: bool) -> MonotonePath:
    ordered = sorted(masks, key=cmp_to_key(_separation_cmp))
    if ordered:
        start = mask_from(range(1, k + 1))
        end = mask_from(range(n - k + 1, n + 1))
        if ordered[0] != start or ordered[-1] != end:
            raise ValueError(
                f"level-{k} path does not run from {mask_points(start)} "
                f"to {mask_points(end)}"
            )
        for a, b in zip(ordered, ordered[1:]):
            gone = a & ~b
            new = b & ~a
            if gone.bit_count() != 1 or new.bit_count() != 1 or gone > new:
                raise ValueError(
                    f"step {mask_points(a)} -> {mask_points(b)} is not a "
                    "single increasing exchange"
                )
    return MonotonePath(k, tuple(mask_points(m) for m in ordered), reduced)


def level_vertex_masks(tiling: Tiling, k: int) -> frozenset[int]:
    """Size-k members of the tiling's vertex set, as masks."""
    return frozenset(v for v in tiling.vertex_masks() if v.bit_count() == k)


def cross_section(tiling: Tiling, k: int) -> MonotonePath:
    """The tiling's level-k slice as a monotone path.

    Raises StrongSeparationError if two slice vertices are incomparable,
    which cannot happen for a valid tiling.
    """
    if not 0 <= k <= tiling.n:
        raise ValueError(f"level {k} outside 0..{tiling.n}")
    return _ordered_path(level_vertex_masks(tiling, k), k, tiling.n, reduced=False)


def k_class_members(graph: FlipGraph, node: int, k: int) -> tuple[int, ...]:
    """All tilings reachable from the node by flips avoiding level k."""
    from .flipgraph import components_excluding_levels

    labels = components_excluding_levels(graph, {k})
    root = labels[node]
    return tuple(v for v, lab in enumerate(labels) if lab == root)


def reduced_cross_section(graph: FlipGraph, node: int, k: int) -> MonotonePath:
    """The reduced path at level k+1 shared by the node's k-class.

    Intersects the level-(k+1) slices over every class member; the result
    must again be a monotone path whose consecutive triples intersect in
    exactly k-1 points.  A violation falsifies the construction and raises
    a Finding.
    """
    members = k_class_members(graph, node, k)
    common: frozenset[int] | None = None
    for v in members:
        masks = level_vertex_masks(graph.nodes[v], k + 1)
        common = masks if common is None else common & masks
    assert common is not None
    try:
        path = _ordered_path(common, k + 1, graph.n, reduced=True)
    except (StrongSeparationError, ValueError) as exc:
        raise Finding(f"reduced path at level {k + 1} is malformed: {exc}") from exc
    masks = path.vertex_masks()
    for a, b, c in zip(masks, masks[1:], masks[2:]):
        if (a & b & c).bit_count() != k - 1:
            raise Finding(
                f"reduced path triple {path.vertices} violates the "
                f"intersection-size condition at level {k + 1}"
            )
    return path


def satisfies_triple_condition(path: MonotonePath) -> bool:
    """Do all consecutive triples intersect in exactly k-2 points?"""
    masks = path.vertex_masks()
    return all(
        (a & b & c).bit_count() == path.k - 2
        for a, b, c in zip(masks, masks[1:], masks[2:])
    )


# ---------------------------------------------------------------------------
# flip-graph diameters for lifting and reduced paths

def hypertri_diameters(
    config: PointConfig,
    k: int,
    graph: FlipGraph | None = None,
    threads: int = 1,
) -> dict:
    """Diameters over ALL tilings plus the structural cross-checks.

    Builds the simultaneous-(k-1,k) quotient (lifting paths at level k) and
    the k-class quotient (reduced paths at level k+1), measures both
    diameters against their closed forms, and verifies that the quotients
    coincide with grouping tilings by their actual paths and that each
    qualifying flip edge toggles exactly one path vertex.
    """
    if graph is None:
        graph = enumerate_tilings(config)
    n = config.n
    findings: list[str] = []

    lifting = skeleton(graph, k, "lifting_all")
    lifting_diam, _ = graph_diameter(lifting.adj, threads=threads)
    lifting_formula = sum_skeleton_diameter_formula(n, k)

    reduced = skeleton(graph, k, "reduced_all")
    reduced_diam, _ = graph_diameter(reduced.adj, threads=threads)
    reduced_formula = sigma_k_diameter_formula(n, k)

    # grouping by the actual level-k path must reproduce the lifting quotient
    by_path: dict[tuple, set[int]] = {}
    for v in range(len(graph)):
        key = cross_section(graph.nodes[v], k).vertices
        by_path.setdefault(key, set()).add(v)
    path_quotient_equal = {frozenset(m) for m in by_path.values()} == {
        frozenset(m) for m in lifting.classes
    }
    if not path_quotient_equal:
        findings.append("equal-path grouping differs from the simultaneous quotient")

    # reduced paths are constant per k-class by construction; they must also
    # separate distinct classes
    reduced_paths = {
        members: reduced_cross_section(graph, members[0], k).vertices
        for members in reduced.classes
    }
    reduced_quotient_equal = len(set(reduced_paths.values())) == len(reduced.classes)
    if not reduced_quotient_equal:
        findings.append("distinct k-classes share a reduced path")

    # each flip edge at level k or k-1 toggles exactly one slice vertex
    slices = [level_vertex_masks(t, k) for t in graph.nodes]
    lifting_single = True
    for u, v, level in graph.undirected_edges():
        delta = len(slices[u] ^ slices[v])
        expect = 1 if level in (k - 1, k) else 0
        if delta != expect:
            lifting_single = False
            findings.append(
                f"edge ({u}, {v}) at level {level} changes {delta} slice vertices"
            )
            break

    # a level-k flip between classes changes the reduced path (at least one
    # vertex toggles; unlike the lifting slice the count is not always one)
    reduced_changes = True
    reduced_masks = {
        lab: frozenset(mask_from(v) for v in verts)
        for lab, verts in (
            (idx, reduced_paths[members])
            for idx, members in enumerate(reduced.classes)
        )
    }
    for u, v, level in graph.undirected_edges():
        if level != k:
            continue
        cu = reduced.component_of[u]
        cv = reduced.component_of[v]
        if not reduced_masks[cu] ^ reduced_masks[cv]:
            reduced_changes = False
            findings.append(
                f"level-{k} edge ({u}, {v}) leaves the reduced path unchanged"
            )
            break

    return {
        "n": n,
        "k": k,
        "points": [str(a) for a in config.coords],
        "lifting": {
            "classes": len(lifting),
            "diameter": lifting_diam,
            "formula": lifting_formula,
            "match": lifting_diam == lifting_formula,
        },
        "reduced_level": k + 1,
        "reduced": {
            "classes": len(reduced),
            "diameter": reduced_diam,
            "formula": reduced_formula,
            "match": reduced_diam == reduced_formula,
        },
        "path_quotient_equal": path_quotient_equal,
        "reduced_quotient_equal": reduced_quotient_equal,
        "lifting_single_vertex_ok": lifting_single,
        "reduced_path_changes_ok": reduced_changes,
        "findings": findings,
    }
