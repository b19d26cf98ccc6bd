"""Vertex vectors, equivalence quotients, skeletons, and potentials.

The level-k vertex vector of a tiling sums area * indicator(A) over its
offset-size-k tiles; tilings connected by flips avoiding level k share this
vector, and those equivalence classes are the vertices of the k-th quotient
skeleton.  Four skeleton modes cover the experiments:

  sigma_k           k-classes restricted to regular tilings, level-k edges
  sigma_k_plus_prev simultaneous (k-1, k)-classes restricted to regular
                    tilings, edges at levels k-1 and k
  reduced_all       k-classes over all tilings, level-k edges
  lifting_all       simultaneous classes over all tilings, same edge levels

Classes are always computed over the full flip graph first (connectivity
through irregular tilings counts), then intersected with the regular node
set where the mode asks for it; class adjacency uses any qualifying flip
between the underlying components.  The level-k potential of a tiling
against a reference is a signed symmetric-difference count over the sets of
basis pairs sitting at offset size >= k (positive side) and <= k-2
(negative side); it moves by at most one along any flip edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import Finding, PointConfig, format_rational
from .flipgraph import (
    FlipGraph,
    components_excluding_levels,
    enumerate_tilings,
    graph_diameter,
)
from .tiling import Tiling


def vert_k(config: PointConfig, tiling: Tiling, k: int) -> tuple[Fraction, ...]:
    """Sum of tile area times offset indicator over offset-size-k tiles."""
    out = [Fraction(0)] * config.n
    from .core import colex_pairs, mask_points

    for (i, j), mask in zip(colex_pairs(tiling.n), tiling.offsets):
        if mask.bit_count() != k:
            continue
        area = config.coord(j) - config.coord(i)
        for m in mask_points(mask):
            out[m - 1] += area
    return tuple(out)


# ---------------------------------------------------------------------------
# equivalence classes and quotient skeletons

@dataclass(frozen=True)
class Partition:
    """Classes of nodes, canonically ordered by smallest member."""

    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int | None, ...]  # node -> class index, None if excluded

    def __len__(self) -> int:
        return len(self.classes)


def _partition_from_labels(
    labels: Sequence[int], keep: frozenset[int] | None
) -> Partition:
    groups: dict[int, list[int]] = {}
    for node, root in enumerate(labels):
        if keep is None or node in keep:
            groups.setdefault(root, []).append(node)
    roots = sorted(groups, key=lambda r: groups[r][0])
    class_of: list[int | None] = [None] * len(labels)
    classes = []
    for idx, root in enumerate(roots):
        members = tuple(groups[root])
        classes.append(members)
        for node in members:
            class_of[node] = idx
    return Partition(tuple(classes), tuple(class_of))


def equivalence_classes(
    graph: FlipGraph,
    deleted_levels: Sequence[int] | frozenset[int],
    regular_nodes: frozenset[int] | None = None,
) -> Partition:
    """Components of the flip graph minus edges at the deleted levels.

    Connectivity always runs over all tilings; with regular_nodes given the
    resulting classes are intersected with that set and empty intersections
    are dropped.
    """
    labels = components_excluding_levels(graph, deleted_levels)
    return _partition_from_labels(labels, regular_nodes)


_SKELETON_MODES = ("sigma_k", "sigma_k_plus_prev", "lifting_all", "reduced_all")


@dataclass(frozen=True)
class QuotientSkeleton:
    """Quotient flip graph: classes as nodes, class-crossing flips as edges."""

    mode: str
    k: int
    deleted_levels: frozenset[int]
    edge_levels: frozenset[int]
    classes: tuple[tuple[int, ...], ...]
    component_of: tuple[int | None, ...]  # node -> class via its component
    adj: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.classes)

    def degree_multiset(self) -> tuple[int, ...]:
        return tuple(sorted(len(nbrs) for nbrs in self.adj))

    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adj) // 2

    def to_dot(self, name: str = "skeleton") -> str:
        lines = [f"graph {name} {{"]
        for c in range(len(self.classes)):
            lines.append(f'  {c} [label="{c}"];')
        for u, nbrs in enumerate(self.adj):
            for v in nbrs:
                if u < v:
                    lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines)


def skeleton(
    graph: FlipGraph,
    k: int,
    mode: str,
    regular_nodes: frozenset[int] | None = None,
) -> QuotientSkeleton:
    """Build one of the four quotient skeletons at level k."""
    if mode not in _SKELETON_MODES:
        raise ValueError(f"unknown skeleton mode {mode!r}")
    if mode in ("sigma_k", "reduced_all"):
        deleted = frozenset({k})
    else:
        deleted = frozenset({k - 1, k}) - {0}
    edge_levels = deleted
    restricted = mode in ("sigma_k", "sigma_k_plus_prev")
    if restricted and regular_nodes is None:
        raise ValueError(f"mode {mode!r} needs the regular node set")

    labels = components_excluding_levels(graph, deleted)
    partition = _partition_from_labels(labels, regular_nodes if restricted else None)

    # component -> class index (components whose intersection died map to None)
    comp_class: dict[int, int] = {}
    for idx, members in enumerate(partition.classes):
        comp_class[labels[members[0]]] = idx
    component_of = tuple(comp_class.get(labels[v]) for v in range(len(graph)))

    neighbours: list[set[int]] = [set() for _ in partition.classes]
    for u, v, level in graph.undirected_edges():
        if level not in edge_levels:
            cu = component_of[u]
            cv = component_of[v]
            if cu != cv:
                raise Finding(
                    f"level-{level} edge ({u}, {v}) crosses classes despite "
                    f"deleted levels {sorted(deleted)}"
                )
            continue
        cu = component_of[u]
        cv = component_of[v]
        if cu is None or cv is None:
            continue
        if cu == cv:
            raise Finding(
                f"level-{level} edge ({u}, {v}) joins two members of one class"
            )
        neighbours[cu].add(cv)
        neighbours[cv].add(cu)

    adj = tuple(tuple(sorted(nbrs)) for nbrs in neighbours)
    return QuotientSkeleton(
        mode, k, deleted, edge_levels, partition.classes, component_of, adj
    )


# ---------------------------------------------------------------------------
# potentials

@dataclass(frozen=True)
class PotentialReport:
    """Per-node potential values against a reference, with edge audit."""

    kind: str  # "full" or "modified"
    reference: int
    k: int
    thresholds: str  # "definition" or "shifted"
    values: tuple[int, ...]
    max_edge_delta: int
    max_edge_delta_by_level: tuple[tuple[int, int], ...]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "reference": self.reference,
            "k": self.k,
            "thresholds": self.thresholds,
            "values": list(self.values),
            "max_edge_delta": self.max_edge_delta,
            "max_edge_delta_by_level": [list(x) for x in self.max_edge_delta_by_level],
        }


def _side_masks(graph: FlipGraph, k: int, thresholds: str) -> tuple[list[int], list[int]]:
    """Bitmasks over pair ranks: offset size >= hi (plus) and <= k-2 (minus)."""
    if thresholds == "definition":
        hi = k
    elif thresholds == "shifted":
        hi = graph.n - k - 1
    else:
        raise ValueError("thresholds must be 'definition' or 'shifted'")
    lo = k - 2
    plus = []
    minus = []
    for tiling in graph.nodes:
        pmask = 0
        mmask = 0
        for rank, offset in enumerate(tiling.offsets):
            size = offset.bit_count()
            if size >= hi:
                pmask |= 1 << rank
            if size <= lo:
                mmask |= 1 << rank
        plus.append(pmask)
        minus.append(mmask)
    return plus, minus


def _potential_report(
    graph: FlipGraph, reference: int, k: int, thresholds: str, modified: bool
) -> PotentialReport:
    plus, minus = _side_masks(graph, k, thresholds)
    rp = plus[reference]
    rm = minus[reference]

    def value(node: int) -> int:
        p = plus[node]
        val = (rp & ~p).bit_count() - (p & ~rp).bit_count()
        if not modified:
            m = minus[node]
            val -= (rm & ~m).bit_count() - (m & ~rm).bit_count()
        return val

    values = tuple(value(v) for v in range(len(graph)))
    by_level: dict[int, int] = {}
    overall = 0
    for u, v, level in graph.undirected_edges():
        delta = abs(values[u] - values[v])
        if delta > by_level.get(level, -1):
            by_level[level] = delta
        if delta > overall:
            overall = delta
    return PotentialReport(
        "modified" if modified else "full",
        reference,
        k,
        thresholds,
        values,
        overall,
        tuple(sorted(by_level.items())),
    )


def potential(
    graph: FlipGraph, reference: int, k: int, thresholds: str = "definition"
) -> PotentialReport:
    """Level-k potential of every node against the reference tiling."""
    return _potential_report(graph, reference, k, thresholds, modified=False)


def modified_potential(
    graph: FlipGraph, reference: int, k: int, thresholds: str = "definition"
) -> PotentialReport:
    """Positive-side-only potential; moves only across level-k edges."""
    return _potential_report(graph, reference, k, thresholds, modified=True)


def potential_between(
    graph: FlipGraph, reference: int, node: int, k: int, thresholds: str = "definition"
) -> int:
    plus, minus = _side_masks(graph, k, thresholds)
    rp, rm = plus[reference], minus[reference]
    p, m = plus[node], minus[node]
    return (
        (rp & ~p).bit_count()
        - (p & ~rp).bit_count()
        - (rm & ~m).bit_count()
        + (m & ~rm).bit_count()
    )


# ---------------------------------------------------------------------------
# duality and the per-(n, k) diameter report

def _skeleton_iso_via_opposite(
    graph: FlipGraph,
    left: QuotientSkeleton,
    right: QuotientSkeleton,
) -> bool:
    """Does the half-turn involution induce a graph isomorphism left -> right?"""
    if len(left) != len(right):
        return False
    mapping: list[int | None] = [None] * len(left)
    for idx, members in enumerate(left.classes):
        images = {right.component_of[graph.opposite_node(v)] for v in members}
        if len(images) != 1 or None in images:
            return False
        mapping[idx] = images.pop()
    if sorted(mapping) != list(range(len(right))):
        return False
    for u, nbrs in enumerate(left.adj):
        mapped = tuple(sorted(mapping[v] for v in nbrs))
        if mapped != right.adj[mapping[u]]:
            return False
    return True


def duality_check(
    graph: FlipGraph, k: int, regular_nodes: frozenset[int]
) -> dict:
    """Compare the sigma_k skeleton with sigma_(n-1-k) under the involution."""
    n = graph.n
    left = skeleton(graph, k, "sigma_k", regular_nodes)
    right = skeleton(graph, n - 1 - k, "sigma_k", regular_nodes)
    diam_left, _ = graph_diameter(left.adj)
    diam_right, _ = graph_diameter(right.adj)
    return {
        "classes_equal": len(left) == len(right),
        "degrees_equal": left.degree_multiset() == right.degree_multiset(),
        "diameters_equal": diam_left == diam_right,
        "isomorphic_via_opposite": _skeleton_iso_via_opposite(graph, left, right),
    }


def restriction_agreement(
    graph: FlipGraph, k: int, regular_nodes: frozenset[int]
) -> bool:
    """Do all-tilings k-classes, restricted, equal regular-only k-classes?

    The alternative definition deletes irregular nodes before taking
    components; disagreement means some k-class is glued together only
    through irregular tilings.
    """
    via_all = equivalence_classes(graph, {k}, regular_nodes)
    allowed = regular_nodes
    adj = graph.adjacency_excluding({k})
    label: dict[int, int] = {}
    for start in sorted(allowed):
        if start in label:
            continue
        label[start] = start
        stack = [start]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v in allowed and v not in label:
                    label[v] = start
                    stack.append(v)
    groups: dict[int, list[int]] = {}
    for node in sorted(allowed):
        groups.setdefault(label[node], []).append(node)
    via_regular = {tuple(members) for members in groups.values()}
    return via_regular == set(via_all.classes)


def sigma_k_diameter_formula(n: int, k: int) -> int:
    return k * (n - k - 1)


def sum_skeleton_diameter_formula(n: int, k: int) -> int:
    return 2 * k * (n - k) - n


def diameter_report(
    config: PointConfig,
    k: int,
    graph: FlipGraph | None = None,
    regular_nodes: frozenset[int] | None = None,
    threads: int = 1,
) -> dict:
    """Everything measured about sigma_k and sigma_k + sigma_(k-1) at one k."""
    if graph is None:
        graph = enumerate_tilings(config)
    if regular_nodes is None:
        from .regularity import classify_graph, regular_node_set

        regular_nodes = regular_node_set(classify_graph(config, graph))
    n = config.n

    sk = skeleton(graph, k, "sigma_k", regular_nodes)
    sk_diam, _ = graph_diameter(sk.adj, threads=threads)
    sk_formula = sigma_k_diameter_formula(n, k)

    sum_sk = skeleton(graph, k, "sigma_k_plus_prev", regular_nodes)
    sum_diam, _ = graph_diameter(sum_sk.adj, threads=threads)
    sum_formula = sum_skeleton_diameter_formula(n, k)

    duality = duality_check(graph, k, regular_nodes)

    values = {}
    constant_on_classes = True
    for members in sk.classes:
        vals = {vert_k(config, graph.nodes[v], k) for v in members}
        if len(vals) != 1:
            constant_on_classes = False
        values[members[0]] = vals.pop()
    distinct_ok = constant_on_classes and len(set(values.values())) == len(sk.classes)

    pot_def = potential_between(graph, graph.min_id, graph.max_id, k, "definition")
    pot_shift = potential_between(graph, graph.min_id, graph.max_id, k, "shifted")

    return {
        "n": n,
        "k": k,
        "points": [format_rational(a) for a in config.coords],
        "sigma_k": {
            "classes": len(sk),
            "diameter": sk_diam,
            "formula": sk_formula,
            "match": sk_diam == sk_formula,
        },
        "sigma_k_plus_prev": {
            "classes": len(sum_sk),
            "diameter": sum_diam,
            "formula": sum_formula,
            "match": sum_diam == sum_formula,
        },
        "duality_ok": all(duality.values()),
        "duality": duality,
        "vertk_distinct_ok": distinct_ok,
        "restriction_agreement": restriction_agreement(graph, k, regular_nodes),
        "potential_min_to_max": {
            "definition": abs(pot_def),
            "shifted": abs(pot_shift),
            "formula": sum_formula,
            "match_definition": abs(pot_def) == sum_formula,
            "match_shifted": abs(pot_shift) == sum_formula,
        },
    }
