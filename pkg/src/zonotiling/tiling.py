"""Tiles, tilings, regular tilings from heights, flips, and validation.

A fine tiling of the zonotope of n lifted vectors uses exactly one
parallelogram tile per basis pair B = {i, j}: the tile with offset set A is
anchored at (sum_{m in A} a_m, |A|) and spanned by v_i and v_j.  A tiling is
therefore stored as a pair-indexed tuple of offset bitmasks, which makes
flip-pattern lookups O(1) and keeps values immutable and hashable.

Orientation convention.  For the circuit p < q < r, the tiling orients the
circuit +1 exactly when q is missing from the offset of the B = {p, r} tile.
The minimal tiling (convex heights, offset-size census ell+1) orients every
circuit +1; the maximal tiling (concave heights, census n-1-ell) orients
every circuit -1.  A *raising* flip toggles one circuit from +1 to -1, i.e.
walks from the minimal toward the maximal tiling and increases the
inversion count of the orientation vector by one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .core import (
    HeightVector,
    NonGenericHeightError,
    OrientationVector,
    PointConfig,
    as_heights,
    colex_pairs,
    full_mask,
    mask_from,
    mask_points,
    num_pairs,
    pair_rank,
)


class FlipUnavailableError(ValueError):
    """The requested flip pattern is not present in the tiling."""


@dataclass(frozen=True)
class Tile:
    """A single parallelogram: offset set A and basis pair B = (i, j)."""

    offset: frozenset[int]
    pair: tuple[int, int]

    def area(self, config: PointConfig) -> Fraction:
        i, j = self.pair
        return config.coord(j) - config.coord(i)

    def to_json(self) -> dict:
        return {"A": sorted(self.offset), "B": list(self.pair)}


@dataclass(frozen=True)
class FlipMove:
    """A flip along one circuit: triple (p, q, r), offset A(F), direction."""

    triple: tuple[int, int, int]
    offset: int  # bitmask of A(F)
    raising: bool

    @property
    def level(self) -> int:
        return self.offset.bit_count() + 1

    @property
    def direction(self) -> str:
        return "raising" if self.raising else "lowering"


@dataclass(frozen=True)
class Tiling:
    """A fine zonotopal tiling: one offset bitmask per colex-ranked pair."""

    n: int
    offsets: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.offsets) != num_pairs(self.n):
            raise ValueError("need exactly one offset per basis pair")

    def offset_mask(self, i: int, j: int) -> int:
        return self.offsets[pair_rank(i, j)]

    def tiles(self) -> Iterator[Tile]:
        for (i, j), mask in zip(colex_pairs(self.n), self.offsets):
            yield Tile(frozenset(mask_points(mask)), (i, j))

    def offset_size_census(self) -> tuple[int, ...]:
        """Number of tiles at each offset size 0 .. n-2."""
        census = [0] * (self.n - 1)
        for mask in self.offsets:
            census[mask.bit_count()] += 1
        return tuple(census)

    def vertex_masks(self) -> frozenset[int]:
        """All vertices of the tiling as subset masks: A <= S <= A|B per tile."""
        verts = set()
        for (i, j), mask in zip(colex_pairs(self.n), self.offsets):
            bi = 1 << (i - 1)
            bj = 1 << (j - 1)
            verts.add(mask)
            verts.add(mask | bi)
            verts.add(mask | bj)
            verts.add(mask | bi | bj)
        return frozenset(verts)

    def to_json(self) -> dict:
        tiles = sorted(self.tiles(), key=lambda t: t.pair)
        return {"n": self.n, "tiles": [t.to_json() for t in tiles]}

    @classmethod
    def from_json(cls, data: dict) -> "Tiling":
        tiles = [(t["A"], tuple(t["B"])) for t in data["tiles"]]
        return tiling_from_tiles(data["n"], tiles)


def tiling_from_tiles(n: int, tiles: Iterable[tuple[Iterable[int], tuple[int, int]]]) -> Tiling:
    """Assemble a Tiling from (offset, pair) items; every pair exactly once."""
    offsets: list[int | None] = [None] * num_pairs(n)
    for raw_offset, (i, j) in tiles:
        if not 1 <= i < j <= n:
            raise ValueError(f"bad basis pair ({i}, {j})")
        mask = raw_offset if isinstance(raw_offset, int) else mask_from(raw_offset)
        rank = pair_rank(i, j)
        if offsets[rank] is not None:
            raise ValueError(f"basis pair ({i}, {j}) occurs more than once")
        if mask & ((1 << (i - 1)) | (1 << (j - 1))):
            raise ValueError(f"offset of tile ({i}, {j}) meets its own pair")
        if mask >> n:
            raise ValueError(f"offset of tile ({i}, {j}) is not a subset of [n]")
        offsets[rank] = mask
    missing = [colex_pairs(n)[r] for r, m in enumerate(offsets) if m is None]
    if missing:
        raise ValueError(f"missing tiles for pairs {missing}")
    return Tiling(n, tuple(offsets))  # type: ignore[arg-type]


# ---------------------------------------------------------------------------
# regular tilings from height vectors

def tiling_from_heights(config: PointConfig, heights: Sequence[int | str | Fraction]) -> Tiling:
    """Project the upper boundary of the lifted zonotope for heights h.

    For each pair i < j the offset collects the points lying strictly above
    the chord through (a_i, h_i) and (a_j, h_j); a point exactly on a chord
    means h is not generic and raises NonGenericHeightError.  The resulting
    tiling satisfies orientation_of(result) == sigma_h(config, h).
    """
    h = as_heights(config, heights)
    a = config.coords
    offsets = []
    for i, j in colex_pairs(config.n):
        ai, aj = a[i - 1], a[j - 1]
        hi, hj = h[i - 1], h[j - 1]
        slope = (hj - hi) / (aj - ai)
        mask = 0
        for m in range(1, config.n + 1):
            if m == i or m == j:
                continue
            chord = hi + slope * (a[m - 1] - ai)
            if h[m - 1] == chord:
                raise NonGenericHeightError(tuple(sorted((i, m, j))))
            if h[m - 1] > chord:
                mask |= 1 << (m - 1)
        offsets.append(mask)
    return Tiling(config.n, tuple(offsets))


def extremal_heights(config: PointConfig, which: str) -> HeightVector:
    """Height vectors certifying the extremal tilings: +-a_i^2."""
    if which == "min":
        return tuple(a * a for a in config.coords)
    if which == "max":
        return tuple(-a * a for a in config.coords)
    raise ValueError("which must be 'min' or 'max'")


def extremal_tiling(config: PointConfig, which: str) -> Tiling:
    """The minimal (census ell+1) or maximal (census n-1-ell) tiling.

    Convex heights a_i^2 put every point outside a chord's span strictly
    above it, so the pair (i, j) gets offset [n] \\ [i..j]; that produces
    the ell+1 offset-size census identifying the minimal tiling.  The census
    is asserted so a convention drift would fail loudly.
    """
    tiling = tiling_from_heights(config, extremal_heights(config, which))
    census = tiling.offset_size_census()
    n = config.n
    if which == "min":
        expected = tuple(ell + 1 for ell in range(n - 1))
    else:
        expected = tuple(n - 1 - ell for ell in range(n - 1))
    if census != expected:
        raise AssertionError(f"extremal census mismatch: {census} != {expected}")
    return tiling


# ---------------------------------------------------------------------------
# orientation

def orientation_of(tiling: Tiling) -> OrientationVector:
    """Circuit signs read off the offsets: +1 iff q misses the {p, r} tile."""
    from .core import colex_triples

    signs = []
    for p, q, r in colex_triples(tiling.n):
        mask = tiling.offset_mask(p, r)
        signs.append(-1 if (mask >> (q - 1)) & 1 else 1)
    return OrientationVector.from_signs(signs)


def orientation_by_vertices(tiling: Tiling) -> OrientationVector:
    """Circuit signs via the vertex-set definition (independent slow route).

    A vertex S orients (p, q, r) positively when it contains p and r but not
    q, negatively when it contains q but neither p nor r.  Exactly one kind
    of witness must occur per circuit; anything else marks a corrupt tiling.
    """
    from .core import colex_triples

    verts = tiling.vertex_masks()
    signs = []
    for p, q, r in colex_triples(tiling.n):
        bp, bq, br = 1 << (p - 1), 1 << (q - 1), 1 << (r - 1)
        support = bp | bq | br
        pos = any(v & support == bp | br for v in verts)
        neg = any(v & support == bq for v in verts)
        if pos == neg:
            kind = "both" if pos else "no"
            raise ValueError(
                f"corrupt tiling: {kind} orientation witnesses for circuit {(p, q, r)}"
            )
        signs.append(1 if pos else -1)
    return OrientationVector.from_signs(signs)


# ---------------------------------------------------------------------------
# flips

def flip_along(tiling: Tiling, p: int, q: int, r: int) -> FlipMove | None:
    """The unique candidate flip along circuit (p, q, r), if available.

    The offset A of the B = {p, r} tile pins everything down: when q is
    outside A the tiling shows the +1 local patch
        {A+p | {q,r}},  {A+r | {p,q}},  {A | {p,r}}
    and the flip (raising) installs the -1 patch
        {A | {q,r}},  {A | {p,q}},  {A+q | {p,r}};
    when q lies in A the roles are reversed (lowering).
    """
    bp, bq, br = 1 << (p - 1), 1 << (q - 1), 1 << (r - 1)
    a_pr = tiling.offset_mask(p, r)
    if a_pr & bq:
        base = a_pr & ~bq
        if tiling.offset_mask(q, r) == base and tiling.offset_mask(p, q) == base:
            return FlipMove((p, q, r), base, raising=False)
    else:
        base = a_pr
        if tiling.offset_mask(q, r) == base | bp and tiling.offset_mask(p, q) == base | br:
            return FlipMove((p, q, r), base, raising=True)
    return None


def available_flips(tiling: Tiling) -> list[FlipMove]:
    """All available flips, at most one per circuit, in colex circuit order."""
    from .core import colex_triples

    moves = []
    for p, q, r in colex_triples(tiling.n):
        move = flip_along(tiling, p, q, r)
        if move is not None:
            moves.append(move)
    return moves


def apply_flip(tiling: Tiling, move: FlipMove) -> Tiling:
    """Exchange the three-tile patch named by the move; one circuit toggles."""
    p, q, r = move.triple
    current = flip_along(tiling, p, q, r)
    if current != move:
        raise FlipUnavailableError(f"flip {move} not available in this tiling")
    bp, bq, br = 1 << (p - 1), 1 << (q - 1), 1 << (r - 1)
    base = move.offset
    offsets = list(tiling.offsets)
    if move.raising:
        offsets[pair_rank(q, r)] = base
        offsets[pair_rank(p, q)] = base
        offsets[pair_rank(p, r)] = base | bq
    else:
        offsets[pair_rank(q, r)] = base | bp
        offsets[pair_rank(p, q)] = base | br
        offsets[pair_rank(p, r)] = base
    return Tiling(tiling.n, tuple(offsets))


def opposite(tiling: Tiling) -> Tiling:
    """The half-turn involution: each tile's offset becomes [n] \\ (A | B).

    Negates every circuit orientation and swaps offset size ell with
    n-2-ell, so flips at level ell correspond to flips at level n-1-ell.
    """
    full = full_mask(tiling.n)
    offsets = []
    for (i, j), mask in zip(colex_pairs(tiling.n), tiling.offsets):
        b = (1 << (i - 1)) | (1 << (j - 1))
        offsets.append(full & ~(mask | b))
    return Tiling(tiling.n, tuple(offsets))


# ---------------------------------------------------------------------------
# validation

@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> tuple[CheckResult, ...]:
        return tuple(c for c in self.checks if not c.ok)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "checks": [
                {"name": c.name, "ok": c.ok, "detail": c.detail} for c in self.checks
            ],
        }


def validate(
    config: PointConfig,
    tiling: Tiling | Iterable[tuple[Iterable[int] | int, tuple[int, int]]],
) -> ValidationReport:
    """Structural audit: pair uniqueness, area, vertex count, orientation.

    Accepts either a Tiling or a raw iterable of (offset, pair) items, so
    malformed tile multisets can be diagnosed instead of rejected upfront.
    """
    from .core import colex_triples

    n = config.n
    if isinstance(tiling, Tiling):
        items = [
            (mask, pair) for pair, mask in zip(colex_pairs(n), tiling.offsets)
        ]
    else:
        items = [
            (m if isinstance(m, int) else mask_from(m), (i, j))
            for m, (i, j) in tiling
        ]
    checks = []

    seen: dict[tuple[int, int], int] = {}
    dups = []
    for _, pair in items:
        seen[pair] = seen.get(pair, 0) + 1
        if seen[pair] == 2:
            dups.append(pair)
    missing = [pair for pair in colex_pairs(n) if pair not in seen]
    ok = not dups and not missing and len(items) == num_pairs(n)
    checks.append(
        CheckResult(
            "pair-uniqueness",
            ok,
            "each basis pair occurs exactly once"
            if ok
            else f"duplicated {dups}, missing {missing}",
        )
    )

    disjoint_bad = [
        pair
        for mask, pair in items
        if mask & ((1 << (pair[0] - 1)) | (1 << (pair[1] - 1))) or mask >> n
    ]
    checks.append(
        CheckResult(
            "offset-disjoint",
            not disjoint_bad,
            "offsets avoid their own pair" if not disjoint_bad else f"bad tiles {disjoint_bad}",
        )
    )

    total = sum(config.coord(j) - config.coord(i) for _, (i, j) in items)
    expected = sum(config.coord(j) - config.coord(i) for i, j in colex_pairs(n))
    checks.append(
        CheckResult(
            "area-conservation",
            total == expected,
            f"tile area sum {total} vs zonotope area {expected}",
        )
    )

    verts = set()
    for mask, (i, j) in items:
        bi, bj = 1 << (i - 1), 1 << (j - 1)
        verts.update((mask, mask | bi, mask | bj, mask | bi | bj))
    want = num_pairs(n) + n + 1
    checks.append(
        CheckResult(
            "vertex-count",
            len(verts) == want,
            f"{len(verts)} vertices, expected {want}",
        )
    )

    bad_circuits = []
    for p, q, r in colex_triples(n):
        bp, bq, br = 1 << (p - 1), 1 << (q - 1), 1 << (r - 1)
        support = bp | bq | br
        pos = any(v & support == bp | br for v in verts)
        neg = any(v & support == bq for v in verts)
        if pos == neg:
            bad_circuits.append((p, q, r))
    checks.append(
        CheckResult(
            "orientation-consistency",
            not bad_circuits,
            "every circuit oriented one way"
            if not bad_circuits
            else f"ambiguous or unoriented circuits {bad_circuits}",
        )
    )

    return ValidationReport(tuple(checks))


# ---------------------------------------------------------------------------
# SVG rendering (presentation only; coordinates leave the exact layer here)

_LEVEL_FILLS = (
    "#cfe8ff", "#ffe3c2", "#d8f5d0", "#f5d0e8", "#fff3b0",
    "#d0ecf5", "#e8d5ff", "#ffd5d0", "#d5ffe8", "#f0e0c0",
)


def tiling_to_svg(config: PointConfig, tiling: Tiling, scale: float = 40.0) -> str:
    """Draw each tile as the parallelogram anchored at (sum_A a_m, |A|)."""
    polygons = []
    xs: list[float] = []
    ys: list[float] = []
    for (i, j), mask in zip(colex_pairs(config.n), tiling.offsets):
        ax = float(sum(config.coord(m) for m in mask_points(mask)))
        ay = float(mask.bit_count())
        vi = (float(config.coord(i)), 1.0)
        vj = (float(config.coord(j)), 1.0)
        corners = [
            (ax, ay),
            (ax + vi[0], ay + vi[1]),
            (ax + vi[0] + vj[0], ay + vi[1] + vj[1]),
            (ax + vj[0], ay + vj[1]),
        ]
        xs.extend(c[0] for c in corners)
        ys.extend(c[1] for c in corners)
        polygons.append((corners, mask.bit_count(), (i, j)))

    pad = 0.5
    x0, x1 = min(xs) - pad, max(xs) + pad
    y0, y1 = min(ys) - pad, max(ys) + pad
    width = (x1 - x0) * scale
    height = (y1 - y0) * scale

    def sx(x: float) -> float:
        return (x - x0) * scale

    def sy(y: float) -> float:
        return (y1 - y) * scale  # flip: svg y axis points down

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
        f'height="{height:.0f}" viewBox="0 0 {width:.2f} {height:.2f}">'
    ]
    for corners, level, pair in polygons:
        pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in corners)
        fill = _LEVEL_FILLS[level % len(_LEVEL_FILLS)]
        parts.append(
            f'<polygon points="{pts}" fill="{fill}" stroke="black" '
            f'stroke-width="1"><title>B={pair}</title></polygon>'
        )
    parts.append("</svg>")
    return "\n".join(parts)
