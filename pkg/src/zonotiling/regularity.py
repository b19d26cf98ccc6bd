"""Exact regularity classification with height-vector certificates.

A tiling is regular when some height vector h realizes every circuit sign:
sign <h, alpha(C)> = sigma_T(C) for all circuits.  The sign system is
invariant under h -> h + c*1 + d*a, so we gauge-fix h_1 = h_2 = 0, box the
remaining heights into [-1, 1], and maximize the uniform slack t subject to

    sigma_T(C) * <h, alpha(C)>  >=  t        for every circuit,
    t <= 1.

The tiling is regular exactly when the optimum is positive; the optimal h
is the witness and is verified to reproduce the tiling before the verdict
is returned.  Strict-inequality feasibility leaves no room for rounding, so
the solver is an exact simplex.  To keep the hot loop on machine-fast
integer arithmetic it uses fraction-free (Cramer-style) pivoting: the
tableau stores det(B) * B^-1 [A | b], every entry stays an integer, and each
pivot divides exactly by the previous determinant.  Writing h = w+ - w- with
w+, w- in [0, 1] makes the origin a basic feasible point, so no feasibility
phase is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .core import (
    HeightVector,
    OrientationVector,
    PointConfig,
    circuits,
    format_rational,
)
from .tiling import Tiling, orientation_of, tiling_from_heights

_ZERO = Fraction(0)


class SimplexError(RuntimeError):
    pass


def simplex_max_canonical(
    objective: Sequence[Fraction | int],
    lhs: Sequence[Sequence[Fraction | int]],
    rhs: Sequence[Fraction | int],
) -> tuple[str, list[Fraction], Fraction]:
    """Maximize c.x subject to A.x <= b, x >= 0, b >= 0, exactly.

    Requires the canonical feasible origin (all b nonnegative), which the
    callers here arrange by variable splitting.  Returns (status, x, value)
    with status 'optimal' or 'unbounded'.  Bland's entering rule plus a
    lowest-basis-index tie break keeps the walk finite and deterministic.
    """
    m = len(lhs)
    nv = len(objective)
    width = nv + m + 1

    rows: list[list[int]] = []
    for r in range(m):
        if len(lhs[r]) != nv:
            raise ValueError("ragged constraint matrix")
        coeffs = [Fraction(x) for x in lhs[r]]
        b = Fraction(rhs[r])
        if b < 0:
            raise ValueError("canonical form needs nonnegative right-hand sides")
        scale = lcm(b.denominator, *(c.denominator for c in coeffs)) if coeffs else b.denominator
        row = [int(c * scale) for c in coeffs]
        row.extend(1 if c == r else 0 for c in range(m))
        row.append(int(b * scale))
        rows.append(row)

    cfr = [Fraction(c) for c in objective]
    cscale = lcm(1, *(c.denominator for c in cfr))
    obj = [int(c * cscale) for c in cfr] + [0] * m + [0]

    det = 1
    basis = list(range(nv, nv + m))

    while True:
        s = next((j for j in range(width - 1) if obj[j] > 0), -1)
        if s < 0:
            break
        leave = -1
        for r in range(m):
            a = rows[r][s]
            if a > 0:
                if leave < 0:
                    leave = r
                else:
                    diff = rows[r][width - 1] * rows[leave][s] - rows[leave][width - 1] * a
                    if diff < 0 or (diff == 0 and basis[r] < basis[leave]):
                        leave = r
        if leave < 0:
            return "unbounded", [], _ZERO
        piv = rows[leave][s]
        prow = rows[leave]
        for i in range(m):
            if i != leave:
                row = rows[i]
                a = row[s]
                rows[i] = [(piv * row[j] - a * prow[j]) // det for j in range(width)]
        a = obj[s]
        obj = [(piv * obj[j] - a * prow[j]) // det for j in range(width)]
        det = piv
        basis[leave] = s

    x = [_ZERO] * nv
    for r, b in enumerate(basis):
        if b < nv:
            x[b] = Fraction(rows[r][width - 1], det)
    value = Fraction(-obj[width - 1], det) / cscale
    return "optimal", x, value


# ---------------------------------------------------------------------------
# regularity certificates

@dataclass(frozen=True)
class RegularityCertificate:
    regular: bool
    witness: HeightVector | None
    slack: Fraction

    def to_json(self) -> dict:
        out: dict = {"regular": self.regular}
        if self.witness is not None:
            out["h"] = [format_rational(h) for h in self.witness]
            out["slack"] = format_rational(self.slack)
        return out


def classify(config: PointConfig, tiling: Tiling) -> RegularityCertificate:
    """Decide regularity by exact slack maximization; verify any witness."""
    return classify_orientation(config, orientation_of(tiling), tiling)


def classify_orientation(
    config: PointConfig,
    orientation: OrientationVector,
    tiling: Tiling | None = None,
) -> RegularityCertificate:
    n = config.n
    circs = circuits(config)
    # variables: w+_i, w-_i for i = 3..n (h_i = w+_i - w-_i in [-1, 1]), then t
    k = n - 2
    nv = 2 * k + 1
    t_col = nv - 1
    lhs: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for c in circs:
        sign = orientation.sign(c.rank)
        row = [_ZERO] * nv
        for point, coeff in zip(c.triple, c.alpha):
            if point >= 3:
                row[point - 3] = -sign * coeff
                row[k + point - 3] = sign * coeff
        row[t_col] = Fraction(1)
        lhs.append(row)
        rhs.append(_ZERO)
    for i in range(2 * k):
        row = [_ZERO] * nv
        row[i] = Fraction(1)
        lhs.append(row)
        rhs.append(Fraction(1))
    row = [_ZERO] * nv
    row[t_col] = Fraction(1)
    lhs.append(row)
    rhs.append(Fraction(1))

    objective = [_ZERO] * nv
    objective[t_col] = Fraction(1)
    status, x, value = simplex_max_canonical(objective, lhs, rhs)
    if status != "optimal":
        raise SimplexError(f"slack LP ended with status {status}")
    if value <= 0:
        return RegularityCertificate(False, None, _ZERO)
    witness: HeightVector = (_ZERO, _ZERO) + tuple(x[i] - x[k + i] for i in range(k))
    reproduced = tiling_from_heights(config, witness)
    if tiling is not None and reproduced != tiling:
        raise AssertionError("regularity witness does not reproduce the tiling")
    if orientation_of(reproduced) != orientation:
        raise AssertionError("regularity witness does not reproduce the orientation")
    return RegularityCertificate(True, witness, value)


def classify_graph(config: PointConfig, graph) -> tuple[RegularityCertificate, ...]:
    """Certificates for every node of an enumerated flip graph."""
    return tuple(classify(config, tiling) for tiling in graph.nodes)


def regular_node_set(certs: Sequence[RegularityCertificate]) -> frozenset[int]:
    return frozenset(i for i, c in enumerate(certs) if c.regular)
