"""Strict-feasibility oracle by Fourier-Motzkin elimination.

Test-only cross-check for the simplex-based regularity classifier: decides
whether a homogeneous system of strict inequalities sum_j a_ij x_j > 0 has a
solution, eliminating one variable at a time.  Exact rationals, no pivoting,
no code shared with the production solver.

A row whose coefficients are all zero states 0 > 0 and marks the system
infeasible; the system is feasible exactly when every row eventually
disappears (an elimination step with bounds on only one side drops its
rows).  Rows are normalized and deduplicated to keep the blowup in check.
"""

from fractions import Fraction


def _normalize(row):
    lead = next((c for c in row if c != 0), None)
    if lead is None:
        return None  # contradiction 0 > 0
    scale = abs(lead)
    return tuple(c / scale for c in row)


def strictly_feasible(rows) -> bool:
    """Is there x with row . x > 0 for every row?"""
    current = set()
    for row in rows:
        norm = _normalize([Fraction(c) for c in row])
        if norm is None:
            return False
        current.add(norm)
    nv = len(next(iter(current))) if current else 0
    for col in range(nv - 1, -1, -1):
        lower = []
        upper = []
        carried = set()
        for row in current:
            coeff = row[col]
            body = row[:col]
            if coeff == 0:
                norm = _normalize(body)
                if norm is None:
                    return False
                carried.add(norm)
            elif coeff > 0:
                lower.append(tuple(-(b / coeff) for b in body))
            else:
                upper.append(tuple(-(b / coeff) for b in body))
        for lo in lower:
            for up in upper:
                norm = _normalize(tuple(u - l for u, l in zip(up, lo)))
                if norm is None:
                    return False
                carried.add(norm)
        current = carried
    return not current
