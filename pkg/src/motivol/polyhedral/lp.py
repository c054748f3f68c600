"""Exact rational linear programming.

Two-phase tableau simplex over exact rationals with Bland's rule, so it
terminates on degenerate problems. The tableau uses gmpy2's ``mpq`` for
speed; results come back as :class:`fractions.Fraction`. All state is
local to a call; the solver is reentrant.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from gmpy2 import mpq as Q

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None


def _pivot(rows: list[list], obj: list, p: int, q: int) -> None:
    prow = rows[p]
    inv = 1 / prow[q]
    nz = [j for j, a in enumerate(prow) if a]
    if inv != 1:
        for j in nz:
            prow[j] *= inv
    for row in rows + [obj]:
        if row is prow:
            continue
        f = row[q]
        if f:
            for j in nz:
                row[j] -= f * prow[j]


def _simplex(rows, obj, basis, allowed: int) -> bool:
    """Maximize in place. ``obj`` holds reduced costs and minus the value.

    Only columns below ``allowed`` may enter. Returns False if unbounded.
    """
    while True:
        q = next((j for j in range(allowed) if obj[j] > 0), None)
        if q is None:
            return True
        best = None
        for i, row in enumerate(rows):
            a = row[q]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        p = best[1]
        _pivot(rows, obj, p, q)
        basis[p] = q


def maximize(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
) -> LPResult:
    """Maximize ``c.x`` subject to ``A_ub x <= b_ub`` and ``A_eq x = b_eq``.

    Variables are free. Entries may be ints or Fractions.
    """
    n = len(c)
    m_ub, m_eq = len(A_ub), len(A_eq)
    m = m_ub + m_eq
    # columns: x+ (n), x- (n), slacks (m_ub), then artificials for the rows
    # whose slack cannot start in the basis
    n_struct = 2 * n + m_ub
    needs_art = [
        k for k in range(m) if k >= m_ub or Q(b_ub[k]) < 0
    ]
    width = n_struct + len(needs_art)
    art_col = {k: n_struct + t for t, k in enumerate(needs_art)}
    rows: list[list] = []
    basis = []
    for k in range(m):
        a, b = (A_ub[k], b_ub[k]) if k < m_ub else (A_eq[k - m_ub], b_eq[k - m_ub])
        row = [Q(0)] * (width + 1)
        for j in range(n):
            row[j] = Q(a[j])
            row[n + j] = -Q(a[j])
        if k < m_ub:
            row[2 * n + k] = Q(1)
        row[-1] = Q(b)
        if row[-1] < 0:
            row = [-x for x in row]
        if k in art_col:
            row[art_col[k]] = Q(1)
            basis.append(art_col[k])
        else:
            basis.append(2 * n + k)
        rows.append(row)

    if needs_art:
        # phase I: maximize -(sum of artificials)
        obj = [Q(0)] * (width + 1)
        for i, row in enumerate(rows):
            if basis[i] >= n_struct:
                for j in range(n_struct):
                    obj[j] += row[j]
                obj[-1] += row[-1]
        _simplex(rows, obj, basis, n_struct)
        if obj[-1] != 0:
            return LPResult(INFEASIBLE)

        # drive artificials out of the basis; drop redundant rows
        keep = []
        for i in range(len(rows)):
            if basis[i] >= n_struct:
                q = next((j for j in range(n_struct) if rows[i][j] != 0), None)
                if q is None:
                    continue
                _pivot(rows, obj, i, q)
                basis[i] = q
            keep.append(i)
        rows = [rows[i][:n_struct] + [rows[i][-1]] for i in keep]
        basis = [basis[i] for i in keep]
    width = n_struct

    # phase II
    cost = [Q(x) for x in c] + [-Q(x) for x in c] + [Q(0)] * (width - 2 * n)
    obj = list(cost) + [Q(0)]
    for i, row in enumerate(rows):
        cb = cost[basis[i]]
        if cb:
            obj = [a - cb * b for a, b in zip(obj, row)]
    if not _simplex(rows, obj, basis, n_struct):
        return LPResult(UNBOUNDED)
    vals = [Q(0)] * width
    for i, row in enumerate(rows):
        vals[basis[i]] = row[-1]
    x = tuple(_frac(vals[j] - vals[n + j]) for j in range(n))
    return LPResult(OPTIMAL, _frac(-obj[-1]), x)


def _frac(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def feasible_point(A_ub, b_ub, A_eq=(), b_eq=(), n: int | None = None):
    """Some point of ``{A_ub x <= b_ub, A_eq x = b_eq}`` or None."""
    if n is None:
        n = len((list(A_ub) + list(A_eq))[0]) if (A_ub or A_eq) else 0
    res = maximize([0] * n, A_ub, b_ub, A_eq, b_eq)
    return res.x if res.status == OPTIMAL else None
