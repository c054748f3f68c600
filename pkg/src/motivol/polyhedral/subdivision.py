"""Regular subdivisions of planar point sets from the lower hull of a lift.

The lower hull of ``{(m, w)}`` in R^3 is found by gift wrapping: start from
a lower edge over the boundary of ``conv(m)`` and repeatedly rotate the
supporting plane about a known lower edge until it hits another lifted point.
Coplanar lower faces are kept whole, so non-generic lifts give polygonal
cells rather than a triangulation.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from ..errors import InvariantViolation, MotivicError
from .lattice import LatticePolygon, convex_hull, cross, lattice_length

Point = tuple[int, int]


@dataclass(frozen=True)
class LiftedPoint:
    m: Point
    w: Fraction


@dataclass(frozen=True)
class SubdivisionCell:
    vertices: tuple[Point, ...]
    support: tuple[int, ...]
    slope: tuple[Fraction, Fraction]
    offset: Fraction

    @property
    def polygon(self) -> LatticePolygon:
        return LatticePolygon(self.vertices)

    @property
    def dual_position(self) -> tuple[Fraction, Fraction]:
        """Vertex of the min-plus tropical curve dual to this cell."""
        return (-self.slope[0], -self.slope[1])


@dataclass(frozen=True)
class SubdivisionEdge:
    endpoints: tuple[Point, Point]
    support: tuple[int, ...]
    cells: tuple[int, ...]

    @property
    def lattice_length(self) -> int:
        return lattice_length(*self.endpoints)

    @property
    def is_boundary(self) -> bool:
        return len(self.cells) < 2


@dataclass(frozen=True)
class RegularSubdivision:
    points: tuple[LiftedPoint, ...]
    cells: tuple[SubdivisionCell, ...]
    edges: tuple[SubdivisionEdge, ...]
    degenerate: bool

    @property
    def polygon(self) -> LatticePolygon | None:
        if self.degenerate:
            return None
        return LatticePolygon.from_points(p.m for p in self.points)

    @property
    def dual_positions(self) -> list[tuple[Fraction, Fraction]]:
        return [c.dual_position for c in self.cells]

    def interior_edges(self) -> list[SubdivisionEdge]:
        return [e for e in self.edges if not e.is_boundary]

    def boundary_edges(self) -> list[SubdivisionEdge]:
        return [e for e in self.edges if e.is_boundary]


def _plane(P: LiftedPoint, Q: LiftedPoint, R: LiftedPoint):
    """Affine ``h(m) = a.m + beta`` through three lifted points."""
    d1 = (Q.m[0] - P.m[0], Q.m[1] - P.m[1])
    d2 = (R.m[0] - P.m[0], R.m[1] - P.m[1])
    det = d1[0] * d2[1] - d1[1] * d2[0]
    h1, h2 = Q.w - P.w, R.w - P.w
    a0 = Fraction(h1 * d2[1] - h2 * d1[1], det)
    a1 = Fraction(d1[0] * h2 - d2[0] * h1, det)
    beta = P.w - a0 * P.m[0] - a1 * P.m[1]
    return (a0, a1), beta


def _value(plane, m) -> Fraction:
    (a0, a1), beta = plane
    return a0 * m[0] + a1 * m[1] + beta


def _normalize(points) -> tuple[LiftedPoint, ...]:
    pts = tuple(LiftedPoint((int(m[0]), int(m[1])), Fraction(w)) for m, w in points)
    if len(pts) < 2:
        raise MotivicError("a subdivision needs at least two points")
    seen = set()
    for p in pts:
        if p.m in seen:
            raise MotivicError(f"repeated exponent {p.m}")
        seen.add(p.m)
    return pts


def regular_subdivision(points: Sequence[tuple[Sequence[int], object]]) -> RegularSubdivision:
    """Subdivision of ``conv(m)`` induced by the lower hull of ``(m, w)``.

    Collinear input gives a one-dimensional subdivision with ``degenerate``
    set; its pieces are reported as edges and there are no 2-cells.
    """
    pts = _normalize(points)
    hull = convex_hull(p.m for p in pts)
    if len(hull) < 3:
        return _subdivide_line(pts)

    index = {p.m: k for k, p in enumerate(pts)}

    def pivot(p: int, q: int):
        """Lower face on the left of the directed lower edge p -> q."""
        P, Q = pts[p], pts[q]
        best = None
        for k, R in enumerate(pts):
            if cross(P.m, Q.m, R.m) <= 0:
                continue
            if best is None or R.w < _value(_plane(P, Q, pts[best]), R.m):
                best = k
        plane = _plane(P, Q, pts[best])
        support = tuple(k for k, R in enumerate(pts) if R.w == _value(plane, R.m))
        return plane, support

    # first lower edge: along the boundary edge hull[0] -> hull[1]
    h0, h1 = hull[0], hull[1]
    on_edge = [
        k for k, R in enumerate(pts)
        if R.m != h0 and cross(h0, h1, R.m) == 0
        and (R.m[0] - h0[0]) * (h1[0] - h0[0]) + (R.m[1] - h0[1]) * (h1[1] - h0[1]) > 0
    ]
    p0 = index[h0]

    def slope_key(k):
        t = lattice_length(h0, pts[k].m)
        return (Fraction(pts[k].w - pts[p0].w, t), -t)

    q0 = min(on_edge, key=slope_key)

    cells: list[SubdivisionCell] = []
    by_support: dict[tuple[int, ...], int] = {}
    edges: dict[tuple[Point, Point], dict] = {}
    queue = [(p0, q0)]
    while queue:
        p, q = queue.pop()
        plane, support = pivot(p, q)
        if support in by_support:
            continue
        verts = tuple(convex_hull(pts[k].m for k in support))
        cid = len(cells)
        by_support[support] = cid
        cells.append(SubdivisionCell(verts, support, plane[0], plane[1]))
        for k in range(len(verts)):
            a, b = verts[k], verts[(k + 1) % len(verts)]
            key = (a, b) if a < b else (b, a)
            rec = edges.setdefault(
                key,
                {
                    "support": tuple(
                        j for j in support
                        if cross(a, b, pts[j].m) == 0 and _between(a, b, pts[j].m)
                    ),
                    "cells": [],
                },
            )
            rec["cells"].append(cid)
            if any(cross(a, b, R.m) < 0 for R in pts):
                queue.append((index[b], index[a]))

    # canonical order: cells by sorted vertex lists
    order = sorted(range(len(cells)), key=lambda c: sorted(cells[c].vertices))
    renum = {old: new for new, old in enumerate(order)}
    cells_sorted = tuple(cells[old] for old in order)
    edge_list = tuple(
        SubdivisionEdge(key, rec["support"], tuple(sorted(renum[c] for c in set(rec["cells"]))))
        for key, rec in sorted(edges.items())
    )
    result = RegularSubdivision(pts, cells_sorted, edge_list, degenerate=False)
    _check_tiling(result, hull)
    return result


def _between(a, b, m) -> bool:
    return min(a[0], b[0]) <= m[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= m[1] <= max(a[1], b[1])


def _check_tiling(sub: RegularSubdivision, hull) -> None:
    total = LatticePolygon(tuple(hull)).area()
    if sum(c.polygon.area() for c in sub.cells) != total:
        raise InvariantViolation("subdivision cells do not tile the Newton polygon")
    for e in sub.edges:
        if len(e.cells) not in (1, 2):
            raise InvariantViolation(f"edge {e.endpoints} bounds {len(e.cells)} cells")
        on_boundary = all(cross(e.endpoints[0], e.endpoints[1], p.m) >= 0 for p in sub.points) or all(
            cross(e.endpoints[0], e.endpoints[1], p.m) <= 0 for p in sub.points
        )
        if on_boundary != (len(e.cells) == 1):
            raise InvariantViolation(f"edge {e.endpoints} has inconsistent cell count")


def _subdivide_line(pts: tuple[LiftedPoint, ...]) -> RegularSubdivision:
    ordered = sorted(range(len(pts)), key=lambda k: pts[k].m)
    first, last = pts[ordered[0]].m, pts[ordered[-1]].m
    dx, dy = last[0] - first[0], last[1] - first[1]
    g = gcd(dx, dy)
    d = (dx // g, dy // g)

    def t(k):
        m = pts[k].m
        return (m[0] - first[0]) // d[0] if d[0] else (m[1] - first[1]) // d[1]

    lower: list[int] = []
    for k in ordered:
        while len(lower) >= 2:
            a, b = lower[-2], lower[-1]
            # drop b if it is not strictly below the chord a -> k
            lhs = (pts[b].w - pts[a].w) * (t(k) - t(a))
            rhs = (pts[k].w - pts[a].w) * (t(b) - t(a))
            if lhs >= rhs:
                lower.pop()
            else:
                break
        lower.append(k)
    edges = []
    for a, b in zip(lower, lower[1:]):
        support = tuple(
            sorted(
                k for k in range(len(pts))
                if t(a) <= t(k) <= t(b)
                and (pts[k].w - pts[a].w) * (t(b) - t(a)) == (pts[b].w - pts[a].w) * (t(k) - t(a))
            )
        )
        edges.append(SubdivisionEdge((pts[a].m, pts[b].m), support, ()))
    return RegularSubdivision(pts, (), tuple(edges), degenerate=True)
