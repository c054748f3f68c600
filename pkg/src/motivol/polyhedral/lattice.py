"""Lattice polygons and their lattice-point counts."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from ..errors import InvariantViolation, MotivicError

Point = tuple[int, int]


def cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Iterable[Sequence]) -> list:
    """Counterclockwise hull vertices without collinear points (Andrew's chain)."""
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        return hull[:1]
    return hull


def lattice_length(p: Point, q: Point) -> int:
    return gcd(q[0] - p[0], q[1] - p[1])


@dataclass(frozen=True)
class LatticePolygon:
    """Convex lattice polygon; vertices counterclockwise, none redundant."""

    vertices: tuple[Point, ...]

    def __post_init__(self):
        vs = tuple((int(x), int(y)) for x, y in self.vertices)
        object.__setattr__(self, "vertices", vs)
        n = len(vs)
        if n < 3:
            raise MotivicError("a lattice polygon needs at least 3 vertices")
        for k in range(n):
            if cross(vs[k], vs[(k + 1) % n], vs[(k + 2) % n]) <= 0:
                raise MotivicError(
                    f"vertices not in strictly convex counterclockwise position at {vs[(k + 1) % n]}"
                )

    @classmethod
    def from_points(cls, points: Iterable[Sequence]) -> "LatticePolygon":
        return cls(tuple(convex_hull(points)))

    def area(self) -> Fraction:
        vs = self.vertices
        twice = sum(
            vs[k][0] * vs[(k + 1) % len(vs)][1] - vs[(k + 1) % len(vs)][0] * vs[k][1]
            for k in range(len(vs))
        )
        return Fraction(twice, 2)

    def edges(self) -> list[tuple[Point, Point]]:
        vs = self.vertices
        return [(vs[k], vs[(k + 1) % len(vs)]) for k in range(len(vs))]

    def locate(self, p: Sequence) -> int:
        """1 strictly inside, 0 on the boundary, -1 outside."""
        on_edge = False
        for a, b in self.edges():
            c = cross(a, b, p)
            if c < 0:
                return -1
            if c == 0:
                on_edge = True
        return 0 if on_edge else 1

    def lattice_points(self) -> list[Point]:
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return [
            (x, y)
            for x in range(min(xs), max(xs) + 1)
            for y in range(min(ys), max(ys) + 1)
            if self.locate((x, y)) >= 0
        ]


def lattice_counts(poly: LatticePolygon) -> tuple[int, int, Fraction]:
    """(interior points, boundary points, area) by direct enumeration."""
    xs = [v[0] for v in poly.vertices]
    ys = [v[1] for v in poly.vertices]
    interior = boundary = 0
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            where = poly.locate((x, y))
            if where == 1:
                interior += 1
            elif where == 0:
                boundary += 1
    area = poly.area()
    if area != interior + Fraction(boundary, 2) - 1:
        raise InvariantViolation(f"Pick's identity fails for {poly.vertices}")
    return interior, boundary, area
