"""Rational polyhedra in H-representation, their faces, and chi'.

A :class:`QPolyhedron` is ``{x in R^n : a.x <= c}`` for finitely many
integer normals ``a`` and rational bounds ``c``. Relative openness lives on
:class:`Cell`, never on the polyhedron.

chi' is the additive invariant on Boolean combinations of polyhedra that is
1 on every closed polyhedron. On a relatively open cell it equals
``(-1)**(dim - lineality)`` when the recession cone is a linear subspace
(the cell is a polytope plus a subspace) and 0 otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from ..errors import (
    AmbientDimensionError,
    DimensionLimitError,
    EmptyPolyhedronError,
    OverlapError,
    SchemaError,
)
from ..rational import fmt_q, parse_q
from . import lp

MAX_FACE_DIM = 3

Ineq = tuple[tuple[int, ...], Fraction]


def rank(rows: Iterable[Sequence]) -> int:
    """Rank of a rational matrix by exact elimination."""
    mat = [[Fraction(x) for x in r] for r in rows]
    if not mat:
        return 0
    r = 0
    ncols = len(mat[0])
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        for i in range(r + 1, len(mat)):
            f = mat[i][col] / mat[r][col]
            if f:
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    return r


class QPolyhedron:
    """Closed rational polyhedron ``{x : a.x <= c}`` in ``R^dim``."""

    def __init__(self, dim: int, ineqs: Iterable[tuple[Sequence[int], object]] = ()):
        if dim < 0:
            raise ValueError("ambient dimension must be nonnegative")
        self.dim = dim
        rows: list[Ineq] = []
        seen = set()
        for a, c in ineqs:
            a = tuple(int(x) for x in a)
            if len(a) != dim:
                raise AmbientDimensionError(f"normal {a} does not live in R^{dim}")
            row = (a, Fraction(c))
            if row not in seen:
                seen.add(row)
                rows.append(row)
        self.ineqs: tuple[Ineq, ...] = tuple(rows)

    # constructors ---------------------------------------------------------
    @classmethod
    def point(cls, coords: Sequence) -> "QPolyhedron":
        n = len(coords)
        rows = []
        for k, x in enumerate(coords):
            e = [0] * n
            e[k] = 1
            rows.append((tuple(e), Fraction(x)))
            rows.append((tuple(-v for v in e), -Fraction(x)))
        return cls(n, rows)

    @classmethod
    def interval(cls, lo=None, hi=None) -> "QPolyhedron":
        """Closed interval in R; ``None`` marks an infinite end."""
        rows = []
        if lo is not None:
            rows.append(((-1,), -Fraction(lo)))
        if hi is not None:
            rows.append(((1,), Fraction(hi)))
        return cls(1, rows)

    @classmethod
    def box(cls, lows: Sequence, highs: Sequence) -> "QPolyhedron":
        n = len(lows)
        rows = []
        for k in range(n):
            e = [0] * n
            e[k] = 1
            rows.append((tuple(e), Fraction(highs[k])))
            rows.append((tuple(-v for v in e), -Fraction(lows[k])))
        return cls(n, rows)

    def with_equalities(self, eqs: Iterable[tuple[Sequence[int], object]]) -> "QPolyhedron":
        extra = []
        for a, c in eqs:
            extra.append((tuple(a), Fraction(c)))
            extra.append((tuple(-x for x in a), -Fraction(c)))
        return QPolyhedron(self.dim, list(self.ineqs) + extra)

    def intersect(self, other: "QPolyhedron") -> "QPolyhedron":
        if other.dim != self.dim:
            raise AmbientDimensionError(f"R^{self.dim} vs R^{other.dim}")
        return QPolyhedron(self.dim, self.ineqs + other.ineqs)

    def product(self, other: "QPolyhedron") -> "QPolyhedron":
        n, m = self.dim, other.dim
        rows = [(a + (0,) * m, c) for a, c in self.ineqs]
        rows += [((0,) * n + a, c) for a, c in other.ineqs]
        return QPolyhedron(n + m, rows)

    def translate(self, b: Sequence) -> "QPolyhedron":
        b = [Fraction(x) for x in b]
        return QPolyhedron(
            self.dim, [(a, c + sum(ai * bi for ai, bi in zip(a, b))) for a, c in self.ineqs]
        )

    # LP-backed queries ---------------------------------------------------------
    def _A(self):
        return [a for a, _ in self.ineqs]

    def _b(self):
        return [c for _, c in self.ineqs]

    @cached_property
    def sample_point(self) -> tuple[Fraction, ...] | None:
        if not self.ineqs:
            return tuple(Fraction(0) for _ in range(self.dim))
        return lp.feasible_point(self._A(), self._b(), n=self.dim)

    def is_empty(self) -> bool:
        return self.sample_point is None

    def _require_nonempty(self):
        if self.is_empty():
            raise EmptyPolyhedronError("polyhedron is empty")

    def minimize(self, a: Sequence) -> lp.LPResult:
        res = lp.maximize([-x for x in a], self._A(), self._b())
        if res.status == lp.OPTIMAL:
            return lp.LPResult(res.status, -res.value, res.x)
        return res

    def maximize(self, a: Sequence) -> lp.LPResult:
        return lp.maximize(list(a), self._A(), self._b())

    def _max_slacks(self, rhs, undecided: list[int]) -> lp.LPResult:
        """Maximize the sum of slacks t_i in [0, 1] of the undecided rows."""
        n, k = self.dim, len(undecided)
        col = {i: t for t, i in enumerate(undecided)}
        A, b = [], []
        for i, (a, _) in enumerate(self.ineqs):
            row = list(a) + [0] * k
            if i in col:
                row[n + col[i]] = 1
            A.append(row)
            b.append(rhs[i])
        for t in range(k):
            e = [0] * (n + k)
            e[n + t] = 1
            A.append(e)
            b.append(1)
            A.append([-x for x in e])
            b.append(0)
        return lp.maximize([0] * n + [1] * k, A, b)

    @cached_property
    def implicit_equalities(self) -> frozenset[int]:
        """Indices of inequalities that hold with equality on all of P."""
        self._require_nonempty()
        undecided = list(range(len(self.ineqs)))
        # rows with positive slack at an optimum are not implicit; repeat
        # until no remaining row can be made strict
        while undecided:
            res = self._max_slacks(self._b(), undecided)
            if res.value == 0:
                break
            n = self.dim
            undecided = [i for t, i in enumerate(undecided) if res.x[n + t] == 0]
        return frozenset(undecided)

    @cached_property
    def dimension(self) -> int:
        self._require_nonempty()
        return self.dim - rank(self.ineqs[i][0] for i in self.implicit_equalities)

    @cached_property
    def lineality_dim(self) -> int:
        return self.dim - rank(self._A())

    @cached_property
    def bounded(self) -> bool:
        self._require_nonempty()
        return self.lineality_dim == 0 and self.recession_is_linear

    @cached_property
    def recession_is_linear(self) -> bool:
        """True when the recession cone equals the lineality space."""
        self._require_nonempty()
        if not self.ineqs:
            return True
        res = self._max_slacks([0] * len(self.ineqs), list(range(len(self.ineqs))))
        return res.value == 0

    def contains(self, other: "QPolyhedron") -> bool:
        """``other`` is a subset of ``self``."""
        if other.is_empty():
            return True
        for a, c in self.ineqs:
            res = other.maximize(a)
            if res.status == lp.UNBOUNDED or res.value > c:
                return False
        return True

    def same_set(self, other: "QPolyhedron") -> bool:
        return self.dim == other.dim and self.contains(other) and other.contains(self)

    def relint_contains_point(self, x: Sequence) -> bool:
        eq = self.implicit_equalities
        for i, (a, c) in enumerate(self.ineqs):
            val = sum(ai * Fraction(xi) for ai, xi in zip(a, x))
            if (i in eq and val != c) or (i not in eq and val >= c):
                return False
        return True

    # serialization ---------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "ineqs": [{"a": list(a), "c": fmt_q(c)} for a, c in self.ineqs],
        }

    @classmethod
    def from_json(cls, doc, field: str = "polyhedron") -> "QPolyhedron":
        if not isinstance(doc, dict) or "dim" not in doc or "ineqs" not in doc:
            raise SchemaError(field, "expected keys dim, ineqs")
        n = doc["dim"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise SchemaError(field + ".dim", "must be a nonnegative integer")
        rows = []
        for k, rec in enumerate(doc["ineqs"]):
            where = f"{field}.ineqs[{k}]"
            if not isinstance(rec, dict) or set(rec) != {"a", "c"}:
                raise SchemaError(where, "expected keys a, c")
            a = rec["a"]
            if (
                not isinstance(a, list)
                or len(a) != n
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in a)
            ):
                raise SchemaError(where + ".a", f"expected {n} integers")
            rows.append((tuple(a), parse_q(rec["c"], where + ".c")))
        return cls(n, rows)

    def __repr__(self):
        body = ", ".join(
            "{}x<={}".format(list(a), c) for a, c in self.ineqs
        )
        return f"QPolyhedron({self.dim}; {body})"


def dimension(P: QPolyhedron) -> int:
    return P.dimension


def is_bounded(P: QPolyhedron) -> bool:
    return P.bounded


def faces(P: QPolyhedron) -> list[QPolyhedron]:
    """All nonempty faces of P, P included, in H-representation.

    Faces come out ordered by decreasing dimension, then by their sets of
    tight constraints.
    """
    if P.dim > MAX_FACE_DIM:
        raise DimensionLimitError(
            f"face enumeration supports ambient dimension <= {MAX_FACE_DIM}, got {P.dim}"
        )
    P._require_nonempty()

    def face_of(tight: frozenset[int]) -> QPolyhedron:
        return P.with_equalities(P.ineqs[i] for i in sorted(tight))

    m = len(P.ineqs)

    def closure(F: QPolyhedron) -> frozenset[int]:
        # with_equalities keeps P's rows first, in order
        return frozenset(i for i in F.implicit_equalities if i < m)

    found: dict[frozenset[int], QPolyhedron] = {}
    top = P.implicit_equalities
    found[top] = face_of(top)
    stack = [top]
    while stack:
        tight = stack.pop()
        F = found[tight]
        d = F.dimension
        if d == 0:
            continue
        for i in range(len(P.ineqs)):
            if i in tight:
                continue
            G = face_of(tight | {i})
            if G.is_empty():
                continue
            key = closure(G)
            if key in found:
                continue
            if key != tight | {i}:
                G = face_of(key)
            if G.dimension == d - 1:
                found[key] = G
                stack.append(key)
    order = sorted(found, key=lambda k: (-found[k].dimension, sorted(k)))
    return [found[k] for k in order]


@dataclass(frozen=True)
class Cell:
    """A polyhedron, or its relative interior when ``open`` is set."""

    support: QPolyhedron
    open: bool = False

    @property
    def ambient_dim(self) -> int:
        return self.support.dim

    @property
    def dimension(self) -> int:
        return self.support.dimension

    @classmethod
    def point(cls, n: int = 0, coords: Sequence | None = None) -> "Cell":
        coords = [0] * n if coords is None else coords
        return cls(QPolyhedron.point(coords), open=False)

    def relatively_open_pieces(self) -> list["Cell"]:
        """Disjoint relatively open cells whose union is this cell."""
        if self.open:
            return [self]
        return [Cell(F, open=True) for F in faces(self.support)]

    def translate(self, b) -> "Cell":
        return Cell(self.support.translate(b), self.open)

    def product(self, other: "Cell") -> list["Cell"]:
        """Cartesian product as a list of disjoint cells."""
        if not self.open and not other.open:
            return [Cell(self.support.product(other.support), open=False)]
        left = self._as_open_pieces()
        right = other._as_open_pieces()
        return [Cell(a.support.product(b.support), open=True) for a in left for b in right]

    def _as_open_pieces(self) -> list["Cell"]:
        # a point is its own relative interior
        if not self.open and self.support.dimension == 0:
            return [Cell(self.support, open=True)]
        return self.relatively_open_pieces()

    def key(self):
        return (self.support.dim, self.support.ineqs, self.open)

    def to_json(self) -> dict:
        doc = self.support.to_json()
        doc["open"] = self.open
        return doc

    @classmethod
    def from_json(cls, doc, field: str = "cell") -> "Cell":
        if not isinstance(doc, dict):
            raise SchemaError(field, "expected an object")
        doc = dict(doc)
        is_open = doc.pop("open", False)
        if not isinstance(is_open, bool):
            raise SchemaError(field + ".open", "must be a boolean")
        return cls(QPolyhedron.from_json(doc, field), open=is_open)


def relint_chi(P: QPolyhedron) -> int:
    """chi' of the relative interior of P."""
    if P.is_empty():
        return 0
    if not P.recession_is_linear:
        return 0
    return (-1) ** (P.dimension - P.lineality_dim)


def relints_intersect(P: QPolyhedron, Q: QPolyhedron) -> bool:
    if P.dim != Q.dim:
        raise AmbientDimensionError(f"R^{P.dim} vs R^{Q.dim}")
    if P.is_empty() or Q.is_empty():
        return False
    n = P.dim
    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for R in (P, Q):
        eq = R.implicit_equalities
        for i, (a, c) in enumerate(R.ineqs):
            if i in eq:
                A_eq.append(list(a) + [0])
                b_eq.append(c)
            else:
                A_ub.append(list(a) + [1])
                b_ub.append(c)
    A_ub.append([0] * n + [1])
    b_ub.append(1)
    res = lp.maximize([0] * n + [1], A_ub, b_ub, A_eq, b_eq)
    return res.status == lp.OPTIMAL and res.value > 0


def chi_prime(cells: Sequence[Cell], check_disjoint: bool = True) -> int:
    """chi' of the disjoint union of ``cells``.

    Closed cells are decomposed into the relative interiors of their faces.
    """
    pieces: list[tuple[int, QPolyhedron]] = []
    dims = {c.ambient_dim for c in cells}
    if len(dims) > 1:
        raise AmbientDimensionError(f"cells live in different spaces: {sorted(dims)}")
    for k, cell in enumerate(cells):
        if cell.support.is_empty():
            continue
        if cell.open:
            pieces.append((k, cell.support))
        elif cell.support.dim <= MAX_FACE_DIM:
            pieces.extend((k, F) for F in faces(cell.support))
        else:
            # no face enumeration available; a closed polyhedron counts 1
            pieces.append((k, None))
    if check_disjoint:
        concrete = [(k, P) for k, P in pieces if P is not None]
        for (k1, P1), (k2, P2) in combinations(concrete, 2):
            if k1 != k2 and relints_intersect(P1, P2):
                raise OverlapError(f"cells {k1} and {k2} overlap")
    return sum(1 if P is None else relint_chi(P) for _, P in pieces)


class CellComplex:
    """Closed cells closed under taking faces, meeting along common faces."""

    def __init__(self, cells: Sequence[QPolyhedron], close: bool = True, check: bool = True):
        dims = {c.dim for c in cells}
        if len(dims) > 1:
            raise AmbientDimensionError(f"cells live in different spaces: {sorted(dims)}")
        self.cells: list[QPolyhedron] = []
        for c in cells:
            if c.is_empty():
                raise EmptyPolyhedronError("empty cell in complex")
            self._add(c)
        if close:
            for c in list(self.cells):
                for F in faces(c):
                    self._add(F)
        self.cells.sort(key=lambda c: c.dimension)
        self.face_of: dict[int, list[int]] = {
            i: [j for j, d in enumerate(self.cells) if j != i and d.contains(c)]
            for i, c in enumerate(self.cells)
        }
        if check:
            self._check()

    def _index(self, P: QPolyhedron) -> int | None:
        return next((i for i, c in enumerate(self.cells) if c.same_set(P)), None)

    def _add(self, P: QPolyhedron) -> None:
        if self._index(P) is None:
            self.cells.append(P)

    def _check(self) -> None:
        for i, c in enumerate(self.cells):
            for F in faces(c):
                if self._index(F) is None:
                    raise OverlapError(f"a face of cell {i} is not a cell of the complex")
        for i, j in combinations(range(len(self.cells)), 2):
            meet = self.cells[i].intersect(self.cells[j])
            if meet.is_empty():
                continue
            k = self._index(meet)
            if k is None or not any(self.cells[k].same_set(F) for F in faces(self.cells[i])):
                raise OverlapError(f"cells {i} and {j} do not meet in a common face")

    def open_cells(self) -> list[Cell]:
        return [Cell(c, open=True) for c in self.cells]

    def chi_prime(self) -> int:
        return chi_prime(self.open_cells(), check_disjoint=False)
