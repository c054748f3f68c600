"""Formal Theta-class algebra for classes of semialgebraic sets.

A :class:`VFClass` is a free integer combination of products
``Theta(X, n) * Theta(Gamma, m)``: ``X`` is a variety class (stored through
its E-polynomial) tagged with a dimension bound ``n``, and ``Gamma`` is a
rational polyhedral cell in ``R^m``. No relations are imposed; classes are
compared through :func:`vol`, which sends

* ``Theta(X, n)`` to ``[X]``,
* ``Theta(Gamma, m)`` to ``chi'(Gamma) * (L - 1)**m``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import AmbientDimensionError, DimensionBoundError, SchemaError
from .motivic_ring import MotivicClass, torus_class
from .polyhedral import Cell, QPolyhedron, chi_prime

__all__ = [
    "VFTerm",
    "VFClass",
    "StratifiedSpecialFiber",
    "theta_var",
    "theta_poly",
    "vf_add",
    "vf_mul",
    "vol",
    "semistable_class",
    "semistable_volume",
]


@dataclass(frozen=True)
class VFTerm:
    """``coeff * Theta(var, var_dim) * Theta(cells[0] x cells[1] x ..., poly_dim)``.

    The polyhedral part is kept as a tuple of factors; their Cartesian
    product is the cell. The empty tuple is the point of ``R^0``.
    """

    coeff: int
    var: MotivicClass
    var_dim: int
    cells: tuple[Cell, ...] = ()

    @property
    def poly_dim(self) -> int:
        return sum(c.ambient_dim for c in self.cells)

    @property
    def poly_part(self) -> list[Cell]:
        """The product cell, split into disjoint cells when needed."""
        pieces = [Cell.point(0)]
        for c in self.cells:
            pieces = [q for p in pieces for q in p.product(c)]
        return pieces

    def key(self):
        return (self.var, self.var_dim, tuple(c.key() for c in self.cells))

    def volume(self) -> MotivicClass:
        chi = 1
        for c in self.cells:
            chi *= chi_prime([c], check_disjoint=False)
            if not chi:
                return MotivicClass()
        return self.coeff * chi * self.var * torus_class(self.poly_dim)


def _merge(terms: Iterable[VFTerm]) -> tuple[VFTerm, ...]:
    acc: dict = {}
    order = []
    for t in terms:
        k = t.key()
        if k in acc:
            acc[k] = VFTerm(acc[k].coeff + t.coeff, t.var, t.var_dim, t.cells)
        else:
            acc[k] = t
            order.append(k)
    return tuple(acc[k] for k in order if acc[k].coeff and not acc[k].var.is_zero())


@dataclass(frozen=True)
class VFClass:
    terms: tuple[VFTerm, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "terms", _merge(self.terms))

    @classmethod
    def zero(cls) -> "VFClass":
        return cls(())

    @classmethod
    def one(cls) -> "VFClass":
        return theta_var(MotivicClass.coerce(1), 0)

    def __add__(self, other):
        if not isinstance(other, VFClass):
            return NotImplemented
        return VFClass(self.terms + other.terms)

    def __neg__(self):
        return VFClass(tuple(VFTerm(-t.coeff, t.var, t.var_dim, t.cells) for t in self.terms))

    def __sub__(self, other):
        if not isinstance(other, VFClass):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return VFClass(tuple(VFTerm(other * t.coeff, t.var, t.var_dim, t.cells) for t in self.terms))
        if not isinstance(other, VFClass):
            return NotImplemented
        return VFClass(
            tuple(
                VFTerm(a.coeff * b.coeff, a.var * b.var, a.var_dim + b.var_dim, a.cells + b.cells)
                for a in self.terms
                for b in other.terms
            )
        )

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def to_json(self) -> dict:
        return {
            "terms": [
                {
                    "coeff": str(t.coeff),
                    "var": t.var.to_records(),
                    "var_dim": t.var_dim,
                    "cells": [c.to_json() for c in t.cells],
                }
                for t in self.terms
            ]
        }

    @classmethod
    def from_json(cls, doc, field: str = "vfclass") -> "VFClass":
        if not isinstance(doc, dict) or not isinstance(doc.get("terms"), list):
            raise SchemaError(field, "expected an object with a 'terms' list")
        out = []
        for k, rec in enumerate(doc["terms"]):
            where = f"{field}.terms[{k}]"
            if not isinstance(rec, dict):
                raise SchemaError(where, "expected an object")
            coeff = rec.get("coeff", "1")
            try:
                coeff = int(coeff)
            except (TypeError, ValueError):
                raise SchemaError(where + ".coeff", "must be an integer") from None
            var = MotivicClass.from_records(rec.get("var", [{"i": 0, "j": 0, "c": "1"}]), where + ".var")
            var_dim = rec.get("var_dim", 0)
            if not isinstance(var_dim, int) or var_dim < 0:
                raise SchemaError(where + ".var_dim", "must be a nonnegative integer")
            cells_doc = rec.get("cells", [])
            if not isinstance(cells_doc, list):
                raise SchemaError(where + ".cells", "expected a list")
            cells = tuple(Cell.from_json(c, f"{where}.cells[{n}]") for n, c in enumerate(cells_doc))
            try:
                theta_var(var, var_dim)
            except DimensionBoundError as exc:
                raise SchemaError(where + ".var_dim", str(exc)) from None
            if var.is_zero():
                continue
            out.append(VFTerm(coeff, var, var_dim, cells))
        return cls(tuple(out))


def theta_var(c, n: int) -> VFClass:
    """``Theta(X, n)`` for a variety with class ``c`` and dimension at most ``n``."""
    c = MotivicClass.coerce(c)
    if n < 0:
        raise DimensionBoundError("dimension must be nonnegative")
    if c.degree() > 2 * n:
        raise DimensionBoundError(
            f"class {c} has degree {c.degree()} > 2*{n}; not a variety of dimension <= {n}"
        )
    return VFClass((VFTerm(1, c, n, ()),))


def theta_poly(gamma, n: int) -> VFClass:
    """``Theta(Gamma, n)``: class of the tropical preimage of a cell in ``R^n``."""
    if isinstance(gamma, QPolyhedron):
        gamma = Cell(gamma, open=False)
    if gamma.ambient_dim != n:
        raise AmbientDimensionError(f"cell lives in R^{gamma.ambient_dim}, expected R^{n}")
    if n == 0 and gamma.support.is_empty():
        return VFClass.zero()
    cells = (gamma,) if n else ()
    return VFClass((VFTerm(1, MotivicClass.coerce(1), 0, cells),))


def vf_add(a: VFClass, b: VFClass) -> VFClass:
    return a + b


def vf_mul(a: VFClass, b: VFClass) -> VFClass:
    return a * b


def vol(x: VFClass) -> MotivicClass:
    """Motivic volume, term by term."""
    total = MotivicClass()
    for t in x.terms:
        total = total + t.volume()
    return total


# strictly semistable models ---------------------------------------------------

@dataclass(frozen=True)
class StratifiedSpecialFiber:
    """Strata classes ``[E_J^o]`` of a strictly semistable special fiber.

    ``strata`` maps nonempty 1-based index sets ``J`` to classes; missing
    sets are empty strata.
    """

    d: int
    components: int
    strata: Mapping[frozenset, MotivicClass]

    def __post_init__(self):
        clean = {}
        if self.d < 0:
            raise DimensionBoundError("relative dimension must be nonnegative")
        for J, c in self.strata.items():
            J = frozenset(int(j) for j in J)
            if not J or not all(1 <= j <= self.components for j in J):
                raise SchemaError("strata.J", f"{sorted(J)} is not a nonempty subset of 1..{self.components}")
            c = MotivicClass.coerce(c)
            if len(J) - 1 > self.d:
                raise DimensionBoundError(f"stratum {sorted(J)} needs d >= {len(J) - 1}")
            bound = 2 * (self.d - len(J) + 1)
            if c.degree() > bound:
                raise DimensionBoundError(
                    f"stratum {sorted(J)}: class {c} exceeds degree bound {bound}"
                )
            if not c.is_zero():
                clean[J] = c
        object.__setattr__(self, "strata", clean)

    def ordered(self) -> list[tuple[frozenset, MotivicClass]]:
        return sorted(self.strata.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))

    @classmethod
    def from_json(cls, doc) -> "StratifiedSpecialFiber":
        if not isinstance(doc, dict):
            raise SchemaError("$", "expected an object")
        for key in ("d", "components", "strata"):
            if key not in doc:
                raise SchemaError(key, "missing")
        d, r = doc["d"], doc["components"]
        if not isinstance(d, int) or isinstance(d, bool) or d < 0:
            raise SchemaError("d", "must be a nonnegative integer")
        if not isinstance(r, int) or isinstance(r, bool) or r < 1:
            raise SchemaError("components", "must be a positive integer")
        if not isinstance(doc["strata"], list):
            raise SchemaError("strata", "expected a list")
        strata: dict[frozenset, MotivicClass] = {}
        for k, rec in enumerate(doc["strata"]):
            where = f"strata[{k}]"
            if not isinstance(rec, dict) or set(rec) != {"J", "class"}:
                raise SchemaError(where, "expected keys J, class")
            J = rec["J"]
            if (
                not isinstance(J, list)
                or not J
                or not all(isinstance(j, int) and not isinstance(j, bool) for j in J)
                or J != sorted(set(J))
            ):
                raise SchemaError(where + ".J", "must be a sorted list of distinct 1-based indices")
            if not all(1 <= j <= r for j in J):
                raise SchemaError(where + ".J", f"indices must lie in 1..{r}")
            if frozenset(J) in strata:
                raise SchemaError(where + ".J", f"duplicate stratum {J}")
            strata[frozenset(J)] = MotivicClass.from_records(rec["class"], where + ".class")
        try:
            return cls(d, r, strata)
        except DimensionBoundError as exc:
            raise SchemaError("strata", str(exc)) from None


def semistable_class(F: StratifiedSpecialFiber) -> VFClass:
    """Alternating sum of ``Theta(E_J^o, d-|J|+1) * Theta(Delta_0, |J|-1)``."""
    total = VFClass.zero()
    for J, c in F.ordered():
        k = len(J) - 1
        term = theta_var(c, F.d - k) * theta_poly(Cell.point(k), k)
        total = total + (-1) ** k * term
    return total


def semistable_volume(F: StratifiedSpecialFiber) -> MotivicClass:
    """``sum_J [E_J^o] (1 - L)**(|J|-1)``."""
    one_minus_L = 1 - MotivicClass({(1, 1): 1})
    total = MotivicClass()
    for J, c in F.ordered():
        total = total + c * one_minus_L ** (len(J) - 1)
    return total
