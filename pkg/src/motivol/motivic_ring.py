"""Motivic classes through their Hodge-Deligne (E-polynomial) realization.

A class in the Grothendieck ring of varieties is stored as an integer
polynomial in two variables ``u`` and ``v``; the Lefschetz class is ``uv``.
The chi_{-y} genus substitutes ``u -> y, v -> 1`` and the Euler
characteristic evaluates at ``u = v = 1``.

    >>> L = lefschetz()
    >>> chi_y(projective_space_class(2) + 9 * L)
    LaurentY('y^2 + 10*y + 1')
    >>> euler(projective_space_class(2) + 9 * L)
    12
"""
from __future__ import annotations

from typing import Iterable, Mapping

from .errors import SchemaError

__all__ = [
    "MotivicClass",
    "LaurentY",
    "lefschetz",
    "torus_class",
    "projective_space_class",
    "smooth_proper_curve_class",
    "chi_y",
    "euler",
]


def _clean(terms: Iterable[tuple[object, int]]) -> dict:
    out: dict = {}
    for key, c in terms:
        c = int(c)
        if c:
            out[key] = out.get(key, 0) + c
            if not out[key]:
                del out[key]
    return out


class MotivicClass:
    """Integer polynomial in ``u, v``; immutable.

    Integers are accepted wherever a class is expected and are read as
    multiples of the class of a point.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        items = []
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent ({i}, {j})")
            items.append(((int(i), int(j)), c))
        self._terms = _clean(items)
        self._hash = None

    @classmethod
    def coerce(cls, x) -> "MotivicClass":
        if isinstance(x, MotivicClass):
            return x
        if isinstance(x, int):
            return cls({(0, 0): x})
        raise TypeError(f"cannot interpret {x!r} as a motivic class")

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def coefficient(self, i: int, j: int) -> int:
        return self._terms.get((i, j), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total (u, v)-degree; -1 for the zero class."""
        return max((i + j for i, j in self._terms), default=-1)

    def is_symmetric(self) -> bool:
        return all(self._terms.get((j, i), 0) == c for (i, j), c in self._terms.items())

    def evaluate(self, u, v):
        return sum(c * u**i * v**j for (i, j), c in self._terms.items())

    # ring structure -------------------------------------------------
    def __add__(self, other):
        try:
            other = MotivicClass.coerce(other)
        except TypeError:
            return NotImplemented
        return MotivicClass._raw(_clean(list(self._terms.items()) + list(other._terms.items())))

    __radd__ = __add__

    def __neg__(self):
        return MotivicClass._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = MotivicClass.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = MotivicClass.coerce(other)
        except TypeError:
            return NotImplemented
        prod = []
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                prod.append(((i1 + i2, j1 + j2), c1 * c2))
        return MotivicClass._raw(_clean(prod))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a motivic class")
        result, base = MotivicClass._raw({(0, 0): 1}), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    @classmethod
    def _raw(cls, terms: dict) -> "MotivicClass":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    def __eq__(self, other):
        try:
            other = MotivicClass.coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # text and records -------------------------------------------------
    def __str__(self):
        if not self._terms:
            return "0"
        keys = sorted(self._terms, key=lambda k: (-(k[0] + k[1]), -k[0], -k[1]))
        parts = []
        for i, j in keys:
            c = self._terms[(i, j)]
            mono = "*".join(
                s for s in (_power("u", i), _power("v", j)) if s
            )
            parts.append(_signed(c, mono))
        return _join(parts)

    def __repr__(self):
        return f"MotivicClass('{self}')"

    def to_records(self) -> list[dict]:
        return [
            {"i": i, "j": j, "c": str(c)}
            for (i, j), c in sorted(self._terms.items())
        ]

    @classmethod
    def from_records(cls, records, field: str = "class") -> "MotivicClass":
        if not isinstance(records, list):
            raise SchemaError(field, "expected a list of {i, j, c} records")
        terms: dict[tuple[int, int], int] = {}
        for n, rec in enumerate(records):
            where = f"{field}[{n}]"
            if not isinstance(rec, dict) or set(rec) != {"i", "j", "c"}:
                raise SchemaError(where, "expected keys i, j, c")
            i, j = rec["i"], rec["j"]
            if not (_is_int(i) and _is_int(j)) or i < 0 or j < 0:
                raise SchemaError(where, "exponents must be nonnegative integers")
            terms[(i, j)] = terms.get((i, j), 0) + _parse_int(rec["c"], where + ".c")
        return cls(terms)


class LaurentY:
    """Element of Z[y^(1/2), y^(-1/2)], exponents stored in half-units."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        self._terms = _clean((int(k), c) for k, c in (terms or {}).items())

    @classmethod
    def monomial(cls, exponent, coeff: int = 1) -> "LaurentY":
        """``coeff * y**exponent``; ``exponent`` may be a half-integer Fraction."""
        half = exponent * 2
        if half != int(half):
            raise ValueError(f"exponent {exponent} is not a half-integer")
        return cls({int(half): coeff})

    @classmethod
    def coerce(cls, x) -> "LaurentY":
        if isinstance(x, LaurentY):
            return x
        if isinstance(x, int):
            return cls({0: x})
        raise TypeError(f"cannot interpret {x!r} as a Laurent polynomial")

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_integral(self) -> bool:
        """True when the element lies in Z[y, 1/y]."""
        return all(k % 2 == 0 for k in self._terms)

    def is_polynomial(self) -> bool:
        return self.is_integral() and all(k >= 0 for k in self._terms)

    def at_one(self) -> int:
        return sum(self._terms.values())

    def coefficient(self, exponent) -> int:
        return self._terms.get(int(exponent * 2), 0)

    def __add__(self, other):
        try:
            other = LaurentY.coerce(other)
        except TypeError:
            return NotImplemented
        return LaurentY._raw(_clean(list(self._terms.items()) + list(other._terms.items())))

    __radd__ = __add__

    def __neg__(self):
        return LaurentY._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = LaurentY.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = LaurentY.coerce(other)
        except TypeError:
            return NotImplemented
        prod = [
            (k1 + k2, c1 * c2)
            for k1, c1 in self._terms.items()
            for k2, c2 in other._terms.items()
        ]
        return LaurentY._raw(_clean(prod))

    __rmul__ = __mul__

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    def __eq__(self, other):
        try:
            other = LaurentY.coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for k in sorted(self._terms, reverse=True):
            if k % 2:
                mono = f"y^({k}/2)"
            else:
                mono = _power("y", k // 2) if k >= 0 else f"y^({k // 2})"
            parts.append(_signed(self._terms[k], mono))
        return _join(parts)

    def __repr__(self):
        return f"LaurentY('{self}')"

    def to_records(self) -> list[dict]:
        return [{"half_exp": k, "c": str(c)} for k, c in sorted(self._terms.items())]

    @classmethod
    def from_records(cls, records, field: str = "laurent") -> "LaurentY":
        if not isinstance(records, list):
            raise SchemaError(field, "expected a list of {half_exp, c} records")
        terms: dict[int, int] = {}
        for n, rec in enumerate(records):
            where = f"{field}[{n}]"
            if not isinstance(rec, dict) or set(rec) != {"half_exp", "c"}:
                raise SchemaError(where, "expected keys half_exp, c")
            if not _is_int(rec["half_exp"]):
                raise SchemaError(where, "half_exp must be an integer")
            k = rec["half_exp"]
            terms[k] = terms.get(k, 0) + _parse_int(rec["c"], where + ".c")
        return cls(terms)


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _parse_int(s, field: str) -> int:
    if not isinstance(s, str):
        raise SchemaError(field, "coefficient must be a decimal string")
    try:
        return int(s, 10)
    except ValueError:
        raise SchemaError(field, f"not a decimal integer: {s!r}") from None


def _power(var: str, k: int) -> str:
    if k == 0:
        return ""
    return var if k == 1 else f"{var}^{k}"


def _signed(c: int, mono: str) -> str:
    sign = "-" if c < 0 else "+"
    a = abs(c)
    if not mono:
        body = str(a)
    elif a == 1:
        body = mono
    else:
        body = f"{a}*{mono}"
    return f"{sign} {body}"


def _join(parts: list[str]) -> str:
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


# geometric constructors --------------------------------------------------

def lefschetz() -> MotivicClass:
    """Class of the affine line."""
    return MotivicClass({(1, 1): 1})


def torus_class(n: int) -> MotivicClass:
    if n < 0:
        raise ValueError("torus dimension must be nonnegative")
    return (lefschetz() - 1) ** n


def projective_space_class(n: int) -> MotivicClass:
    if n < 0:
        raise ValueError("projective dimension must be nonnegative")
    return MotivicClass({(k, k): 1 for k in range(n + 1)})


def smooth_proper_curve_class(g: int) -> MotivicClass:
    if g < 0:
        raise ValueError("genus must be nonnegative")
    return MotivicClass({(0, 0): 1, (1, 0): -g, (0, 1): -g, (1, 1): 1})


# realizations ---------------------------------------------------------------

def chi_y(c) -> LaurentY:
    """chi_{-y} genus: ``u -> y``, ``v -> 1``."""
    c = MotivicClass.coerce(c)
    out: dict[int, int] = {}
    for (i, _j), coeff in c.terms.items():
        out[2 * i] = out.get(2 * i, 0) + coeff
    return LaurentY(out)


def euler(c) -> int:
    return sum(MotivicClass.coerce(c).terms.values())
