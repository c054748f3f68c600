"""Motivic Hilbert zeta series and the refined invariants N_i.

With ``P(q) = (1 - q)(1 - qL)`` and ``s = q / P(q)`` the invariants are the
unique ``N_0, N_1, ...`` with

    q^(1-g) Z(q) = sum_i N_i s^(i+1-g),

equivalently ``sum_i N_i s^i = P^(1-g) Z``. Since ``s^i = q^i (1 + O(q))``
they are read off one coefficient at a time. All series are truncated at an
explicit order ``M`` (coefficients of ``q^0 .. q^M``).

The extraction is written over any commutative ring whose elements support
``+``, ``-`` and ``*``, so it runs equally on motivic classes, on chi_{-y}
values (``L = y``) and on Euler characteristics (``L = 1``).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import MotivicError, SchemaError, TruncationError
from .motivic_ring import LaurentY, MotivicClass, chi_y, euler, lefschetz

__all__ = [
    "MotivicSeries",
    "RefinedInvariants",
    "refined_from_hilb",
    "hilb_from_refined",
    "macdonald_curve_series",
    "kapranov_numerator",
    "kapranov_check",
    "extract_refined",
    "assemble_hilb",
]


# truncated power series over a generic ring, as plain lists ----------------

def _mul(a: Sequence, b: Sequence, M: int, zero):
    out = [zero] * (M + 1)
    for i, x in enumerate(a[: M + 1]):
        if not x:
            continue
        for j, y in enumerate(b[: M + 1 - i]):
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def _inverse(a: Sequence, M: int, one, zero):
    """Inverse of a series with constant term 1."""
    if a[0] != one:
        raise MotivicError("series inverse needs constant term 1")
    inv = [zero] * (M + 1)
    inv[0] = one
    for n in range(1, M + 1):
        acc = zero
        for k in range(1, min(n, len(a) - 1) + 1):
            if a[k]:
                acc = acc + a[k] * inv[n - k]
        inv[n] = zero - acc
    return inv


def _power(a: Sequence, k: int, M: int, one, zero):
    if k < 0:
        a = _inverse(a, M, one, zero)
        k = -k
    out = [one] + [zero] * M
    for _ in range(k):
        out = _mul(out, a, M, zero)
    return out


def _P(L, one, zero):
    return [one, zero - one - L, L]


def extract_refined(Z: Sequence, g: int, L, one, zero) -> list:
    """N_0..N_M from Z(q) truncated at M = len(Z) - 1."""
    M = len(Z) - 1
    P = _P(L, one, zero)
    s = [zero] + _inverse(P, M, one, zero)[:M]
    rest = _mul(_power(P, 1 - g, M, one, zero), Z, M, zero)
    s_pow = [one] + [zero] * M
    N = []
    for i in range(M + 1):
        n_i = rest[i]
        N.append(n_i)
        if n_i:
            rest = [r - n_i * c for r, c in zip(rest, s_pow)]
        s_pow = _mul(s_pow, s, M, zero)
    return N


def assemble_hilb(N: Sequence, g: int, M: int, L, one, zero) -> list:
    """Z(q) through q^M from the refined invariants; missing N_i count as 0."""
    P = _P(L, one, zero)
    s = [zero] + _inverse(P, M, one, zero)[:M]
    acc = [zero] * (M + 1)
    s_pow = [one] + [zero] * M
    for i in range(min(len(N), M + 1)):
        if N[i]:
            acc = [x + N[i] * c for x, c in zip(acc, s_pow)]
        s_pow = _mul(s_pow, s, M, zero)
    return _mul(_power(P, g - 1, M, one, zero), acc, M, zero)


# motivic layer ---------------------------------------------------------------------

_ONE = MotivicClass.coerce(1)
_ZERO = MotivicClass()


@dataclass(frozen=True)
class MotivicSeries:
    """``sum coeffs[i] q^i`` known through ``q^M``."""

    coeffs: tuple[MotivicClass, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise MotivicError("a series needs at least its constant term")
        object.__setattr__(self, "coeffs", tuple(MotivicClass.coerce(c) for c in self.coeffs))

    @property
    def M(self) -> int:
        return len(self.coeffs) - 1

    def truncate(self, M: int) -> "MotivicSeries":
        if M > self.M:
            raise TruncationError(f"series known through q^{self.M}, asked for q^{M}")
        return MotivicSeries(self.coeffs[: M + 1])

    def __getitem__(self, i):
        return self.coeffs[i]

    def __add__(self, other: "MotivicSeries"):
        M = min(self.M, other.M)
        return MotivicSeries(tuple(a + b for a, b in zip(self.coeffs[: M + 1], other.coeffs)))

    def __neg__(self):
        return MotivicSeries(tuple(-a for a in self.coeffs))

    def __sub__(self, other: "MotivicSeries"):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, MotivicClass)):
            return MotivicSeries(tuple(a * other for a in self.coeffs))
        M = min(self.M, other.M)
        return MotivicSeries(tuple(_mul(self.coeffs, other.coeffs, M, _ZERO)))

    def degree(self) -> int:
        """Index of the last nonzero coefficient within truncation, -1 if none."""
        return max((i for i, c in enumerate(self.coeffs) if c), default=-1)

    def to_json(self, g: int | None = None) -> dict:
        doc = {"M": self.M, "coeffs": [c.to_records() for c in self.coeffs]}
        if g is not None:
            doc["g"] = g
        return doc

    @classmethod
    def from_json(cls, doc) -> tuple["MotivicSeries", int | None]:
        """Parse a series file; returns the series and its genus, if given."""
        if not isinstance(doc, dict) or "coeffs" not in doc:
            raise SchemaError("coeffs", "missing")
        coeffs = doc["coeffs"]
        if not isinstance(coeffs, list) or not coeffs:
            raise SchemaError("coeffs", "expected a nonempty list of classes")
        series = cls(tuple(MotivicClass.from_records(c, f"coeffs[{k}]") for k, c in enumerate(coeffs)))
        if "M" in doc:
            M = doc["M"]
            if not isinstance(M, int) or isinstance(M, bool) or M < 0:
                raise SchemaError("M", "must be a nonnegative integer")
            if M > series.M:
                raise SchemaError("M", f"declares q^{M} but only {len(coeffs)} coefficients given")
            series = series.truncate(M)
        g = doc.get("g")
        if g is not None and (not isinstance(g, int) or isinstance(g, bool) or g < 0):
            raise SchemaError("g", "must be a nonnegative integer")
        return series, g


@dataclass(frozen=True)
class RefinedInvariants:
    g: int
    N: tuple[MotivicClass, ...]

    @property
    def chi(self) -> tuple[LaurentY, ...]:
        return tuple(chi_y(n) for n in self.N)

    @property
    def n(self) -> tuple[int, ...]:
        return tuple(euler(x) for x in self.N)

    def to_json(self) -> dict:
        return {
            "g": self.g,
            "M": len(self.N) - 1,
            "N_mot": [x.to_records() for x in self.N],
            "N_mot_str": [str(x) for x in self.N],
            "N_chi_y": [c.to_records() for c in self.chi],
            "N_chi_y_str": [str(c) for c in self.chi],
            "n": [str(x) for x in self.n],
        }


def refined_from_hilb(hilb: MotivicSeries, g: int, upto: int | None = None) -> RefinedInvariants:
    if g < 0:
        raise MotivicError("genus must be nonnegative")
    if hilb.coeffs[0].is_zero():
        raise MotivicError("constant term of the zeta series must be the (nonzero) class of the base")
    if upto is not None and upto > hilb.M:
        raise TruncationError(f"N_{upto} needs the series through q^{upto}; have q^{hilb.M}")
    N = extract_refined(list(hilb.coeffs), g, lefschetz(), _ONE, _ZERO)
    if upto is not None:
        N = N[: upto + 1]
    return RefinedInvariants(g, tuple(N))


def hilb_from_refined(N: Sequence, g: int, M: int) -> MotivicSeries:
    if g < 0 or M < 0:
        raise MotivicError("genus and truncation must be nonnegative")
    N = [MotivicClass.coerce(x) for x in N]
    return MotivicSeries(tuple(assemble_hilb(N, g, M, lefschetz(), _ONE, _ZERO)))


def macdonald_curve_series(g: int, M: int) -> MotivicSeries:
    """E-polynomials of symmetric powers of a genus ``g`` curve through q^M.

    ``(1 - uq)^g (1 - vq)^g / ((1 - q)(1 - uvq))``.
    """
    if g < 0 or M < 0:
        raise MotivicError("genus and truncation must be nonnegative")
    u = MotivicClass({(1, 0): 1})
    v = MotivicClass({(0, 1): 1})
    num = _mul(
        _power([_ONE, -u], g, M, _ONE, _ZERO), _power([_ONE, -v], g, M, _ONE, _ZERO), M, _ZERO
    )
    den_inv = _inverse(_P(lefschetz(), _ONE, _ZERO), M, _ONE, _ZERO)
    return MotivicSeries(tuple(_mul(num, den_inv, M, _ZERO)))


def kapranov_numerator(hilb: MotivicSeries) -> MotivicSeries:
    """``(1 - q)(1 - qL) Z(q)`` through the truncation of ``Z``."""
    P = _P(lefschetz(), _ONE, _ZERO)
    return MotivicSeries(tuple(_mul(P, hilb.coeffs, hilb.M, _ZERO)))


def kapranov_check(hilb: MotivicSeries, g: int) -> bool:
    """Do all numerator coefficients beyond ``q^(2g)`` vanish within truncation?"""
    return kapranov_numerator(hilb).degree() <= 2 * g
