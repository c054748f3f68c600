"""Wire format for rationals: ``"p/q"`` in lowest terms with ``q > 0``."""
from __future__ import annotations

import re
from fractions import Fraction

from .errors import SchemaError

_RAT = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def fmt_q(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_q(s, field: str = "rational") -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise SchemaError(field, "rational must be a string 'p/q'")
    if isinstance(s, int):
        return Fraction(s)
    m = _RAT.match(s)
    if not m:
        raise SchemaError(field, f"malformed rational {s!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise SchemaError(field, "zero denominator")
    return Fraction(num, den)
