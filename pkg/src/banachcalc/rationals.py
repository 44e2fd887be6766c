"""Exact rational scalars.

gmpy2.mpq is used when available (the pivot-heavy paths are several times
faster with it); fractions.Fraction is a drop-in fallback. Floats are never
accepted as inputs: every geometric predicate in this library is exact.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import MalformedRational

try:
    from gmpy2 import mpq as _mpq

    _RAT_TYPES = (_mpq(0).__class__, Fraction)

    def Q(a=0, b=None):
        return _mpq(a) if b is None else _mpq(a, b)

    BACKEND = "gmpy2"
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _RAT_TYPES = (Fraction,)

    def Q(a=0, b=None):
        return Fraction(a) if b is None else Fraction(a, b)

    BACKEND = "fractions"

ZERO = Q(0)
ONE = Q(1)

_RAT_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def is_rational(x) -> bool:
    return isinstance(x, _RAT_TYPES) or isinstance(x, int)


def rat(x):
    """Coerce an int, rational, or 'p/q' string to the scalar type.

    Floats are rejected: silent binary-float contamination is the classic way
    exact geometry breaks.
    """
    if isinstance(x, _RAT_TYPES):
        return x
    if isinstance(x, int):
        return Q(x)
    if isinstance(x, str):
        return parse_rat(x)
    raise TypeError(f"expected exact rational, got {type(x).__name__}")


def parse_rat(token: str):
    """Parse a reduced 'p' or 'p/q' string; reject anything else.

    Zero denominators, non-reduced fractions, signs on the denominator and
    stray whitespace all raise MalformedRational, so catalog files have one
    canonical spelling per value.
    """
    if not isinstance(token, str):
        raise MalformedRational(f"rational token must be a string, got {token!r}")
    m = _RAT_RE.match(token)
    if not m:
        raise MalformedRational(f"malformed rational token {token!r}")
    num = int(m.group(1))
    if m.group(2) is None:
        return Q(num)
    den = int(m.group(2))
    if den == 0:
        raise MalformedRational(f"zero denominator in {token!r}")
    f = Fraction(num, den)
    if f.denominator != den:
        raise MalformedRational(f"non-reduced rational token {token!r}")
    return Q(num, den)


def qstr(x) -> str:
    """Canonical string form: 'p' for integers, '-p/q' otherwise."""
    x = rat(x)
    n, d = x.numerator, x.denominator
    return str(n) if d == 1 else f"{n}/{d}"


def to_float(x) -> float:
    return float(rat(x))
