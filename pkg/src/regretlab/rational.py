"""Exact rational arithmetic backend.

Every payoff, probability and regret value in this package is an exact
rational: deletion operators hinge on exact ties, and a single rounded
comparison would corrupt an argmin set.  gmpy2's mpq is used when
installed (its C pivots are several times faster on large simplex
tableaus); the stdlib Fraction is a drop-in fallback.
"""

from __future__ import annotations

import numbers
import re

try:
    from gmpy2 import mpq as _Rat

    BACKEND = "gmpy2"
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as _Rat

    BACKEND = "fractions"

Rat = _Rat

_RAT_RE = re.compile(r"^[+-]?\d+(?:/[1-9]\d*)?$")

ZERO = _Rat(0)
ONE = _Rat(1)


def rat(value, denom=None):
    """Build an exact rational from an int, a 'p/q' string, or a rational.

    Floats are rejected outright; there is no safe exact reading of one.
    """
    if denom is not None:
        return rat(value) / rat(denom)
    if isinstance(value, bool):
        raise TypeError("booleans are not payoff values")
    if isinstance(value, int):
        return _Rat(value)
    if isinstance(value, str):
        if not _RAT_RE.match(value):
            raise ValueError(f"not a rational literal: {value!r}")
        return _Rat(value)
    if isinstance(value, float):
        raise TypeError(f"refusing inexact float {value!r}; pass an int or 'p/q' string")
    if isinstance(value, numbers.Rational) or type(value) is _Rat:
        return _Rat(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot build a rational from {type(value).__name__}")


def is_rat(value) -> bool:
    if isinstance(value, bool):
        return False
    return type(value) is _Rat or isinstance(value, numbers.Rational)


def rat_str(value) -> str:
    """Canonical text form: 'p/q', or just 'p' when the denominator is 1."""
    return str(value)


def rat_json(value):
    """JSON form: a bare int when integral, else the 'p/q' string."""
    if value.denominator == 1:
        return int(value.numerator)
    return str(value)


def parse_rat_json(value):
    """Inverse of rat_json: accept JSON ints and 'p/q' strings only."""
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f"utilities must be integers or 'p/q' strings, got {value!r}")
    if isinstance(value, int):
        return _Rat(value)
    if isinstance(value, str):
        return rat(value)
    raise ValueError(f"utilities must be integers or 'p/q' strings, got {value!r}")


def rat_decimal(value, digits: int = 6) -> str:
    """Decimal rendering for text tables.  Display only; never fed back in."""
    return f"{float(value.numerator) / float(value.denominator):.{digits}g}"
