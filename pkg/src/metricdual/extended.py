"""Extended nonnegative rationals [0, inf].

Finite values are ``gmpy2.mpq`` rationals (they compare and hash equal to
``fractions.Fraction``, which is accepted everywhere); infinity is the float
``math.inf``, which compares correctly against any rational.  Division
follows the conventions a/0 = inf and a/inf = 0 for a in (0, inf).
"""

from fractions import Fraction
from math import inf

from gmpy2 import mpq

from .errors import InputError

INF = inf
ZERO = mpq(0)
rational = mpq

__all__ = ["INF", "ZERO", "rational", "as_ext", "is_inf", "add", "mul", "div", "ext_max", "ext_min",
           "parse", "format_value"]


def is_inf(v):
    return v == INF


def as_ext(v):
    """Coerce ints, Fractions, strings and inf into an extended value."""
    if type(v) is mpq:
        if v < 0:
            raise InputError(f"negative value {v}")
        return v
    if isinstance(v, str):
        return parse(v)
    if isinstance(v, float):
        if v == INF:
            return INF
        raise InputError(f"floating point value {v!r} is not exact; use a fraction string")
    v = mpq(Fraction(v))
    if v < 0:
        raise InputError(f"negative value {v}")
    return v


def add(a, b):
    if a == INF or b == INF:
        return INF
    return a + b


def mul(a, b):
    # 0 * inf does not arise in this package; callers guard it.
    if a == INF or b == INF:
        if a == 0 or b == 0:
            raise ValueError("0 * inf is undefined")
        return INF
    return a * b


def div(a, b):
    """a / b for a > 0 (a finite); a/0 = inf, a/inf = 0."""
    if a == 0:
        raise ValueError("0 / b is never formed; the index set excludes it")
    if b == 0:
        return INF
    if b == INF:
        return ZERO
    return mpq(a) / b


def ext_max(values):
    """Maximum with sup(empty) = 0."""
    best = ZERO
    for v in values:
        if v > best:
            best = v
    return best


def ext_min(values):
    """Minimum with inf(empty) = inf."""
    best = INF
    for v in values:
        if v < best:
            best = v
    return best


def parse(s):
    s = s.strip()
    if s.lower() in ("inf", "infinity", "∞"):
        return INF
    try:
        v = Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"malformed value string {s!r}") from exc
    if "." in s or "e" in s.lower():
        raise InputError(f"value {s!r} must be written as an integer or num/den")
    if v < 0:
        raise InputError(f"negative value {s!r}")
    return mpq(v)


def format_value(v):
    if v == INF:
        return "inf"
    v = mpq(v)
    return f"{v.numerator}/{v.denominator}"
