"""Exact dyadic numbers and outward-rounded interval arithmetic.

A :class:`Dyadic` is ``man * 2**exp`` with an arbitrary precision mantissa.
An :class:`Enclosure` is a closed interval with dyadic endpoints.  Interval
operations compute endpoint candidates exactly and round once, outward, to a
mantissa of at most ``prec`` bits.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterator, Union

from .errors import DyadicOverflowError, UndefinedDivisionError

INITIAL_PRECISION = 63
EXP_LIMIT = 2**63 - 1

Number = Union["Dyadic", int]


def _check_exp(e: int) -> int:
    if e > EXP_LIMIT or e < -EXP_LIMIT:
        raise DyadicOverflowError(f"exponent {e} outside machine-word range")
    return e


class Dyadic:
    """Immutable binary rational in canonical form (odd mantissa, or 0*2^0)."""

    __slots__ = ("man", "exp")

    def __init__(self, man: int = 0, exp: int = 0):
        man = int(man)
        if man == 0:
            exp = 0
        else:
            tz = (man & -man).bit_length() - 1
            if tz:
                man >>= tz
                exp += tz
            _check_exp(exp)
        object.__setattr__(self, "man", man)
        object.__setattr__(self, "exp", exp)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    def __reduce__(self):
        return (Dyadic, (self.man, self.exp))

    # construction -----------------------------------------------------

    @classmethod
    def coerce(cls, x) -> "Dyadic":
        if isinstance(x, Dyadic):
            return x
        if isinstance(x, int):
            return cls(x, 0)
        if isinstance(x, Fraction):
            d = cls.from_fraction_exact(x)
            if d is None:
                raise ValueError(f"{x} is not a dyadic rational")
            return d
        if isinstance(x, float):
            m, e = x.as_integer_ratio()
            return cls.coerce(Fraction(m, e))
        try:
            return cls.coerce(int(x))
        except (TypeError, ValueError):
            raise TypeError(f"cannot convert {type(x).__name__} to Dyadic") from None

    @classmethod
    def from_fraction_exact(cls, q: Fraction):
        den = q.denominator
        if den & (den - 1):
            return None
        return cls(q.numerator, -(den.bit_length() - 1))

    @classmethod
    def from_fraction(cls, q: Fraction, prec: int, up: bool) -> "Dyadic":
        """Round the rational ``q`` to ``prec`` mantissa bits, up or down."""
        exact = cls.from_fraction_exact(q)
        if exact is not None:
            return exact.round(prec, up)
        num, den = q.numerator, q.denominator
        # shift so that the integer quotient carries at least prec bits
        k = prec + den.bit_length() - abs(num).bit_length() + 1
        if k >= 0:
            quo = (num << k) // den
        else:
            quo = num // (den << -k)
        # floor division: quo <= true value < quo + 1
        if up:
            quo += 1
        return cls(quo, -k).round(prec, up)

    # inspection -------------------------------------------------------

    def sign(self) -> int:
        return (self.man > 0) - (self.man < 0)

    def is_zero(self) -> bool:
        return self.man == 0

    def bits(self) -> int:
        return abs(self.man).bit_length()

    def floor_log2(self) -> int:
        """floor(log2 |x|) for x != 0."""
        if self.man == 0:
            raise ValueError("log2 of zero")
        return abs(self.man).bit_length() - 1 + self.exp

    def to_fraction(self) -> Fraction:
        if self.exp >= 0:
            return Fraction(self.man << self.exp)
        return Fraction(self.man, 1 << -self.exp)

    def __float__(self) -> float:
        try:
            return float(self.to_fraction())
        except OverflowError:
            return float("inf") if self.man > 0 else float("-inf")

    def on_grid(self, e: int) -> int:
        """Mantissa of self on the grid 2**e (exact; requires exp >= e)."""
        if not self.man:
            return 0
        if self.exp < e:
            raise ValueError("value not representable on the requested grid")
        return self.man << (self.exp - e)

    # rounding ---------------------------------------------------------

    def round(self, prec: int, up: bool) -> "Dyadic":
        """Directed rounding to at most ``prec`` mantissa bits."""
        drop = abs(self.man).bit_length() - prec
        if drop <= 0:
            return self
        man = self.man >> drop  # floor
        if up and (man << drop) != self.man:
            man += 1
        return Dyadic(man, self.exp + drop)

    def floor_to_grid(self, e: int) -> int:
        """Largest integer k with k*2^e <= self."""
        d = self.exp - e
        return self.man << d if d >= 0 else self.man >> -d

    def ceil_to_grid(self, e: int) -> int:
        d = self.exp - e
        return self.man << d if d >= 0 else -((-self.man) >> -d)

    # arithmetic (exact) ----------------------------------------------

    def _align(self, other: "Dyadic"):
        e = min(self.exp, other.exp)
        return self.man << (self.exp - e), other.man << (other.exp - e), e

    def __add__(self, other):
        if not isinstance(other, Dyadic):
            if isinstance(other, int):
                other = Dyadic(other)
            else:
                return NotImplemented
        a, b, e = self._align(other)
        return Dyadic(a + b, e)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Dyadic):
            if isinstance(other, int):
                other = Dyadic(other)
            else:
                return NotImplemented
        a, b, e = self._align(other)
        return Dyadic(a - b, e)

    def __rsub__(self, other):
        if isinstance(other, int):
            return Dyadic(other) - self
        return NotImplemented

    def __mul__(self, other):
        if not isinstance(other, Dyadic):
            if isinstance(other, int):
                other = Dyadic(other)
            else:
                return NotImplemented
        return Dyadic(self.man * other.man, _check_exp(self.exp + other.exp))

    __rmul__ = __mul__

    def __neg__(self):
        return Dyadic(-self.man, self.exp)

    def __abs__(self):
        return self if self.man >= 0 else Dyadic(-self.man, self.exp)

    def scale2(self, k: int) -> "Dyadic":
        """self * 2**k."""
        if self.man == 0:
            return self
        return Dyadic(self.man, _check_exp(self.exp + k))

    # comparison -------------------------------------------------------

    def _cmp(self, other) -> int:
        if not isinstance(other, Dyadic):
            other = Dyadic.coerce(other)
        if self.man == other.man and self.exp == other.exp:
            return 0
        sa, sb = self.sign(), other.sign()
        if sa != sb:
            return -1 if sa < sb else 1
        a, b, _ = self._align(other)
        return (a > b) - (a < b)

    def __eq__(self, other):
        if isinstance(other, Dyadic):
            return self.man == other.man and self.exp == other.exp
        if isinstance(other, int):
            return self.exp >= 0 and (self.man << self.exp) == other if self.man else other == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.man, self.exp))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    # text -------------------------------------------------------------

    def __str__(self):
        if self.exp == 0:
            return str(self.man)
        return f"{self.man}*2^{self.exp}"

    def __repr__(self):
        return f"Dyadic({self.man}, {self.exp})"


ZERO = Dyadic(0)
ONE = Dyadic(1)


def dy_normalize(m: int, e: int) -> Dyadic:
    return Dyadic(m, e)


def midpoint(a: Dyadic, b: Dyadic) -> Dyadic:
    return (a + b).scale2(-1)


_DYADIC_RE = re.compile(r"^\s*([+-]?\d+)\s*\*\s*2\s*\^\s*\(?\s*([+-]?\d+)\s*\)?\s*$")
_DECIMAL_RE = re.compile(r"^\s*[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``m*2^e``, an integer, or a decimal fraction to an exact rational."""
    m = _DYADIC_RE.match(text)
    if m:
        return Dyadic(int(m.group(1)), int(m.group(2))).to_fraction()
    if _DECIMAL_RE.match(text):
        return Fraction(text.strip())
    raise ValueError(f"not a number: {text!r}")


def parse_dyadic(text: str, prec: int | None = None):
    """Parse a number to a Dyadic.

    Values that are not exactly dyadic (e.g. ``0.1``) are returned as an
    outward-rounded :class:`Enclosure` at ``prec`` bits; without ``prec`` they
    raise ``ValueError``.
    """
    q = parse_rational(text)
    d = Dyadic.from_fraction_exact(q)
    if d is not None:
        return d
    if prec is None:
        raise ValueError(f"{text!r} is not exactly dyadic; pass prec to round outward")
    return Enclosure(Dyadic.from_fraction(q, prec, up=False), Dyadic.from_fraction(q, prec, up=True))


# ----------------------------------------------------------------------
# Enclosures


class Enclosure:
    """Closed interval [lo, hi] with dyadic endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = Dyadic.coerce(lo)
        hi = lo if hi is None else Dyadic.coerce(hi)
        if hi < lo:
            raise ValueError(f"empty enclosure [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    @classmethod
    def point(cls, x) -> "Enclosure":
        x = Dyadic.coerce(x)
        return cls(x, x)

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x) -> bool:
        if isinstance(x, Fraction):
            return self.lo.to_fraction() <= x <= self.hi.to_fraction()
        x = Dyadic.coerce(x)
        return self.lo <= x <= self.hi

    def contains_zero(self) -> bool:
        return self.lo.man <= 0 <= self.hi.man

    def width(self) -> Dyadic:
        return self.hi - self.lo

    def mid(self) -> Dyadic:
        return midpoint(self.lo, self.hi)

    def mig(self) -> Dyadic:
        """Smallest absolute value over the enclosure."""
        if self.contains_zero():
            return ZERO
        return min(abs(self.lo), abs(self.hi))

    def mag(self) -> Dyadic:
        return max(abs(self.lo), abs(self.hi))

    def __eq__(self, other):
        if not isinstance(other, Enclosure):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __repr__(self):
        return f"Enclosure({self.lo}, {self.hi})"

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"

    def subset_of(self, other: "Enclosure") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi


def _div_round(a: Dyadic, b: Dyadic, prec: int, up: bool) -> Dyadic:
    if a.man == 0:
        return ZERO
    num, den = a.man, b.man
    if den < 0:
        num, den = -num, -den
    k = prec + den.bit_length() - abs(num).bit_length() + 1
    if k >= 0:
        quo, rem = divmod(num << k, den)
    else:
        quo, rem = divmod(num, den << -k)
    if up and rem:
        quo += 1
    return Dyadic(quo, _check_exp(a.exp - b.exp - k)).round(prec, up)


def iv_add(x: Enclosure, y: Enclosure, prec: int) -> Enclosure:
    return Enclosure((x.lo + y.lo).round(prec, False), (x.hi + y.hi).round(prec, True))


def iv_sub(x: Enclosure, y: Enclosure, prec: int) -> Enclosure:
    return Enclosure((x.lo - y.hi).round(prec, False), (x.hi - y.lo).round(prec, True))


def iv_mul(x: Enclosure, y: Enclosure, prec: int) -> Enclosure:
    cands = (x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi)
    return Enclosure(min(cands).round(prec, False), max(cands).round(prec, True))


def iv_div(x: Enclosure, y: Enclosure, prec: int) -> Enclosure:
    if y.contains_zero():
        raise UndefinedDivisionError(f"division by enclosure {y} containing zero")
    lows = [_div_round(p, q, prec, False) for p in (x.lo, x.hi) for q in (y.lo, y.hi)]
    highs = [_div_round(p, q, prec, True) for p in (x.lo, x.hi) for q in (y.lo, y.hi)]
    return Enclosure(min(lows), max(highs))


_OPS = {"add": iv_add, "sub": iv_sub, "mul": iv_mul, "div": iv_div}


def iv_arith(op: str, x: Enclosure, y: Enclosure, prec: int) -> Enclosure:
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    return fn(x, y, prec)


def iv_sign(x: Enclosure):
    """-1, 0, +1, or None when the sign is not determined."""
    if x.hi.man < 0:
        return -1
    if x.lo.man > 0:
        return 1
    if x.lo.man == 0 and x.hi.man == 0:
        return 0
    return None


def escalate(prec: int) -> int:
    return 2 * prec + 1


def precision_sequence(start: int = INITIAL_PRECISION, cap: int | None = None) -> Iterator[int]:
    """63, 127, 255, ... up to and including the last value <= cap."""
    p = start
    while cap is None or p <= cap:
        yield p
        p = escalate(p)
