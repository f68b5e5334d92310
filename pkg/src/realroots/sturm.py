"""Exact Sturm-sequence root counting for integer polynomials (verification oracle)."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from gmpy2 import gcd, mpz

from .dyadic import Dyadic
from .errors import OracleError

DEFAULT_DEGREE_CAP = 64


def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _primitive(p):
    g = 0
    for c in p:
        g = gcd(g, c)
    if g > 1:
        p = [c // g for c in p]
    return p


def _derivative(p):
    return [i * c for i, c in enumerate(p) if i] or [0]


def _prem(a, b):
    """Pseudo-remainder of a by b with a positive multiplier (keeps Sturm signs)."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    mult = abs(lb)
    sgn = 1 if lb > 0 else -1
    while len(a) - 1 >= db and any(a):
        da = len(a) - 1
        lead = a[-1]
        # a <- |lb| * a - sign(lb) * lead * x^(da-db) * b
        a = [c * mult for c in a]
        shift = da - db
        for i, c in enumerate(b):
            a[i + shift] -= sgn * lead * c
        a.pop()
        a = _trim(a) if len(a) > 1 else a
        if len(a) - 1 < db:
            break
    return _trim(a)


def sturm_chain(coeffs):
    """Sturm sequence of a square-free integer polynomial (lowest degree first)."""
    return _chain(tuple(int(c) for c in coeffs))


@lru_cache(maxsize=32)
def _chain(coeffs):
    p = _primitive(_trim([mpz(c) for c in coeffs]))
    if len(p) < 2:
        raise OracleError("constant polynomial")
    chain = [p, _primitive(_derivative(p))]
    while len(chain[-1]) > 1:
        r = _prem(chain[-2], chain[-1])
        if not any(r):
            raise OracleError("polynomial is not square-free")
        chain.append(_primitive([-c for c in r]))
    return chain


def sign_at(p, x) -> int:
    """Sign of p(x) for a rational (or dyadic) x."""
    x = _as_fraction(x)
    num, den = x.numerator, x.denominator
    acc = 0
    for i, c in enumerate(reversed(p)):
        acc = acc * num + c * den**i
    # acc = den^n p(x)
    return (acc > 0) - (acc < 0)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Dyadic):
        return x.to_fraction()
    return Fraction(x)


def _variations(signs) -> int:
    v, last = 0, 0
    for s in signs:
        if s:
            if last and s != last:
                v += 1
            last = s
    return v


def _variations_at(chain, x) -> int:
    if x == "-inf":
        return _variations([(1 if p[-1] > 0 else -1) * (-1) ** (len(p) - 1) for p in chain])
    if x == "+inf":
        return _variations([1 if p[-1] > 0 else -1 for p in chain])
    return _variations([sign_at(p, x) for p in chain])


def sturm_count(coeffs, interval=None, degree_cap: int = DEFAULT_DEGREE_CAP) -> int:
    """Number of distinct real roots in the open interval (a, b); whole line if None."""
    p = _trim([int(c) for c in coeffs])
    if len(p) - 1 > degree_cap:
        raise OracleError(f"degree {len(p) - 1} exceeds oracle cap {degree_cap}")
    chain = sturm_chain(p)
    if interval is None:
        return _variations_at(chain, "-inf") - _variations_at(chain, "+inf")
    a, b = (_as_fraction(x) for x in interval)
    if not a < b:
        return 0
    # V(a) - V(b) counts roots in (a, b]
    count = _variations_at(chain, a) - _variations_at(chain, b)
    if sign_at(p, b) == 0:
        count -= 1
    return count


def is_square_free(coeffs) -> bool:
    try:
        sturm_chain(coeffs)
    except OracleError:
        return False
    return True


def poly_gcd(a, b):
    """Primitive gcd of two integer polynomials."""
    a, b = _primitive(_trim(a)), _primitive(_trim(b))
    if len(a) < len(b):
        a, b = b, a
    while any(b):
        r = _prem(a, b)
        a, b = b, (_primitive(r) if any(r) else [0])
    return [int(c) if a[-1] > 0 else -int(c) for c in a]


def square_free_part(coeffs):
    """p / gcd(p, p') with integer coefficients (primitive, positive lead)."""
    p = _primitive(_trim([int(c) for c in coeffs]))
    g = poly_gcd(p, _derivative(p))
    if len(g) == 1:
        return [int(c) if p[-1] > 0 else -int(c) for c in p]
    q = _primitive(exact_divide(p, g))
    return [int(c) if q[-1] > 0 else -int(c) for c in q]


def exact_divide(p, d):
    """Quotient of p by d over the rationals, scaled back to integers."""
    p = [Fraction(int(c)) for c in p]
    d = [int(c) for c in d]
    out = [Fraction(0)] * (len(p) - len(d) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = p[i + len(d) - 1] / d[-1]
        out[i] = c
        for j, dj in enumerate(d):
            p[i + j] -= c * dj
    if any(p[: len(d) - 1]):
        raise OracleError("division is not exact")
    den = 1
    for c in out:
        den = den * c.denominator // gcd(den, c.denominator)
    return [int(c * den) for c in out]
