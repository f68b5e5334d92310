"""Interval polynomials, coefficient oracles and the Descartes transforms.

An :class:`IntervalPoly` stores every coefficient on one fixed-point grid
``2**exp`` as an integer midpoint and an integer radius, so coefficient ``i``
is the enclosure ``[(mid[i] - rad[i]) * 2**exp, (mid[i] + rad[i]) * 2**exp]``.
Products are floored onto the grid and the radius absorbs the rounding, which
keeps every result a superset of the exact one.  Sums and the shift by one are
exact on the grid.
"""

from __future__ import annotations

from collections import OrderedDict
from fractions import Fraction
from functools import lru_cache
from itertools import accumulate
from typing import NamedTuple, Sequence

import gmpy2
from gmpy2 import mpz

from .dyadic import (
    INITIAL_PRECISION,
    Dyadic,
    Enclosure,
    escalate,
    midpoint,
    precision_sequence,
)
from .errors import DegenerateInputError, OracleError, PrecisionCapError

_ZERO = mpz(0)


class IntervalPoly:
    __slots__ = ("mid", "rad", "exp")

    def __init__(self, mid, rad=None, exp: int = 0):
        self.mid = [mpz(v) for v in mid]
        self.rad = [_ZERO] * len(self.mid) if rad is None else [mpz(v) for v in rad]
        if len(self.rad) != len(self.mid):
            raise ValueError("mid/rad length mismatch")
        self.exp = exp

    @classmethod
    def _raw(cls, mid, rad, exp):
        obj = cls.__new__(cls)
        obj.mid, obj.rad, obj.exp = mid, rad, exp
        return obj

    @classmethod
    def exact(cls, values: Sequence) -> "IntervalPoly":
        """Point polynomial from dyadic coefficients (lowest degree first)."""
        ds = [Dyadic.coerce(v) for v in values]
        e = min((d.exp for d in ds if d.man), default=0)
        return cls([d.on_grid(e) for d in ds], None, e)

    @classmethod
    def from_enclosures(cls, encs: Sequence[Enclosure], exp: int) -> "IntervalPoly":
        mids, rads = [], []
        for c in encs:
            lo = c.lo.floor_to_grid(exp)
            hi = c.hi.ceil_to_grid(exp)
            m = (lo + hi) >> 1
            mids.append(mpz(m))
            rads.append(mpz(max(hi - m, m - lo)))
        return cls._raw(mids, rads, exp)

    @property
    def degree(self) -> int:
        return len(self.mid) - 1

    def coefficient(self, i: int) -> Enclosure:
        m, r = int(self.mid[i]), int(self.rad[i])
        return Enclosure(Dyadic(m - r, self.exp), Dyadic(m + r, self.exp))

    @property
    def coeffs(self) -> list[Enclosure]:
        return [self.coefficient(i) for i in range(len(self.mid))]

    def is_exact(self) -> bool:
        return not any(self.rad)

    def contains(self, values: Sequence) -> bool:
        """True if every exact coefficient lies in the matching enclosure."""
        if len(values) != len(self.mid):
            return False
        return all(c.contains(Fraction(v)) for c, v in zip(self.coeffs, values))

    def copy(self) -> "IntervalPoly":
        return IntervalPoly._raw(list(self.mid), list(self.rad), self.exp)

    def __repr__(self):
        return f"IntervalPoly({[str(c) for c in self.coeffs]})"


class SignVarRange(NamedTuple):
    v_min: int
    v_max: int

    @property
    def determined(self) -> bool:
        return self.v_min == self.v_max

    def __contains__(self, v):
        return self.v_min <= v <= self.v_max


# ----------------------------------------------------------------------
# grid helpers


def _ceil_shr(x, s):
    return -((-x) >> s)


def _mul_const(mid, rad, c: Dyadic):
    """Multiply grid values by the dyadic ``c``; returns new (mid, rad)."""
    C, t = mpz(c.man), c.exp
    if t >= 0:
        C <<= t
        aC = abs(C)
        return [v * C for v in mid], [v * aC for v in rad]
    s = -t
    aC = abs(C)
    return [(v * C) >> s for v in mid], [_ceil_shr(v * aC, s) + 1 for v in rad]


def _shift_passes(mid, rad, c: Dyadic, passes: int):
    """In-place synthetic division passes computing f(x + c).

    After ``passes`` passes the first ``passes`` entries hold the Taylor
    coefficients at ``c``; with ``passes == n`` the whole list is f(x + c).
    """
    n = len(mid) - 1
    if c.man == 0 or n <= 0:
        return
    C, t = mpz(c.man), c.exp
    passes = min(passes, n)
    if t == 0 and C == 1:
        for i in range(passes):
            mid[i:] = list(accumulate(mid[:i - 1 if i else None:-1]))[::-1]
            if any(rad):
                rad[i:] = list(accumulate(rad[:i - 1 if i else None:-1]))[::-1]
        return
    if t >= 0:
        C <<= t
        aC = abs(C)
        fm = lambda acc, x: x + acc * C  # noqa: E731
        fr = lambda acc, x: x + acc * aC  # noqa: E731
    else:
        s = -t
        aC = abs(C)
        fm = lambda acc, x: x + ((acc * C) >> s)  # noqa: E731
        # the +1 covers the floor taken in the midpoint update
        fr = lambda acc, x: x - ((-acc * aC) >> s) + 1  # noqa: E731
    for i in range(passes):
        rev = slice(None, i - 1 if i else None, -1)
        mid[i:] = list(accumulate(mid[rev], fm))[::-1]
        rad[i:] = list(accumulate(rad[rev], fr))[::-1]


# Above this degree a general shift goes through one big-integer product
# instead of n^2/2 interpreted multiply-adds.
CONV_SHIFT_MIN_DEGREE = 24


@lru_cache(maxsize=8)
def _factorials(n: int) -> tuple:
    out = [mpz(1)]
    for i in range(1, n + 1):
        out.append(out[-1] * i)
    return tuple(out)


def _offset(count: int, nb: int):
    return gmpy2.pack([mpz(1) << (8 * nb - 1)] * count, 8 * nb)


def _pack(vals, nb: int):
    """Signed values v_i (|v_i| < 2^(8 nb - 1)) as sum v_i 2^(8 nb i)."""
    half = mpz(1) << (8 * nb - 1)
    return gmpy2.pack([v + half for v in vals], 8 * nb) - _offset(len(vals), nb)


def _unpack(x, count: int, nb: int) -> list:
    half = mpz(1) << (8 * nb - 1)
    out = [v - half for v in gmpy2.unpack(x + _offset(count, nb), 8 * nb)]
    # unpack drops leading zero limbs
    return out[:count] + [-half] * (count - len(out))


def _exp_series(c: Dyadic, n: int, G: int, up: bool):
    """Integers V_k near 2^G c^k / k! (floored, or ceiled for ``up``), k = 0..n."""
    C, t = mpz(c.man), c.exp
    V = [mpz(1) << G]
    for k in range(1, n + 1):
        x = V[-1] * C
        if t >= 0:
            x <<= t
            den = k
        else:
            den = k << -t
        V.append(-((-x) // den) if up else x // den)
    return V


def _exp_series_error(c: Dyadic, n: int) -> int:
    """Bound on |V_k - 2^G c^k / k!| for the floored series, any G."""
    A, t = abs(int(c.man)), c.exp
    eps, worst = 0, 0
    for k in range(1, n + 1):
        x = eps * A
        den = k if t >= 0 else k << -t
        if t >= 0:
            x <<= t
        eps = -((-x) // den) + 1
        worst = max(worst, eps)
    return worst


def _correlate(U, V, n: int) -> list:
    """W_j = sum_{i >= j} U_i V_(i - j) for j = 0..n via one big product."""
    bu = max(int(abs(u)).bit_length() for u in U)
    bv = max(int(abs(v)).bit_length() for v in V)
    nb = (bu + bv + (n + 1).bit_length() + 2 + 7) // 8
    prod = _pack(U[::-1], nb) * _pack(V, nb)
    W = _unpack(prod, 2 * n + 1, nb)
    return [W[n - j] for j in range(n + 1)]


def _shift_conv_exact(mid, rad, c: Dyadic, s: int):
    """Exact variant: V_k = c^k n!/k! 2^(s n) is an integer for s >= -exp(c)."""
    n = len(mid) - 1
    fact = _factorials(n)
    C, t = mpz(c.man), c.exp
    V, p = [], mpz(1)
    for k in range(n + 1):
        V.append((p * (fact[n] // fact[k])) << (t * k + s * n))
        p *= C
    scale_ = fact[n] << (s * n)
    W = _correlate([m * fact[i] for i, m in enumerate(mid)], V, n)
    new_mid, new_rad = [], []
    for j in range(n + 1):
        q, r = divmod(W[j], scale_ * fact[j])
        new_mid.append(q)
        new_rad.append(mpz(1) if r else _ZERO)
    if any(rad):
        absV = [abs(v) for v in V]
        Wr = _correlate([r * fact[i] for i, r in enumerate(rad)], absV, n)
        new_rad = [e - ((-w) // (scale_ * fact[j])) for j, (e, w) in enumerate(zip(new_rad, Wr))]
    return new_mid, new_rad


def _shift_conv(mid, rad, c: Dyadic):
    """f(x + c) on the grid of f via g_j j! = sum_i f_i i! c^(i-j)/(i-j)!.

    When c has few fractional bits the series is carried exactly.
    Otherwise it is carried with G fractional bits, chosen so that its
    accumulated floor error contributes at most half a grid unit; with the
    final floor division the midpoint is off by less than two units.
    """
    n = len(mid) - 1
    fact = _factorials(n)
    U = [m * fact[i] for i, m in enumerate(mid)]
    total = sum(abs(u) for u in U)
    G = int(total).bit_length() + _exp_series_error(c, n).bit_length() + 1
    s = max(0, -c.exp)
    if s * n <= G + 64:
        return _shift_conv_exact(mid, rad, c, s)
    W = _correlate(U, _exp_series(c, n, G, False), n)
    new_mid = [W[j] // (fact[j] << G) for j in range(n + 1)]
    if any(rad):
        R = [r * fact[i] for i, r in enumerate(rad)]
        Wr = _correlate(R, _exp_series(abs(c), n, G, True), n)
        new_rad = [-((-Wr[j]) // (fact[j] << G)) + 2 for j in range(n + 1)]
    else:
        new_rad = [mpz(2)] * (n + 1)
    return new_mid, new_rad


def shift_inplace(mid, rad, c: Dyadic) -> None:
    """Replace (mid, rad) by an enclosure of f(x + c), choosing the faster route."""
    n = len(mid) - 1
    if c.man == 0 or n <= 0:
        return
    if n < CONV_SHIFT_MIN_DEGREE or (c.exp == 0 and abs(c.man) == 1):
        _shift_passes(mid, rad, c, n)
        return
    mid[:], rad[:] = _shift_conv(mid, rad, c)


def taylor_shift(f: IntervalPoly, c, prec: int | None = None) -> IntervalPoly:
    """Enclosure of f(x + c) on the grid of ``f``.

    ``prec`` is accepted for interface symmetry; rounding happens on the
    polynomial's own grid, which the caller chose from the working precision.
    """
    c = Dyadic.coerce(c)
    g = f.copy()
    shift_inplace(g.mid, g.rad, c)
    return g


def scale(f: IntervalPoly, w) -> IntervalPoly:
    """Enclosure of f(w x)."""
    w = Dyadic.coerce(w)
    W, u = mpz(w.man), w.exp
    n = f.degree
    if u >= 0 or int(W).bit_length() * n <= 4096:
        return _scale_exact_powers(f, W, u)
    return _scale_rounded_powers(f, w)


def _scale_exact_powers(f: IntervalPoly, W, u: int) -> IntervalPoly:
    mids, rads = [], []
    p = mpz(1)
    for i, (m, r) in enumerate(zip(f.mid, f.rad)):
        e = u * i
        if e >= 0:
            mids.append((m * p) << e)
            rads.append((r * abs(p)) << e)
        else:
            x = m * p
            q = x >> -e
            mids.append(q)
            rads.append(_ceil_shr(r * abs(p), -e) + (1 if q << -e != x else 0))
        p *= W
    return IntervalPoly._raw(mids, rads, f.exp)


def _scale_rounded_powers(f: IntervalPoly, w: Dyadic) -> IntervalPoly:
    """Scaling with |w|^i carried to R bits; the truncation goes into the radius.

    P_i 2^E_i <= |w|^i <= Pup_i 2^E_i, with R large enough that the gap
    stays below a grid unit for every coefficient.
    """
    n = f.degree
    W, u = abs(mpz(w.man)), w.exp
    neg = w.man < 0
    top = max(int(abs(m)).bit_length() for m in f.mid)
    growth = max(0, w.floor_log2() + 1) * n
    R = top + growth + n.bit_length() + 8
    mids, rads = [], []
    P, E = mpz(1), 0
    exact = True
    for i, (m, r) in enumerate(zip(f.mid, f.rad)):
        if i:
            P *= W
            E += u
            extra = int(P).bit_length() - R
            if extra > 0:
                P >>= extra
                E += extra
                exact = False
        Pup = P if exact else P + ((P * (4 * i)) >> R) + 1
        sm = -m if neg and i & 1 else m
        if E >= 0:
            mids.append((sm * P) << E)
            rads.append(((r * Pup + abs(m) * (Pup - P)) << E))
        else:
            mids.append((sm * P) >> -E)
            rads.append(_ceil_shr(r * Pup + abs(m) * (Pup - P), -E) + 1)
    return IntervalPoly._raw(mids, rads, f.exp)


def reverse(f: IntervalPoly) -> IntervalPoly:
    return IntervalPoly._raw(f.mid[::-1], f.rad[::-1], f.exp)


def shift_one(f: IntervalPoly) -> IntervalPoly:
    g = f.copy()
    _shift_passes(g.mid, g.rad, Dyadic(1), g.degree)
    return g


def scale_reverse_shift1(f: IntervalPoly, prec: int | None = None) -> IntervalPoly:
    """(x+1)^n f(1/(x+1)): reversal followed by a shift by one (exact)."""
    return shift_one(reverse(f))


def derivative(f: IntervalPoly) -> IntervalPoly:
    if f.degree == 0:
        return IntervalPoly._raw([_ZERO], [_ZERO], f.exp)
    return IntervalPoly._raw(
        [i * m for i, m in enumerate(f.mid) if i],
        [i * r for i, r in enumerate(f.rad) if i],
        f.exp,
    )


def sign_variations(f: IntervalPoly) -> SignVarRange:
    """Min and max sign variations over all exact members of ``f``."""
    signs = []
    ambiguous = False
    for m, r in zip(f.mid, f.rad):
        if m > r:
            signs.append(1)
        elif -m > r:
            signs.append(-1)
        elif m == 0 and r == 0:
            continue
        else:
            # an endpoint at zero rules out the opposite sign
            signs.append((None, 1) if m == r else (None, -1) if m == -r else (None, 1, -1))
            ambiguous = True
    if not ambiguous:
        v = sum(1 for s, t in zip(signs, signs[1:]) if s != t)
        return SignVarRange(v, v)
    # state: last nonzero sign (0 = none yet) -> (min, max) changes so far
    states = {0: (0, 0)}
    for s in signs:
        options = s if isinstance(s, tuple) else (s,)
        new: dict = {}
        for last, (lo, hi) in states.items():
            for opt in options:
                if opt is None:
                    key, add = last, 0
                else:
                    key, add = opt, int(last != 0 and last != opt)
                cur = new.get(key)
                if cur is None:
                    new[key] = (lo + add, hi + add)
                else:
                    new[key] = (min(cur[0], lo + add), max(cur[1], hi + add))
        states = new
    return SignVarRange(min(v[0] for v in states.values()), max(v[1] for v in states.values()))


def _horner_point(mid, rad, x: Dyadic):
    X, t = mpz(x.man), x.exp
    am, ar = mid[-1], rad[-1]
    if t >= 0:
        X <<= t
        aX = abs(X)
        for m, r in zip(mid[-2::-1], rad[-2::-1]):
            am = am * X + m
            ar = ar * aX + r
        return am, ar
    s = -t
    aX = abs(X)
    for m, r in zip(mid[-2::-1], rad[-2::-1]):
        am = ((am * X) >> s) + m
        ar = _ceil_shr(ar * aX, s) + 1 + r
    return am, ar


def _grid_mul(v, d: Dyadic, up: bool):
    """v * d rounded onto the same grid (floor, or ceil when ``up``)."""
    D, t = mpz(d.man), d.exp
    if t >= 0:
        return (v * D) << t
    return _ceil_shr(v * D, -t) if up else (v * D) >> -t


def _horner_interval(mid, rad, xm: Dyadic, xr: Dyadic):
    """Midpoint-radius Horner over the interval xm +- xr."""
    axm = abs(xm)
    am, ar = mid[-1], rad[-1]
    for m, r in zip(mid[-2::-1], rad[-2::-1]):
        nm = _grid_mul(am, xm, False)
        nr = _grid_mul(abs(am), xr, True) + _grid_mul(ar, axm + xr, True) + 1
        am, ar = nm + m, nr + r
    return am, ar


def _enclosure(m, r, e) -> Enclosure:
    m, r = int(m), int(r)
    return Enclosure(Dyadic(m - r, e), Dyadic(m + r, e))


def poly_eval(f: IntervalPoly, x, prec: int | None = None) -> Enclosure:
    """Horner evaluation at a dyadic point on the grid of ``f``."""
    x = Dyadic.coerce(x)
    return _enclosure(*_horner_point(f.mid, f.rad, x), f.exp)


def poly_eval_iv(f: IntervalPoly, X: Enclosure, prec: int | None = None) -> Enclosure:
    """Horner evaluation over an interval; contains the range of f on X."""
    xm = X.mid()
    xr = (X.hi - X.lo).scale2(-1)
    return _enclosure(*_horner_interval(f.mid, f.rad, xm, xr), f.exp)


# ----------------------------------------------------------------------
# coefficient oracles


def ladder(prec: int) -> int:
    """Round a precision up to the escalation sequence 63, 127, 255, ..."""
    p = INITIAL_PRECISION
    while p < prec:
        p = escalate(p)
    return p


class CoefficientOracle:
    """Source of coefficient enclosures p_i at any requested precision.

    ``enclosure(i, prec)`` returns an enclosure of width at most 2^(1-prec)
    containing p_i; results are nested as ``prec`` grows.  ``fixed(prec)``
    returns all coefficients on a grid no coarser than 2^-prec.
    """

    degree: int
    exact: bool = False

    def __init__(self):
        self._fixed: dict[int, IntervalPoly] = {}

    def enclosure(self, i: int, prec: int) -> Enclosure:
        raise NotImplementedError

    def _build_fixed(self, prec: int) -> IntervalPoly:
        e = -prec - 1
        return IntervalPoly.from_enclosures([self.enclosure(i, prec + 1) for i in range(self.degree + 1)], e)

    def fixed(self, prec: int) -> IntervalPoly:
        prec = ladder(prec)
        f = self._fixed.get(prec)
        if f is None:
            f = self._fixed[prec] = self._build_fixed(prec)
        return f


class ExactOracle(CoefficientOracle):
    """Exactly representable (integer or dyadic) coefficients, lowest first."""

    exact = True

    def __init__(self, coeffs: Sequence):
        super().__init__()
        values = [Dyadic.coerce(c) for c in coeffs]
        while len(values) > 1 and values[-1].is_zero():
            values.pop()
        self.values = values
        self.degree = len(values) - 1
        self._min_exp = min((d.exp for d in values if d.man), default=0)

    def enclosure(self, i: int, prec: int) -> Enclosure:
        return Enclosure.point(self.values[i])

    def _build_fixed(self, prec: int) -> IntervalPoly:
        e = min(-prec, self._min_exp)
        return IntervalPoly._raw([mpz(d.on_grid(e)) for d in self.values], [_ZERO] * len(self.values), e)

    def fixed(self, prec: int) -> IntervalPoly:
        # exact coefficients sit on any grid, so skip the ladder rounding
        f = self._fixed.get(prec)
        if f is None:
            if len(self._fixed) > 32:
                self._fixed.clear()
            f = self._fixed[prec] = self._build_fixed(prec)
        return f

    def integer_coeffs(self):
        if all(d.exp >= 0 for d in self.values):
            return [d.man << d.exp for d in self.values]
        return None

    def __repr__(self):
        return f"ExactOracle({[str(v) for v in self.values]})"


class BitstreamOracle(CoefficientOracle):
    """Coefficients given by callables ``prec -> Enclosure`` (lowest first)."""

    def __init__(self, sources: Sequence):
        super().__init__()
        self.sources = list(sources)
        self.degree = len(self.sources) - 1

    def enclosure(self, i: int, prec: int) -> Enclosure:
        enc = self.sources[i](prec)
        return enc


def _decimal_digits_for(prec: int) -> int:
    # 10^-d <= 2^-(prec+2)
    return (prec + 2) * 30103 // 100000 + 2


class DecimalOracle(BitstreamOracle):
    """Coefficients known through decimal expansions, truncated on demand.

    A source is either a finite decimal string (an exact rational that may
    not be dyadic) or a callable ``digits(d) -> str`` returning the value
    truncated toward zero after ``d`` fractional digits.
    """

    def __init__(self, sources: Sequence):
        super().__init__([self._make(s) for s in sources])
        self.raw_sources = list(sources)

    @staticmethod
    def _make(src):
        if isinstance(src, str):
            q = Fraction(src.strip())

            def rounded(prec, q=q):
                g = prec + 1
                return Enclosure(
                    Dyadic((q.numerator << g) // q.denominator, -g),
                    Dyadic(-((-q.numerator << g) // q.denominator), -g),
                )

            return rounded

        def truncated(prec, digits=src):
            d = _decimal_digits_for(prec)
            t = Fraction(digits(d).strip())
            ulp = Fraction(1, 10**d)
            lo, hi = (t, t + ulp) if t >= 0 else (t - ulp, t)
            g = prec + 1
            return Enclosure(
                Dyadic((lo.numerator << g) // lo.denominator, -g),
                Dyadic(-((-hi.numerator << g) // hi.denominator), -g),
            )

        return truncated


def mp_digits(expr):
    """Digit source for :class:`DecimalOracle` from an mpmath expression.

    ``expr(mp)`` evaluates the constant with the given mpmath context; the
    expansion is truncated toward zero, with guard digits checked so the
    truncation is exact.
    """
    import mpmath

    def digits(d: int) -> str:
        guard = 20
        while True:
            ctx = mpmath.mp.clone()
            ctx.dps = d + guard + 10
            v = expr(ctx)
            s = ctx.nstr(v, d + guard + 5, strip_zeros=False, min_fixed=-10**9, max_fixed=10**9)
            neg = s.startswith("-")
            s = s.lstrip("-")
            ip, _, fp = s.partition(".")
            fp = (fp + "0" * (d + guard))[: d + guard]
            tail = fp[d:]
            if tail.strip("9") and tail.strip("0"):
                return ("-" if neg else "") + ip + "." + fp[:d]
            guard *= 2

    return digits


# ----------------------------------------------------------------------
# local polynomials


class LocalCache:
    """LRU store for local polynomials keyed by (a, b, prec, k)."""

    def __init__(self, maxsize: int | None = 64):
        self.maxsize = maxsize
        self._data: OrderedDict = OrderedDict()
        self.hits = 0

    def get(self, key):
        v = self._data.get(key)
        if v is not None:
            self.hits += 1
            self._data.move_to_end(key)
        return v

    def put(self, key, value):
        self._data[key] = value
        self._data.move_to_end(key)
        if self.maxsize is not None:
            while len(self._data) > self.maxsize:
                self._data.popitem(last=False)

    def __len__(self):
        return len(self._data)


def _check_interval(interval):
    a, b = (Dyadic.coerce(x) for x in interval)
    if not a < b:
        raise ValueError(f"interval ({a}, {b}) is empty")
    return a, b


def _shifted(oracle: CoefficientOracle, x: Dyadic, prec: int, cache: LocalCache | None) -> IntervalPoly:
    """Enclosure of P(x + y) as a polynomial in y, cached per point."""
    key = ("S", x, ladder(prec))
    hit = cache.get(key) if cache is not None else None
    if hit is None:
        hit = oracle.fixed(ladder(prec)).copy()
        shift_inplace(hit.mid, hit.rad, x)
        if cache is not None:
            cache.put(key, hit)
    return hit


def local_poly(oracle: CoefficientOracle, interval, prec: int, cache: LocalCache | None = None) -> IntervalPoly:
    """Enclosure of Q_I(x) = P(a + (b - a) x)."""
    a, b = _check_interval(interval)
    return scale(_shifted(oracle, a, prec, cache), b - a)


def oriented_local_poly(oracle: CoefficientOracle, interval, prec: int, cache: LocalCache | None = None) -> IntervalPoly:
    """Q_I(x) or its mirror Q_I(1 - x) = P(b + (a - b) x), whichever is cheaper.

    Both have the same roots in (0, 1) up to x -> 1 - x, so every test in
    this package gives the same answer on either.  The mirror is used when
    the shift to ``b`` is cached and the shift to ``a`` is not.
    """
    a, b = _check_interval(interval)
    key = ("Q", a, b, ladder(prec))
    hit = cache.get(key) if cache is not None else None
    if hit is not None:
        return hit
    if cache is not None and cache.get(("S", a, ladder(prec))) is None and cache.get(("S", b, ladder(prec))) is not None:
        q = scale(_shifted(oracle, b, prec, cache), a - b)
    else:
        q = local_poly(oracle, (a, b), prec, cache)
    if cache is not None:
        cache.put(key, q)
    return q


def descartes_transform(oracle: CoefficientOracle, interval, prec: int, cache: LocalCache | None = None) -> IntervalPoly:
    """Enclosure of (x+1)^n P((a x + b)/(x + 1)), possibly with coefficients reversed.

    Reversal (from the mirrored orientation) leaves the sign variations intact.
    """
    key = None
    if cache is not None:
        key = (interval[0], interval[1], ladder(prec), None)
        hit = cache.get(key)
        if hit is not None:
            return hit
    g = scale_reverse_shift1(oriented_local_poly(oracle, interval, prec, cache))
    if cache is not None:
        cache.put(key, g)
    return g


def truncated_local_poly(
    oracle: CoefficientOracle, interval, k: int, prec: int, cache: LocalCache | None = None
) -> IntervalPoly:
    """Degree-k truncation of Q_I with an interval Lagrange remainder.

    Coefficients 0..k-1 are the Taylor coefficients of Q_I; coefficient k
    encloses P^(k)(xi)/k! * (b - a)^k over all xi in I.  Writing
    xi = a + t (b - a), that value is sum_{j>=k} C(j, k) q_j t^(j-k) with
    t in [0, 1], so summing the negative and the positive parts of the tail
    gives the enclosure.
    """
    if not 1 <= k:
        raise ValueError("truncation order must be positive")
    q = oriented_local_poly(oracle, interval, prec, cache)
    n = q.degree
    if k >= n:
        return q
    lo = q.mid[k] - q.rad[k]
    hi = q.mid[k] + q.rad[k]
    binom = 1
    for j in range(k + 1, n + 1):
        binom = binom * j // (j - k)
        tlo = binom * (q.mid[j] - q.rad[j])
        thi = binom * (q.mid[j] + q.rad[j])
        if tlo < 0:
            lo += tlo
        if thi > 0:
            hi += thi
    # midpoint-radius form of [lo, hi] on the same grid
    tm = (lo + hi) >> 1
    tr = max(hi - tm, tm - lo)
    return IntervalPoly._raw(q.mid[:k] + [tm], q.rad[:k] + [tr], q.exp)


def evaluate(oracle: CoefficientOracle, x, prec: int, cap: int | None = None, order: int = 0) -> Enclosure:
    """Enclosure of P(x) (or of the ``order``-th derivative) with radius below 2^-(prec+1)."""
    x = Dyadic.coerce(x)
    n = oracle.degree
    guard = n.bit_length() + 4
    limit = cap if cap is not None else 1 << 24
    while True:
        f = oracle.fixed(prec + guard)
        for _ in range(order):
            f = derivative(f)
        m, r = _horner_point(f.mid, f.rad, x)
        # r * 2^exp < 2^-(prec+1)  <=>  bitlen(r) + exp <= -(prec+1)
        if r == 0 or int(r).bit_length() + f.exp <= -(prec + 1):
            return _enclosure(m, r, f.exp)
        guard += int(r).bit_length() + f.exp + prec + 2
        if prec + guard > limit:
            raise PrecisionCapError(f"cannot evaluate at {x} within precision cap")


def cauchy_root_bound(oracle: CoefficientOracle, cap: int = 1 << 20) -> Dyadic:
    """Power of two B with all real roots in (-B, B)."""
    n = oracle.degree
    if n < 1:
        raise DegenerateInputError("constant polynomial has no roots to bound")
    for prec in precision_sequence(INITIAL_PRECISION, cap):
        lead = oracle.enclosure(n, prec)
        if not lead.contains_zero():
            break
    else:
        raise DegenerateInputError("leading coefficient cannot be separated from zero")
    lead_lo = lead.mig().to_fraction()
    top = max((oracle.enclosure(i, prec).mag().to_fraction() for i in range(n)), default=Fraction(0))
    bound = 1 + top / lead_lo
    k = 0
    while Fraction(2) ** k <= bound:
        k += 1
    return Dyadic(1, k)


def exact_rational_shift(coeffs: Sequence[Fraction], c: Fraction) -> list[Fraction]:
    """Reference f(x + c) over the rationals (used by tests and oracles)."""
    g = [Fraction(v) for v in coeffs]
    n = len(g) - 1
    for i in range(n):
        for j in range(n - 1, i - 1, -1):
            g[j] += c * g[j + 1]
    return g


__all__ = [
    "IntervalPoly",
    "SignVarRange",
    "CoefficientOracle",
    "ExactOracle",
    "BitstreamOracle",
    "DecimalOracle",
    "LocalCache",
    "OracleError",
    "mp_digits",
    "taylor_shift",
    "scale",
    "reverse",
    "shift_one",
    "scale_reverse_shift1",
    "derivative",
    "sign_variations",
    "poly_eval",
    "poly_eval_iv",
    "local_poly",
    "descartes_transform",
    "truncated_local_poly",
    "evaluate",
    "cauchy_root_bound",
    "exact_rational_shift",
]
