"""Choice of subdivision points where |P| is certified nonzero."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .dyadic import INITIAL_PRECISION, Dyadic, precision_sequence
from .errors import PrecisionCapError
from .poly import CoefficientOracle, evaluate

DEFAULT_PREC_CAP = 1 << 20


@dataclass(frozen=True)
class Multipoint:
    """Grid center + i*spacing for i = -ceil(count/2) .. ceil(count/2)."""

    center: Dyadic
    spacing: Dyadic
    count: int

    @property
    def half(self) -> int:
        return -(-self.count // 2)

    def point(self, i: int) -> Dyadic:
        return self.center + self.spacing * i

    def points(self) -> list[Dyadic]:
        return [self.point(i) for i in range(-self.half, self.half + 1)]


class RandomSource:
    """Seeded pseudo-random stream; the same seed replays the same draws."""

    def __init__(self, seed: int = 0):
        self.seed = seed & (2**64 - 1)
        self._rng = random.Random(self.seed)

    def randint(self, lo: int, hi: int) -> int:
        return self._rng.randint(lo, hi)


def lam_for(n: int) -> int:
    return max(2, (max(n, 1) - 1).bit_length())


def snapped_spacing(delta: Dyadic, count: int) -> Dyadic:
    """Largest power of two <= 2*delta/count."""
    # floor(log2(2*delta/count)) via exact integer comparison
    e = delta.floor_log2() + 1 - (count.bit_length() - 1)
    while Dyadic(1, e) * count > delta.scale2(1):
        e -= 1
    return Dyadic(1, e)


def find_pseudo_admissible(
    oracle: CoefficientOracle,
    m,
    delta,
    n: int,
    lam: int,
    rng: RandomSource,
    prec: int = INITIAL_PRECISION,
    cap: int = DEFAULT_PREC_CAP,
):
    """Random grid point near ``m`` with a certificate P(m') != 0.

    The grid has 2^lam * n points of power-of-two spacing spanning
    [m - delta, m + delta].  One fresh draw per precision level
    63, 127, 255, ...; a draw is kept once |P~(m_j)| > 2^(2 - prec), which
    together with the evaluation error below 2^-prec certifies P(m_j) != 0.
    Returns ``(point, precision_used)``.
    """
    m = Dyadic.coerce(m)
    delta = Dyadic.coerce(delta)
    if delta.sign() <= 0:
        raise ValueError("perturbation budget must be positive")
    count = (1 << lam) * max(n, 1)
    eps = snapped_spacing(delta, count)
    half = count // 2
    for p in precision_sequence(prec, cap):
        point = m + eps * rng.randint(-half, half)
        v = evaluate(oracle, point, p, cap)
        # |mid| > 2^(2-p)
        mid = v.mid()
        if mid.man and mid.floor_log2() >= 2 - p and not v.contains_zero():
            if abs(mid) > Dyadic(1, 2 - p):
                return point, p
    raise PrecisionCapError(f"no certified point near {m} below precision cap {cap}", interval=(m - delta, m + delta))


def find_admissible(oracle: CoefficientOracle, mp: Multipoint, cap: int = DEFAULT_PREC_CAP):
    """Grid point m* with |P(m*)| >= 1/4 max_i |P(m_i)| (deterministic).

    Returns ``(point, precision_used)``.
    """
    pts = mp.points()
    p = 2
    while p <= cap:
        best, best_val = None, None
        for x in pts:
            val = abs(evaluate(oracle, x, p, cap).mid())
            if best_val is None or val > best_val:
                best, best_val = x, val
        if best_val > Dyadic(1, 2 - p):
            return best, p
        p *= 2
    raise PrecisionCapError(f"no admissible point around {mp.center} below precision cap {cap}")
