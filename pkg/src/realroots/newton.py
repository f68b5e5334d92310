"""Newton-Test with Boundary test: contract an interval around a root cluster."""

from __future__ import annotations

from dataclasses import dataclass, field

from .dyadic import Dyadic, Enclosure, iv_add, iv_div, iv_mul, iv_sub
from .errors import PrecisionCapError
from .points import DEFAULT_PREC_CAP, RandomSource, find_pseudo_admissible, lam_for
from .poly import CoefficientOracle, LocalCache, SignVarRange, evaluate
from .predicates import TestOutcome, zero_one_test


@dataclass(frozen=True)
class NewtonOutcome:
    success: bool
    interval: tuple | None = None
    k_guess: int | None = None
    kind: str | None = None  # "newton" or "boundary"
    events: list = field(default_factory=list, compare=False)


def _relative_eval(oracle, x, rel_bits, prec, cap, order):
    """Enclosure of P^(order)(x) excluding 0 with relative width <= 2^-rel_bits."""
    p = prec
    while p <= cap:
        v = evaluate(oracle, x, p, cap, order)
        if not v.contains_zero():
            mig = v.mig()
            # width/mig <= 2^-rel_bits
            if v.width().is_zero() or v.width().floor_log2() + rel_bits < mig.floor_log2():
                return v, p
        p = 2 * p + 1
    return None, p


def _newton_correction(oracle, x, rel_bits, prec, cap):
    pv, p1 = _relative_eval(oracle, x, rel_bits, prec, cap, 0)
    if pv is None:
        return None, p1
    dv, p2 = _relative_eval(oracle, x, rel_bits, prec, cap, 1)
    if dv is None:
        return None, p2
    return iv_div(pv, dv, rel_bits + 8), max(p1, p2)


def newton_test(
    oracle: CoefficientOracle,
    interval,
    N: int,
    prec: int,
    rng: RandomSource,
    *,
    k: int | None = None,
    cache: LocalCache | None = None,
    var_hint: SignVarRange | None = None,
    cap: int = DEFAULT_PREC_CAP,
    lam: int | None = None,
) -> NewtonOutcome:
    """Try to replace (a, b) by a subinterval of width about w/N holding all its roots.

    Flank intervals are checked with the zero/one predicate at the node's
    precision (raised only to the precision the chosen points already
    required).  Pairs whose correction terms cannot be resolved are
    discarded rather than refined.
    """
    a, b = (Dyadic.coerce(x) for x in interval)
    w = b - a
    n = oracle.degree
    if lam is None:
        lam = lam_for(n)
    logN = N.bit_length() - 1
    if N < 4 or (1 << logN) != N or logN & (logN - 1):
        raise ValueError(f"N must have the form 2^(2^l) >= 4, got {N}")
    events = []

    def certified_point(x, delta):
        return find_pseudo_admissible(oracle, x, delta, n, lam, rng, prec=prec, cap=cap)

    def is_zero(lo, hi, p):
        if not lo < hi:
            return True
        res = zero_one_test(oracle, (lo, hi), p, k, cache)
        return res.outcome is TestOutcome.ZERO

    rel_bits = logN + 16
    quarter = w.scale2(-2)
    xi, v = [], []
    for j in (1, 2, 3):
        x, _ = certified_point(a + quarter * j, w.scale2(-4))
        corr, _ = _newton_correction(oracle, x, rel_bits, prec, cap)
        xi.append(x)
        v.append(corr)

    cell = w.scale2(-(2 + logN))  # w / (4N)
    tol = w.scale2(-(5 + logN))  # w / (32N)
    mag = max(abs(a), abs(b), Dyadic(1))
    op_prec = max(64, mag.floor_log2() - w.floor_log2() + 2 * rel_bits + 16)
    wq = w.to_fraction()
    tried = set()

    for i, j in ((0, 1), (0, 2), (1, 2)):
        if v[i] is None or v[j] is None:
            events.append({"pair": (i + 1, j + 1), "result": "unresolved"})
            continue
        denom = iv_sub(v[i], v[j], op_prec)
        if denom.contains_zero():
            events.append({"pair": (i + 1, j + 1), "result": "degenerate"})
            continue
        ktil = iv_div(iv_sub(Enclosure.point(xi[j]), Enclosure.point(xi[i]), op_prec), denom, op_prec)
        lam_enc = iv_add(Enclosure.point(xi[i]), iv_mul(ktil, v[i], op_prec), op_prec)
        if lam_enc.width() > tol.scale2(1):
            events.append({"pair": (i + 1, j + 1), "result": "imprecise"})
            continue
        lam_t = lam_enc.mid()
        if not a <= lam_t <= b:
            events.append({"pair": (i + 1, j + 1), "result": "outside"})
            continue
        ell = int((lam_t.to_fraction() - a.to_fraction()) * 4 * N / wq)
        ell = min(max(ell, 0), 4 * N)
        if ell in tried:
            # same cell as a pair already rejected
            events.append({"pair": (i + 1, j + 1), "result": "repeat"})
            continue
        tried.add(ell)
        a_ij = a + cell * max(0, ell - 1)
        b_ij = a + cell * min(4 * N, ell + 2)
        p_flank = prec
        try:
            if a_ij == a:
                a_star = a
            else:
                a_star, pa = certified_point(a_ij, tol)
                p_flank = max(p_flank, pa)
            if b_ij == b:
                b_star = b
            else:
                b_star, pb = certified_point(b_ij, tol)
                p_flank = max(p_flank, pb)
        except PrecisionCapError:
            events.append({"pair": (i + 1, j + 1), "result": "no-point"})
            continue
        if is_zero(a, a_star, p_flank) and is_zero(b_star, b, p_flank):
            # with v = P/P' the quotient above is minus the cluster size
            kg = abs(round(ktil.mid().to_fraction()))
            kg = max(1, min(kg, n))
            if var_hint is not None:
                kg = max(1, min(kg, var_hint.v_max))
            events.append({"pair": (i + 1, j + 1), "result": "success"})
            return NewtonOutcome(True, (a_star, b_star), kg, "newton", events)
        events.append({"pair": (i + 1, j + 1), "result": "flank-nonzero"})

    # Boundary test
    offset = w.scale2(-(1 + logN))  # w / (2N)
    try:
        ml, pl = certified_point(a + offset, tol)
        mr, pr = certified_point(b - offset, tol)
    except PrecisionCapError:
        events.append({"boundary": "no-point"})
        return NewtonOutcome(False, events=events)
    if is_zero(ml, b, max(prec, pl)):
        events.append({"boundary": "left"})
        return NewtonOutcome(True, (a, ml), None, "boundary", events)
    if is_zero(a, mr, max(prec, pr)):
        events.append({"boundary": "right"})
        return NewtonOutcome(True, (mr, b), None, "boundary", events)
    events.append({"boundary": "failed"})
    return NewtonOutcome(False, events=events)


__all__ = ["NewtonOutcome", "newton_test"]
