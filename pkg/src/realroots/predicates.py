"""Root-counting predicates built on interval sign variations."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .poly import (
    CoefficientOracle,
    LocalCache,
    SignVarRange,
    derivative,
    descartes_transform,
    ladder,
    scale_reverse_shift1,
    sign_variations,
    truncated_local_poly,
)


class TestOutcome(Enum):
    ZERO = "0"
    ONE = "1"
    UNKNOWN = "*"

    __test__ = False  # keep pytest from collecting this


def _outcome(var: SignVarRange) -> TestOutcome:
    if var == (0, 0):
        return TestOutcome.ZERO
    if var == (1, 1):
        return TestOutcome.ONE
    return TestOutcome.UNKNOWN


@dataclass(frozen=True)
class TestResult:
    """Outcome of :func:`zero_one_test` plus bookkeeping for the solver.

    ``k`` is the truncation order that produced the answer (None when the full
    local polynomial was used) and ``truncated`` tells whether a truncated
    polynomial settled the node.
    """

    outcome: TestOutcome
    var: SignVarRange
    k: int | None = None
    truncated: bool = False

    __test__ = False

    @property
    def decisive(self) -> bool:
        """Zero, One, or a range excluding both 0 and 1 (subdivide)."""
        return self.outcome is not TestOutcome.UNKNOWN or self.var.v_min >= 2


def var_test(oracle: CoefficientOracle, interval, prec: int, cache: LocalCache | None = None):
    """Interval sign-variation test on the full Descartes transform."""
    var = sign_variations(descartes_transform(oracle, interval, prec, cache))
    return _outcome(var), var


def _truncated_ranges(oracle, interval, k, prec, cache):
    key = (interval[0], interval[1], ladder(prec), k)
    hit = cache.get(key) if cache is not None else None
    if hit is None:
        q = truncated_local_poly(oracle, interval, k, prec, cache)
        hit = (scale_reverse_shift1(q), scale_reverse_shift1(derivative(q)))
        if cache is not None:
            cache.put(key, hit)
    g, h = hit
    var_g = sign_variations(g)
    if var_g == (1, 1):
        return var_g, sign_variations(h)
    return var_g, None


def truncated_test(oracle: CoefficientOracle, interval, k: int, prec: int, cache: LocalCache | None = None) -> TestOutcome:
    if k >= oracle.degree:
        # nothing is truncated, so the plain sign-variation count is exact
        return var_test(oracle, interval, prec, cache)[0]
    var_g, var_h = _truncated_ranges(oracle, interval, k, prec, cache)
    if var_g == (0, 0):
        return TestOutcome.ZERO
    if var_g == (1, 1) and var_h == (0, 0):
        return TestOutcome.ONE
    return TestOutcome.UNKNOWN


def zero_one_test(
    oracle: CoefficientOracle,
    interval,
    prec: int,
    k: int | None = None,
    cache: LocalCache | None = None,
) -> TestResult:
    """Zero/one predicate at a fixed precision.

    With a truncation order ``k`` the truncated test runs first; when it is
    inconclusive ``k`` is doubled, and once a partial expansion would no longer
    be cheaper than the full one the full sign-variation test decides.
    """
    n = oracle.degree
    # past n/4 coefficients a partial shift costs about as much as a full one
    while k is not None and 4 * k <= n:
        var_g, var_h = _truncated_ranges(oracle, interval, k, prec, cache)
        if var_g == (0, 0):
            return TestResult(TestOutcome.ZERO, var_g, k, True)
        if var_g == (1, 1) and var_h == (0, 0):
            return TestResult(TestOutcome.ONE, var_g, k, True)
        k *= 2
    outcome, var = var_test(oracle, interval, prec, cache)
    return TestResult(outcome, var, None, False)


def proper_split_check(left: SignVarRange, right: SignVarRange) -> bool:
    """Both children keep a nonzero sign-variation count (conservatively)."""
    return left.v_min >= 1 and right.v_min >= 1

