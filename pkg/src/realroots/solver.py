"""Subdivision drivers: ANewDsc, its bisection-only variant, and classic Descartes."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import accumulate

from .dyadic import INITIAL_PRECISION, Dyadic, midpoint, precision_sequence
from .errors import PrecisionCapError, SolveAborted
from .newton import newton_test
from .points import (
    DEFAULT_PREC_CAP,
    Multipoint,
    RandomSource,
    find_admissible,
    find_pseudo_admissible,
    lam_for,
    snapped_spacing,
)
from .poly import CoefficientOracle, ExactOracle, LocalCache, SignVarRange, cauchy_root_bound, evaluate, mpz
from .predicates import TestOutcome, TestResult, proper_split_check, zero_one_test

MODES = ("classic", "adsc", "anewdsc")


@dataclass
class SolveConfig:
    mode: str = "anewdsc"
    seed: int = 0
    initial_precision: int = INITIAL_PRECISION
    rho_cap: int = DEFAULT_PREC_CAP
    newton_delay_threshold: int | None = None  # None: ceil(log2 n)
    truncation: bool = True
    admissible: str = "pseudo"  # or "deterministic"
    cache_size: int | None = 64
    max_nodes: int | None = None
    time_limit: float | None = None
    trace: bool = False

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.admissible not in ("pseudo", "deterministic"):
            raise ValueError(f"unknown admissible variant {self.admissible!r}")
        if self.rho_cap < self.initial_precision:
            raise ValueError("rho_cap must be at least the initial precision")


@dataclass
class SolveStats:
    tree_nodes: int = 0
    newton_attempts: int = 0
    newton_successes: int = 0
    newton_steps: int = 0
    boundary_steps: int = 0
    bisections: int = 0
    max_precision_bits: int = 0
    max_var_chain: int = 0
    truncation_hits: int = 0
    wall_time: float = 0.0

    def as_json(self) -> dict:
        d = asdict(self)
        d["wall_time_s"] = d.pop("wall_time")
        return d


@dataclass
class IsolationResult:
    intervals: list
    stats: SolveStats
    points: list = field(default_factory=list)
    trace: list | None = None

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)

    @property
    def root_count(self) -> int:
        return len(self.intervals) + len(self.points)

    def as_json(self) -> dict:
        return {
            "roots": [{"a": str(a), "b": str(b)} for a, b in self.intervals],
            "points": [str(p) for p in self.points],
            "stats": self.stats.as_json(),
        }


@dataclass
class ActiveNode:
    a: Dyadic
    b: Dyadic
    N: int = 4
    rho: int = INITIAL_PRECISION
    k_trunc: int | None = None
    d_proper: int | None = None  # None: no proper split seen yet on the path
    parent_var: SignVarRange | None = None
    chain: int = 0
    result: TestResult | None = None


class _Clock:
    def __init__(self, cfg: SolveConfig, stats: SolveStats):
        self.cfg, self.stats = cfg, stats
        self.t0 = time.perf_counter()

    def tick(self):
        self.stats.wall_time = time.perf_counter() - self.t0
        cfg = self.cfg
        if cfg.max_nodes is not None and self.stats.tree_nodes >= cfg.max_nodes:
            raise SolveAborted(f"node limit {cfg.max_nodes} reached", self.stats, reason="max_nodes")
        if cfg.time_limit is not None and self.stats.wall_time > cfg.time_limit:
            raise SolveAborted(f"time limit {cfg.time_limit}s exceeded", self.stats, reason="timeout")


def _isqrt_pow2(N: int) -> int:
    return 1 << ((N.bit_length() - 1) // 2)


def _exact_value(oracle: ExactOracle, x: Dyadic) -> Fraction:
    xq = x.to_fraction()
    acc = Fraction(0)
    for c in reversed(oracle.values):
        acc = acc * xq + c.to_fraction()
    return acc


def certify_endpoint(oracle: CoefficientOracle, x, cap: int) -> None:
    """Raise PrecisionCapError when P(x) cannot be shown to be nonzero."""
    x = Dyadic.coerce(x)
    if getattr(oracle, "exact", False):
        if _exact_value(oracle, x) == 0:
            raise PrecisionCapError(f"region endpoint {x} is a root", endpoint=x)
        return
    for p in precision_sequence(INITIAL_PRECISION, cap):
        try:
            if not evaluate(oracle, x, p, cap).contains_zero():
                return
        except PrecisionCapError:
            break
    raise PrecisionCapError(f"cannot certify P({x}) != 0 below precision cap", endpoint=x)


def default_region(oracle: CoefficientOracle, cap: int = DEFAULT_PREC_CAP):
    B = cauchy_root_bound(oracle, cap)
    return -B, B


def isolate(oracle: CoefficientOracle, region=None, cfg: SolveConfig | None = None) -> IsolationResult:
    """Isolate the real roots of the oracle's polynomial inside the open ``region``."""
    cfg = cfg or SolveConfig()
    if cfg.mode == "classic":
        return isolate_classic(oracle, region, cfg)
    stats = SolveStats()
    clock = _Clock(cfg, stats)
    trace = [] if cfg.trace else None
    n = oracle.degree
    if n < 1:
        return IsolationResult([], stats, trace=trace)
    if region is None:
        a0, b0 = default_region(oracle, cfg.rho_cap)
    else:
        a0, b0 = (Dyadic.coerce(x) for x in region)
        if not a0 < b0:
            raise ValueError("empty region")
        certify_endpoint(oracle, a0, cfg.rho_cap)
        certify_endpoint(oracle, b0, cfg.rho_cap)

    rng = RandomSource(cfg.seed)
    cache = LocalCache(cfg.cache_size)
    lam = lam_for(n)
    delay = cfg.newton_delay_threshold
    if delay is None:
        delay = (n - 1).bit_length()
    use_newton = cfg.mode == "anewdsc"

    def note(node, outcome, action):
        if trace is not None:
            trace.append({
                "a": str(node.a), "b": str(node.b), "N": node.N, "rho": node.rho,
                "outcome": outcome, "action": action,
            })

    def run_test(a, b, rho, k):
        """Zero/one test with precision escalation until the answer is usable."""
        while True:
            res = zero_one_test(oracle, (a, b), rho, k, cache)
            if res.decisive:
                return res, rho
            rho = 2 * rho + 1
            if rho > cfg.rho_cap:
                raise PrecisionCapError(
                    f"precision cap {cfg.rho_cap} exceeded on ({a}, {b}); input may not be square-free",
                    interval=(a, b),
                )

    def pick_point(m, delta, rho):
        if cfg.admissible == "pseudo":
            return find_pseudo_admissible(oracle, m, delta, n, lam, rng, prec=rho, cap=cfg.rho_cap)
        count = 2 * -(-n // 2)
        return find_admissible(oracle, Multipoint(m, snapped_spacing(delta, count), count), cap=cfg.rho_cap)

    found = []
    stack = [ActiveNode(a0, b0, 4, cfg.initial_precision)]
    while stack:
        clock.tick()
        node = stack.pop()
        stats.tree_nodes += 1
        k = node.k_trunc if cfg.truncation else None
        if node.result is not None and node.result.decisive:
            res = node.result
        else:
            res, node.rho = run_test(node.a, node.b, node.rho, k)
        stats.max_precision_bits = max(stats.max_precision_bits, node.rho)
        if res.truncated:
            stats.truncation_hits += 1
        chain = node.chain + 1 if node.parent_var == res.var else 1
        stats.max_var_chain = max(stats.max_var_chain, chain)

        if res.outcome is TestOutcome.ZERO:
            note(node, "0", "discard")
            continue
        if res.outcome is TestOutcome.ONE:
            note(node, "1", "report")
            found.append((node.a, node.b))
            continue

        if use_newton and (node.d_proper is None or node.d_proper >= delay):
            stats.newton_attempts += 1
            out = newton_test(
                oracle, (node.a, node.b), node.N, node.rho, rng,
                k=k, cache=cache, var_hint=res.var, cap=cfg.rho_cap, lam=lam,
            )
            if out.success:
                stats.newton_successes += 1
                if out.kind == "newton":
                    stats.newton_steps += 1
                    k_next = out.k_guess if cfg.truncation else None
                else:
                    stats.boundary_steps += 1
                    k_next = k
                note(node, "*", out.kind)
                a1, b1 = out.interval
                stack.append(ActiveNode(
                    a1, b1, node.N * node.N, node.rho, k_next, node.d_proper, res.var, chain,
                ))
                continue

        # bisection
        stats.bisections += 1
        note(node, "*", "bisect")
        w = node.b - node.a
        m, rho_used = pick_point(midpoint(node.a, node.b), w.scale2(-3), node.rho)
        rho_child = max(node.rho, rho_used)
        N_child = max(4, _isqrt_pow2(node.N))
        left, rho_l = run_test(node.a, m, rho_child, k)
        right, rho_r = run_test(m, node.b, rho_child, k)
        if node.N == 4 and proper_split_check(left.var, right.var):
            d_child = 0
        else:
            d_child = None if node.d_proper is None else node.d_proper + 1
        stack.append(ActiveNode(m, node.b, N_child, rho_r, k, d_child, res.var, chain, right))
        stack.append(ActiveNode(node.a, m, N_child, rho_l, k, d_child, res.var, chain, left))

    stats.wall_time = time.perf_counter() - clock.t0
    found.sort()
    return IsolationResult(found, stats, trace=trace)


# ----------------------------------------------------------------------
# classic exact Descartes


def _int_taylor1(q: list) -> list:
    """q(x + 1) for an integer coefficient list (lowest degree first)."""
    q = list(q)
    for i in range(len(q) - 1):
        q[i:] = list(accumulate(q[:i - 1 if i else None:-1]))[::-1]
    return q


def _int_shift(q: list, c: int) -> list:
    q = list(q)
    if c == 0:
        return q
    for i in range(len(q) - 1):
        q[i:] = list(accumulate(q[:i - 1 if i else None:-1], lambda acc, x: x + acc * c))[::-1]
    return q


def _descartes_var(q: list) -> int:
    """Sign variations of (x+1)^n q(1/(x+1))."""
    t = _int_taylor1(q[::-1])
    v, last = 0, 0
    for c in t:
        if c:
            s = 1 if c > 0 else -1
            if last and s != last:
                v += 1
            last = s
    return v


def isolate_classic(oracle, region=None, cfg: SolveConfig | None = None) -> IsolationResult:
    """Textbook Descartes bisection over exact integers; midpoint roots are reported as points."""
    cfg = cfg or SolveConfig(mode="classic")
    if not isinstance(oracle, ExactOracle):
        raise TypeError("classic mode needs exactly representable coefficients")
    stats = SolveStats()
    clock = _Clock(cfg, stats)
    trace = [] if cfg.trace else None
    n = oracle.degree
    if n < 1:
        return IsolationResult([], stats, trace=trace)
    if region is None:
        a0, b0 = default_region(oracle, cfg.rho_cap)
    else:
        a0, b0 = (Dyadic.coerce(x) for x in region)
        if not a0 < b0:
            raise ValueError("empty region")
        certify_endpoint(oracle, a0, cfg.rho_cap)
        certify_endpoint(oracle, b0, cfg.rho_cap)

    # integer polynomial Q(x) proportional to P(a0 + (b0 - a0) x)
    coeffs = oracle.values
    e_min = min(c.exp for c in coeffs if c.man)
    ints = [mpz(c.man) << (c.exp - e_min) if c.man else mpz(0) for c in coeffs]
    s = -min(a0.exp, b0.exp, 0)
    A = a0.man << (a0.exp + s)
    W = (b0 - a0).man << ((b0 - a0).exp + s)
    r = [c << (s * (n - i)) for i, c in enumerate(ints)]
    q = _int_shift(r, A)
    pw, scaled = mpz(1), []
    for c in q:
        scaled.append(c * pw)
        pw *= W
    q = scaled

    found, points = [], []
    stack = [(q, a0, b0)]
    while stack:
        clock.tick()
        q, a, b = stack.pop()
        stats.tree_nodes += 1
        v = _descartes_var(q)
        if v == 0:
            continue
        if v == 1:
            found.append((a, b))
            continue
        stats.bisections += 1
        m = midpoint(a, b)
        d = len(q) - 1
        ql = [c << (d - i) for i, c in enumerate(q)]
        qr = _int_taylor1(ql)
        if qr[0] == 0:
            points.append(m)
            qr = qr[1:]
        stack.append((qr, m, b))
        stack.append((ql, a, m))
    stats.wall_time = time.perf_counter() - clock.t0
    found.sort()
    points.sort()
    return IsolationResult(found, stats, points=points, trace=trace)


__all__ = [
    "MODES",
    "ActiveNode",
    "IsolationResult",
    "SolveConfig",
    "SolveStats",
    "certify_endpoint",
    "default_region",
    "isolate",
    "isolate_classic",
]
