"""Benchmark runner: generate family instances, solve, verify with Sturm sequences."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import gcd

from .errors import PrecisionCapError, SolveAborted
from .families import gen_family
from .poly import ExactOracle
from .solver import MODES, SolveConfig, SolveStats, isolate
from .sturm import DEFAULT_DEGREE_CAP, is_square_free, sign_at, sturm_count


@dataclass
class BenchConfig:
    families: list = field(default_factory=lambda: ["mignotte"])
    sizes: list = field(default_factory=lambda: [(64, 64)])  # (n, tau) pairs
    modes: list = field(default_factory=lambda: ["anewdsc"])
    seed: int = 0
    scale: int = 256
    verify: bool = True
    oracle_cap: int = DEFAULT_DEGREE_CAP
    check_square_free: bool = False
    primitive: bool = True
    timeout: float = 600.0
    max_nodes: int | None = None
    truncation: bool = True
    workers: int = 1

    def __post_init__(self):
        for m in self.modes:
            if m not in MODES:
                raise ValueError(f"unknown mode {m!r}")


@dataclass
class BenchRecord:
    family: str
    n: int
    tau: int
    seed: int
    mode: str
    root_count: int | None
    stats: dict
    oracle_count: int | None
    verified: bool
    wall_time_s: float
    timed_out: bool = False
    error: str | None = None

    def as_json(self) -> dict:
        return asdict(self)


# Published record schema (JSON Schema draft 2020-12 subset).
REPORT_SCHEMA = {
    "type": "object",
    "required": [
        "family", "n", "tau", "seed", "mode", "root_count", "stats",
        "oracle_count", "verified", "wall_time_s", "timed_out", "error",
    ],
    "properties": {
        "family": {"type": "string"},
        "n": {"type": "integer"},
        "tau": {"type": "integer"},
        "seed": {"type": "integer"},
        "mode": {"enum": list(MODES)},
        "root_count": {"type": ["integer", "null"]},
        "stats": {
            "type": "object",
            "required": [
                "tree_nodes", "newton_attempts", "newton_successes", "bisections",
                "max_precision_bits", "max_var_chain", "truncation_hits", "wall_time_s",
            ],
            "additionalProperties": {"type": "number"},
        },
        "oracle_count": {"type": ["integer", "null"]},
        "verified": {"type": "boolean"},
        "wall_time_s": {"type": "number"},
        "timed_out": {"type": "boolean"},
        "error": {"type": ["string", "null"]},
    },
}


def primitive_part(coeffs: list[int]) -> list[int]:
    g = 0
    for c in coeffs:
        g = gcd(g, c)
    g = g if coeffs[-1] > 0 else -g
    return [c // g for c in coeffs] if g not in (0, 1) else list(coeffs)


def verify_result(coeffs: list[int], result, oracle_cap: int = DEFAULT_DEGREE_CAP):
    """(oracle_count, verified) for an isolation result of an integer polynomial.

    Verified means the total counts agree, every interval holds exactly one
    root and every reported point is an exact root.
    """
    total = sturm_count(coeffs, None, oracle_cap)
    ok = result.root_count == total
    ok = ok and all(sturm_count(coeffs, iv, oracle_cap) == 1 for iv in result.intervals)
    ok = ok and all(sign_at(coeffs, p) == 0 for p in result.points)
    return total, ok


def run_instance(family, n, tau, mode, cfg: BenchConfig) -> BenchRecord:
    coeffs = gen_family(family, n, tau, cfg.seed, cfg.scale)
    if cfg.primitive:
        coeffs = primitive_part(coeffs)
    base = dict(family=family, n=n, tau=tau, seed=cfg.seed, mode=mode)
    if cfg.check_square_free and len(coeffs) - 1 <= cfg.oracle_cap and not is_square_free(coeffs):
        return BenchRecord(**base, root_count=None, stats=SolveStats().as_json(), oracle_count=None,
                           verified=False, wall_time_s=0.0, error="not square-free")
    scfg = SolveConfig(mode=mode, seed=cfg.seed, time_limit=cfg.timeout,
                       max_nodes=cfg.max_nodes, truncation=cfg.truncation)
    t0 = time.perf_counter()
    try:
        res = isolate(ExactOracle(coeffs), None, scfg)
    except SolveAborted as exc:
        stats = exc.stats or SolveStats()
        return BenchRecord(**base, root_count=None, stats=stats.as_json(), oracle_count=None, verified=False,
                           wall_time_s=round(time.perf_counter() - t0, 1), timed_out=True, error=str(exc))
    except PrecisionCapError as exc:
        return BenchRecord(**base, root_count=None, stats=SolveStats().as_json(), oracle_count=None,
                           verified=False, wall_time_s=round(time.perf_counter() - t0, 1), error=str(exc))
    wall = round(time.perf_counter() - t0, 1)
    oracle_count, verified = None, False
    if cfg.verify and len(coeffs) - 1 <= cfg.oracle_cap:
        oracle_count, verified = verify_result(coeffs, res, cfg.oracle_cap)
    return BenchRecord(**base, root_count=res.root_count, stats=res.stats.as_json(),
                       oracle_count=oracle_count, verified=verified, wall_time_s=wall)


def _run_job(job):
    return run_instance(*job)


def run_bench(cfg: BenchConfig):
    """Yield one :class:`BenchRecord` per (family, size, mode), in order."""
    jobs = [(f, n, tau, mode, cfg) for f in cfg.families for n, tau in cfg.sizes for mode in cfg.modes]
    if cfg.workers <= 1:
        for job in jobs:
            yield _run_job(job)
        return
    with ProcessPoolExecutor(cfg.workers) as pool:
        # map keeps submission order, so the caller is the single writer
        yield from pool.map(_run_job, jobs)


__all__ = [
    "REPORT_SCHEMA",
    "BenchConfig",
    "BenchRecord",
    "primitive_part",
    "run_bench",
    "run_instance",
    "verify_result",
]
