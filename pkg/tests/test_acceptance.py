"""Acceptance gate: one PASS/FAIL line per criterion.

Run alone with ``pytest tests/test_acceptance.py -s`` or as part of the full
suite; the lines are repeated in the terminal summary either way.
"""

import json
import os
import random
import subprocess
import sys
import time

import mpmath
import pytest
from conftest import ACCEPT_LINES, CASES, PROPERTY_FAILURES, PROPERTY_TESTS_SEEN

from realroots.errors import SolveAborted
from realroots.families import clustered, mignotte, nested_mignotte
from realroots.poly import DecimalOracle, ExactOracle, mp_digits
from realroots.solver import SolveConfig, isolate, isolate_classic
from realroots.sturm import is_square_free, sign_at, sturm_count

pytestmark = pytest.mark.slow

# time budgets (seconds)
C1_BUDGET = 60.0
C2_BUDGET = 30.0
C4_BUDGET = 120.0
C3_ADSC_CAP = 600.0
# node bars
C3_ANEW_MAX = 200
C3_ADSC_MIN = 5000
C5_ANEW_CHAIN_MAX = 40
C5_ADSC_CHAIN_MIN = 512
C6_RATIO_MAX = 2.0
C8_MIN_CASES = 10_000


def report(num, ok, detail):
    line = f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPT_LINES.append(line)
    print(line)
    assert ok, line


def _mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def random_square_free(rng):
    while True:
        d = rng.randint(1, 32)
        cs = [rng.randint(-(2**16) + 1, 2**16 - 1) for _ in range(d + 1)]
        if cs[-1] == 0 or cs[0] == 0 and d == 1:
            continue
        if is_square_free(cs):
            return cs


def factor_product(rng):
    """Product of distinct linear (q x - p) and quadratic (x^2 + b x + c) factors."""
    while True:
        factors = set()
        for _ in range(rng.randint(1, 8)):
            if rng.random() < 0.6:
                q, p = rng.randint(1, 9), rng.randint(-40, 40)
                factors.add((-p, q))
            else:
                factors.add((rng.randint(-30, 30), rng.randint(-20, 20), 1))
        poly = [1]
        for f in factors:
            poly = _mul(poly, list(f))
        if is_square_free(poly):
            return poly


def check_isolation(coeffs, res):
    """Sturm agreement: count, one root per interval, sorted and disjoint."""
    if res.root_count != sturm_count(coeffs, degree_cap=64):
        return False
    prev = None
    for a, b in res.intervals:
        a, b = a.to_fraction(), b.to_fraction()
        if not a < b or (prev is not None and a < prev):
            return False
        # open interval: a root sitting on an endpoint would not be isolated
        if sign_at(coeffs, a) == 0 or sign_at(coeffs, b) == 0:
            return False
        if sturm_count(coeffs, (a, b), degree_cap=64) != 1:
            return False
        prev = b
    return all(sign_at(coeffs, p.to_fraction()) == 0 for p in res.points)


def test_criterion_1_oracle_correctness():
    rng = random.Random(20240601)
    instances = [random_square_free(rng) for _ in range(200)] + [factor_product(rng) for _ in range(50)]
    t0 = time.perf_counter()
    bad = [i for i, cs in enumerate(instances) if not check_isolation(cs, isolate(ExactOracle(cs), None, SolveConfig(seed=i)))]
    dt = time.perf_counter() - t0
    report(1, not bad and dt < C1_BUDGET, f"{len(instances)} instances, {len(bad)} mismatches, {dt:.1f}s (< {C1_BUDGET:.0f}s)")


@pytest.mark.parametrize("n,tau", [(257, 14), (513, 14), (129, 128), (129, 512)])
def test_criterion_2_mignotte_counts(n, tau):
    t0 = time.perf_counter()
    res = isolate(ExactOracle(mignotte(n, tau)))
    dt = time.perf_counter() - t0
    ok = len(res.intervals) == 3 and not res.points and dt < C2_BUDGET
    report(2, ok, f"mignotte({n},{tau}): {len(res.intervals)} intervals, {dt:.1f}s (< {C2_BUDGET:.0f}s)")


def test_criterion_3_tree_compression():
    P = ExactOracle(mignotte(129, 512))
    anew = isolate(P, None, SolveConfig(mode="anewdsc")).stats.tree_nodes
    # the adsc tree only needs a lower bound: stop it once it passes the bar
    t0 = time.perf_counter()
    try:
        isolate(P, None, SolveConfig(mode="adsc", max_nodes=C3_ADSC_MIN, time_limit=C3_ADSC_CAP))
        adsc = None
    except SolveAborted as exc:
        adsc = exc.stats.tree_nodes if exc.reason == "max_nodes" else None
    dt = time.perf_counter() - t0
    ok = anew <= C3_ANEW_MAX and adsc is not None and adsc >= C3_ADSC_MIN
    report(3, ok, f"anewdsc nodes {anew} (<= {C3_ANEW_MAX}); adsc nodes >= {adsc} (bar {C3_ADSC_MIN}, {dt:.0f}s)")


def test_criterion_4_nested_mignotte():
    t0 = time.perf_counter()
    res = isolate(ExactOracle(nested_mignotte(260, 140)))
    dt = time.perf_counter() - t0
    ok = len(res.intervals) == 12 and not res.points and dt < C4_BUDGET
    report(4, ok, f"nested_mignotte(260,140): {len(res.intervals)} intervals, {dt:.1f}s (< {C4_BUDGET:.0f}s)")


def test_criterion_5_chain_lengths():
    P = ExactOracle(mignotte(64, 64))
    anew = isolate(P, None, SolveConfig(mode="anewdsc")).stats
    adsc = isolate(P, None, SolveConfig(mode="adsc")).stats
    ok = (anew.max_var_chain <= C5_ANEW_CHAIN_MAX and anew.newton_successes >= 1
          and adsc.max_var_chain >= C5_ADSC_CHAIN_MIN)
    report(5, ok, f"anewdsc chain {anew.max_var_chain} (<= {C5_ANEW_CHAIN_MAX}), newton successes "
           f"{anew.newton_successes}; adsc chain {adsc.max_var_chain} (>= {C5_ADSC_CHAIN_MIN})")


def test_criterion_6_truncation():
    details, ok = [], True
    for seed in (0, 1, 2):
        cs = clustered(64, seed)
        runs = {}
        for on in (True, False):
            t0 = time.perf_counter()
            res = isolate(ExactOracle(cs), None, SolveConfig(truncation=on, seed=seed))
            runs[on] = (res, time.perf_counter() - t0)
        (r_on, t_on), (r_off, t_off) = runs[True], runs[False]
        same = r_on.root_count == r_off.root_count and check_isolation(cs, r_on) and check_isolation(cs, r_off)
        # both runs isolate against the same oracle, so matching roots means
        # each interval of one run meets exactly one interval of the other
        for a, b in r_on.intervals:
            hits = [1 for c, d in r_off.intervals if max(a, c) < min(b, d)
                    and sturm_count(cs, (max(a, c).to_fraction(), min(b, d).to_fraction())) == 1]
            same &= len(hits) == 1
        ratio = t_on / t_off
        ok &= same and r_on.stats.truncation_hits >= 1 and ratio <= C6_RATIO_MAX
        details.append(f"seed {seed}: {r_on.root_count} roots, hits {r_on.stats.truncation_hits}, ratio {ratio:.2f}")
    report(6, ok, "; ".join(details))


def test_criterion_7_bitstream():
    # (x - 1)(pi x - e) = pi x^2 - (pi + e) x + e
    P = DecimalOracle([
        mp_digits(lambda mp: mp.e),
        mp_digits(lambda mp: -(mp.pi + mp.e)),
        mp_digits(lambda mp: mp.pi),
    ])
    res = isolate(P)
    with mpmath.workdps(50):
        targets = [mpmath.mpf(1), mpmath.e / mpmath.pi]
        ivs = [(mpmath.mpf(a.man) * mpmath.mpf(2) ** a.exp, mpmath.mpf(b.man) * mpmath.mpf(2) ** b.exp)
               for a, b in res.intervals]
        located = all(sum(1 for lo, hi in ivs if lo < t < hi) == 1 for t in targets)
    try:
        isolate_classic(P)
        refused = False
    except TypeError:
        refused = True
    ok = len(res.intervals) == 2 and not res.points and located and refused
    report(7, ok, f"{len(res.intervals)} intervals around 1 and e/pi: {located}; classic refuses: {refused}")


def _standalone_tallies():
    """Run the property suites in a child process and read back their tallies."""
    out = os.path.join(os.path.dirname(__file__), ".property_cases.json")
    env = dict(os.environ, REALROOTS_CASES_OUT=out)
    subprocess.run([sys.executable, "-m", "pytest", "-q", "-m", "property", "-p", "no:cacheprovider",
                    os.path.dirname(__file__)], env=env, check=False, capture_output=True)
    with open(out) as fh:
        data = json.load(fh)
    os.remove(out)
    return data["cases"], data["failures"]


def test_criterion_8_invariant_suites():
    if PROPERTY_TESTS_SEEN and sum(CASES.values()):
        cases, failures = dict(CASES), list(PROPERTY_FAILURES)
    else:
        cases, failures = _standalone_tallies()
    total = sum(cases.values())
    ok = total >= C8_MIN_CASES and not failures
    failed = f" {', '.join(failures)}" if failures else ""
    report(8, ok, f"{total} generated cases over {len(cases)} suites (>= {C8_MIN_CASES}), failures: {len(failures)}{failed}")
