import functools
import json
import os
import sys
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from realroots.dyadic import Dyadic

settings.register_profile(
    "repro",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    print_blob=True,
)
settings.register_profile("explore", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repro"))

sys.path.insert(0, os.path.dirname(__file__))

# generated property cases per test; read by the acceptance suite
CASES = Counter()
PROPERTY_FAILURES = []
PROPERTY_TESTS_SEEN = set()
# one line per acceptance criterion, echoed in the terminal summary
ACCEPT_LINES = []


def counted(fn):
    """Count each generated example (apply below ``@given``)."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        CASES[fn.__qualname__] += 1
        return fn(*args, **kwargs)

    return wrapper


def add_cases(name, k):
    CASES[name] += k


# ----------------------------------------------------------------------
# strategies


def dyadics(man_bits=64, exp_range=(-80, 40)):
    return st.builds(Dyadic, st.integers(-(1 << man_bits), 1 << man_bits), st.integers(*exp_range))


def small_dyadics(lo=-8, hi=8, exp_min=-12):
    """Dyadics in [lo, hi] with at most -exp_min fractional bits."""
    scale = 1 << -exp_min
    return st.integers(lo * scale, hi * scale).map(lambda m: Dyadic(m, exp_min))


def enclosures(**kw):
    return st.tuples(dyadics(**kw), dyadics(**kw)).map(lambda t: (min(t), max(t)))


def int_polys(max_deg=12, bits=16, min_deg=1):
    def fix(cs):
        if cs[-1] == 0:
            cs[-1] = 1
        return cs

    return st.lists(st.integers(-(1 << bits) + 1, (1 << bits) - 1), min_size=min_deg + 1, max_size=max_deg + 1).map(fix)


def expand_roots(roots):
    """Coefficients (lowest first, Fractions) of prod (x - r)."""
    out = [Fraction(1)]
    for r in roots:
        r = Fraction(r)
        nxt = [Fraction(0)] * (len(out) + 1)
        for i, c in enumerate(out):
            nxt[i + 1] += c
            nxt[i] -= r * c
        out = nxt
    return out


def horner(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + Fraction(c)
    return acc


# ----------------------------------------------------------------------
# ordering and bookkeeping


def pytest_configure(config):
    config.addinivalue_line("markers", "property: generated-case invariant suites")
    config.addinivalue_line("markers", "slow: runs longer than a few seconds")


def pytest_collection_modifyitems(config, items):
    # acceptance runs last so criterion 8 sees the property suites' tallies
    items.sort(key=lambda it: it.fspath.basename == "test_acceptance.py")
    for it in items:
        if it.get_closest_marker("property"):
            PROPERTY_TESTS_SEEN.add(it.nodeid)


def pytest_runtest_logreport(report):
    if report.when == "call" and report.failed and report.nodeid in PROPERTY_TESTS_SEEN:
        PROPERTY_FAILURES.append(report.nodeid)


@pytest.fixture(scope="session")
def case_counter():
    return CASES


def pytest_sessionfinish(session):
    out = os.environ.get("REALROOTS_CASES_OUT")
    if out:
        with open(out, "w") as fh:
            json.dump({"cases": dict(CASES), "failures": PROPERTY_FAILURES}, fh)


def pytest_terminal_summary(terminalreporter):
    if ACCEPT_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPT_LINES:
            terminalreporter.write_line(line)
