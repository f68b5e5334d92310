"""Benchmark polynomial families (integer coefficients, lowest degree first)."""

from __future__ import annotations

import random
from math import comb, isqrt

FAMILIES = ("mignotte", "nested-mignotte", "random-uniform", "clustered", "wilkinson")


def _mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _pow(p, e):
    out = [1]
    while e:
        if e & 1:
            out = _mul(out, p)
        p = _mul(p, p)
        e >>= 1
    return out


def _sub(p, q):
    m = max(len(p), len(q))
    p = p + [0] * (m - len(p))
    q = q + [0] * (m - len(q))
    return [a - b for a, b in zip(p, q)]


def mignotte(n: int, tau: int) -> list[int]:
    """x^n - ((2^(tau/2) - 1) x - 1)^2: two roots near 2^(-tau/2) very close together."""
    if tau % 2:
        raise ValueError("Mignotte needs an even tau")
    a = (1 << (tau // 2)) - 1
    return _sub([0] * n + [1], _pow([-1, a], 2))


def nested_mignotte(n: int, tau: int) -> list[int]:
    """prod_{i=1..4} (x^(n/4) - ((2^(tau/8) - 1) x^2 - 1)^(2i)).

    ``tau/8`` is rounded down when 8 does not divide ``tau`` (the standard
    (260, 140) instance needs that).
    """
    if n % 4:
        raise ValueError("nested Mignotte needs n divisible by 4")
    a = (1 << (tau // 8)) - 1
    inner = [-1, 0, a]
    out = [1]
    for i in range(1, 5):
        out = _mul(out, _sub([0] * (n // 4) + [1], _pow(inner, 2 * i)))
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def random_uniform(n: int, tau: int, seed: int = 0) -> list[int]:
    """Integer coefficients drawn uniformly from (-2^tau, 2^tau), nonzero leading term."""
    rng = random.Random(seed)
    bound = (1 << tau) - 1
    coeffs = [rng.randint(-bound, bound) for _ in range(n + 1)]
    while coeffs[-1] == 0:
        coeffs[-1] = rng.randint(-bound, bound)
    return coeffs


def clustered(n: int, seed: int = 0, scale: int = 256) -> list[int]:
    """f^2 - 1 for a random f of degree n/2 with binomially weighted Gaussian coefficients.

    Real roots of f^2 - 1 come in close pairs around the real roots of f.
    ``scale`` is the fixed-point scale (bits) used to round the weights.
    """
    if n % 2:
        raise ValueError("clustered family needs an even degree")
    m = n // 2
    rng = random.Random(seed)
    f = []
    for i in range(m + 1):
        g = int(rng.gauss(0.0, 1.0) * (1 << 53))
        # sqrt(C(m, i) / (i + 1)) * 2^(scale + 53), then round g * that / 2^106
        weight = isqrt((comb(m, i) << (2 * scale + 106)) // (i + 1))
        f.append((g * weight + (1 << 105)) >> 106)
    if f[-1] == 0:
        f[-1] = 1
    sq = _mul(f, f)
    sq[0] -= 1
    return sq


def wilkinson(n: int, tau: int = 0) -> list[int]:
    out = [1]
    for i in range(1, n + 1):
        out = _mul(out, [-i, 1])
    return out


def gen_family(name: str, n: int, tau: int = 0, seed: int = 0, scale: int = 256) -> list[int]:
    """Expanded integer polynomial of a named family (``tau`` is ignored where it has no role)."""
    if name == "mignotte":
        return mignotte(n, tau)
    if name == "nested-mignotte":
        return nested_mignotte(n, tau)
    if name == "random-uniform":
        return random_uniform(n, tau, seed)
    if name == "clustered":
        return clustered(n, seed, scale)
    if name == "wilkinson":
        return wilkinson(n)
    raise ValueError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
