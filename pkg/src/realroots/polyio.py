"""Polynomial text format.

A file is a sequence of whitespace separated tokens.  Lines starting with
``#`` (and anything after a ``#``) are comments.  The first non-comment
line may be a header::

    dense highest-first     # default when the header is missing
    dense lowest-first
    sparse                  # tokens are exp:coeff pairs

Coefficients are integers, dyadics written ``m*2^e``, or decimal strings.
Decimals that are not exactly dyadic (``0.1``) stay symbolic and are fed to
the solver through a :class:`~realroots.poly.DecimalOracle`, which rounds
them outward at whatever precision is requested.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .dyadic import Dyadic, parse_rational
from .errors import ParseError
from .poly import CoefficientOracle, DecimalOracle, ExactOracle

HEADERS = ("dense highest-first", "dense lowest-first", "sparse")
_TOKEN = re.compile(r"\S+")


@dataclass
class PolySpec:
    """Dense coefficient list, lowest degree first.

    Entries are :class:`Dyadic` (exact) or decimal strings that are not
    exactly dyadic.  ``origin`` records how the polynomial was produced.
    """

    coeffs: list
    origin: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.coeffs) < 2:
            raise ValueError("polynomial must have degree >= 1")
        if _is_zero(self.coeffs[-1]):
            raise ValueError("leading coefficient is zero")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def exact(self) -> bool:
        return all(isinstance(c, Dyadic) for c in self.coeffs)

    @classmethod
    def from_ints(cls, coeffs, **origin) -> "PolySpec":
        return cls([Dyadic(int(c)) for c in coeffs], dict(origin))

    def integer_coeffs(self) -> list[int] | None:
        """Integer coefficients of a positive multiple of the polynomial (None if inexact)."""
        if not self.exact:
            return None
        e = min(c.exp for c in self.coeffs if c.man)
        return [c.man << (c.exp - e) if c.man else 0 for c in self.coeffs]

    def oracle(self) -> CoefficientOracle:
        if self.exact:
            return ExactOracle(self.coeffs)
        return DecimalOracle([c if isinstance(c, str) else str(c.to_fraction()) for c in self.coeffs])


def _is_zero(c) -> bool:
    if isinstance(c, Dyadic):
        return c.is_zero()
    return Fraction(c) == 0


def _coefficient(text: str, line: int, col: int):
    try:
        q = parse_rational(text)
    except ValueError:
        raise ParseError(f"malformed coefficient {text!r}", line, col) from None
    d = Dyadic.from_fraction_exact(q)
    return d if d is not None else text


def _tokens(text: str):
    """Yield (line, column, token) for non-comment content; columns are 1-based."""
    for ln, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        for m in _TOKEN.finditer(body):
            yield ln, m.start() + 1, m.group()


def parse_poly(text: str) -> PolySpec:
    """Parse the text format into a :class:`PolySpec`; raises :class:`ParseError`."""
    layout = "dense highest-first"
    toks = list(_tokens(text))
    if toks:
        first_line = toks[0][0]
        words = [t for ln, _, t in toks if ln == first_line]
        head = " ".join(words).lower()
        if head in HEADERS:
            layout = head
            toks = [t for t in toks if t[0] != first_line]
        elif words[0].lower() in ("dense", "sparse"):
            raise ParseError(f"unknown header {' '.join(words)!r}", first_line, 1)
    if not toks:
        raise ParseError("no coefficients", None)

    if layout == "sparse":
        terms = {}
        for ln, col, tok in toks:
            exp_s, sep, coef_s = tok.partition(":")
            if not sep or not exp_s.isdigit():
                raise ParseError(f"expected exp:coeff, got {tok!r}", ln, col)
            e = int(exp_s)
            if e in terms:
                raise ParseError(f"exponent {e} given twice", ln, col)
            terms[e] = (_coefficient(coef_s, ln, col + len(exp_s) + 1), ln, col)
        nonzero = [e for e, (c, _, _) in terms.items() if not _is_zero(c)]
        if not nonzero:
            ln, col = terms[max(terms)][1:]
            raise ParseError("zero polynomial", ln, col)
        deg = max(nonzero)
        coeffs = [terms[e][0] if e in terms else Dyadic(0) for e in range(deg + 1)]
        lead_pos = terms[deg][1:]
    else:
        coeffs = [_coefficient(tok, ln, col) for ln, col, tok in toks]
        positions = [(ln, col) for ln, col, _ in toks]
        if layout == "dense highest-first":
            coeffs.reverse()
            positions.reverse()
        lead_pos = positions[-1]
        if _is_zero(coeffs[-1]):
            raise ParseError("zero leading coefficient", *lead_pos)
        deg = len(coeffs) - 1
    if deg < 1:
        raise ParseError("polynomial has degree 0", *lead_pos)
    return PolySpec(coeffs, {"layout": layout})


def read_poly(path) -> PolySpec:
    with open(path) as fh:
        return parse_poly(fh.read())


def _format_coeff(c) -> str:
    if isinstance(c, str):
        return c
    if c.exp >= 0:
        return str(c.man << c.exp)
    return f"{c.man}*2^{c.exp}"


def format_poly(spec: PolySpec, layout: str = "dense highest-first") -> str:
    """Inverse of :func:`parse_poly` (round-trips exactly)."""
    if layout not in HEADERS:
        raise ValueError(f"unknown layout {layout!r}")
    if layout == "sparse":
        body = " ".join(f"{i}:{_format_coeff(c)}" for i, c in enumerate(spec.coeffs) if not _is_zero(c))
    else:
        cs = spec.coeffs[::-1] if layout == "dense highest-first" else spec.coeffs
        body = " ".join(_format_coeff(c) for c in cs)
    return f"{layout}\n{body}\n"


__all__ = ["HEADERS", "PolySpec", "format_poly", "parse_poly", "read_poly"]
