"""Real root isolation with Descartes subdivision and Newton steps over bitstream coefficients."""

from .dyadic import Dyadic, Enclosure, parse_dyadic
from .errors import (
    NonSquareFreeSuspected,
    OracleError,
    ParseError,
    PrecisionCapError,
    RealRootsError,
    SolveAborted,
)
from .families import gen_family
from .poly import BitstreamOracle, DecimalOracle, ExactOracle, mp_digits
from .polyio import PolySpec, parse_poly
from .solver import IsolationResult, SolveConfig, SolveStats, isolate
from .sturm import sturm_count

__all__ = [
    "BitstreamOracle",
    "DecimalOracle",
    "Dyadic",
    "Enclosure",
    "ExactOracle",
    "IsolationResult",
    "NonSquareFreeSuspected",
    "OracleError",
    "ParseError",
    "PolySpec",
    "PrecisionCapError",
    "RealRootsError",
    "SolveAborted",
    "SolveConfig",
    "SolveStats",
    "gen_family",
    "isolate",
    "mp_digits",
    "parse_dyadic",
    "parse_poly",
    "sturm_count",
]
