"""Eisenbud-Green-Harris witnesses for monomial ideals and balanced h-vector transfer."""

from .clements import CapVector, LexSegment, LppInfeasible, cl_count, is_lpp, lex_segment, lpp_from_hilbert
from .egh import (
    Trust,
    WitnessResult,
    artinian_reduction_witness,
    choose_degree_sequence,
    egh_witness,
    egh_witness_recursive,
    verify_witness,
)
from .hilbert import HilbertSeries, hilbert_function, hilbert_series, q_polynomial
from .ideals import MonomialIdeal, colon, contains, height, quotient_mod_variable
from .monomials import Monomial, compare_lex, enumerate_monomials, parse_monomial
from .simplicial import SimplicialComplex, VertexPartition, balanced_transfer

__version__ = "0.1.0"

__all__ = [
    "CapVector",
    "HilbertSeries",
    "LexSegment",
    "LppInfeasible",
    "Monomial",
    "MonomialIdeal",
    "SimplicialComplex",
    "Trust",
    "VertexPartition",
    "WitnessResult",
    "artinian_reduction_witness",
    "balanced_transfer",
    "choose_degree_sequence",
    "cl_count",
    "colon",
    "compare_lex",
    "contains",
    "egh_witness",
    "egh_witness_recursive",
    "enumerate_monomials",
    "height",
    "hilbert_function",
    "hilbert_series",
    "is_lpp",
    "lex_segment",
    "lpp_from_hilbert",
    "parse_monomial",
    "q_polynomial",
    "quotient_mod_variable",
    "verify_witness",
]
