"""Trace-zero witnesses in SU(2) for differences of positive words."""
from .classifier import CRITERIA, ClassificationReport, aut_probe, classify_pair, super_degenerate_check, witness_for
from .fox import fox_derivative_b, metabelian_poly, metabelian_poly_rowwise
from .laurent import LaurentPoly1, LaurentPoly2
from .su2 import SU2Matrix, Witness, word_eval
from .words import GroupWord, PositiveWord, difference_word, parse_group_word, parse_positive

__version__ = "0.1.0"

__all__ = [
    "CRITERIA",
    "ClassificationReport",
    "GroupWord",
    "LaurentPoly1",
    "LaurentPoly2",
    "PositiveWord",
    "SU2Matrix",
    "Witness",
    "aut_probe",
    "classify_pair",
    "difference_word",
    "fox_derivative_b",
    "metabelian_poly",
    "metabelian_poly_rowwise",
    "parse_group_word",
    "parse_positive",
    "super_degenerate_check",
    "witness_for",
    "word_eval",
]
