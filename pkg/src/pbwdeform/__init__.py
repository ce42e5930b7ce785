"""Exact PBW checks for quantum Drinfeld orbifold algebras H_{q,kappa}."""

__version__ = "0.1.0"

from .cyclotomic import CycloScalar, format_scalar, parse_scalar
from .presentation import DeformationSpec, parse_spec, serialize_spec
from .skew import AlgebraElement, SkewAlgebra, format_element
from .pbw import PbwReport, check_pbw
from .oracle import truncated_dimension

__all__ = [
    "CycloScalar",
    "format_scalar",
    "parse_scalar",
    "DeformationSpec",
    "parse_spec",
    "serialize_spec",
    "AlgebraElement",
    "SkewAlgebra",
    "format_element",
    "PbwReport",
    "check_pbw",
    "truncated_dimension",
]
