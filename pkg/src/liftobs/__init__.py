"""Exact obstruction theory for homotopy extension and lifting of chain complexes."""

from .chain import AlgebraicHomotopy, ChainComplex, ChainMap, disk, homology, is_quasi_iso, sphere
from .constructions import cocylinder, cylinder, double_mapping_cylinder, gap_map, homotopy_pushout, pullback, pushout
from .exactlin import GF2, QQ, Field, Matrix
from .obstruction import (
    TheoremViolation,
    build_chi,
    extract_lift_from_trivial_chi,
    forward_direction,
    is_chi_trivial,
    section_strict_lift,
)
from .solver import HelpSolution, HypothesisError, LiftingProblem, solve_help, solve_help_via_cocylinder

__all__ = [
    "AlgebraicHomotopy",
    "ChainComplex",
    "ChainMap",
    "Field",
    "GF2",
    "QQ",
    "HelpSolution",
    "HypothesisError",
    "LiftingProblem",
    "Matrix",
    "TheoremViolation",
    "build_chi",
    "cocylinder",
    "cylinder",
    "disk",
    "double_mapping_cylinder",
    "extract_lift_from_trivial_chi",
    "forward_direction",
    "gap_map",
    "homology",
    "homotopy_pushout",
    "is_chi_trivial",
    "is_quasi_iso",
    "pullback",
    "pushout",
    "section_strict_lift",
    "solve_help",
    "solve_help_via_cocylinder",
    "sphere",
]
