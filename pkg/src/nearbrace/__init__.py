"""Near braces, their multi-parametric braid solutions and p-braidings on finite groups."""

from .braces import NearBrace, SigmaFamily, structural_report, trivial_near_brace, validate_near_brace
from .enumeration import enumerate_near_braces
from .groups import Diagnostics, GroupTable, build_standard, validate_group
from .params import ParamTriple, admissible_params, make_triple
from .pbraiding import check_p_braiding, closed_form_fg
from .solutions import BraidMap, analyze_solution, build_inverse, build_solution

__all__ = [
    "BraidMap",
    "Diagnostics",
    "GroupTable",
    "NearBrace",
    "ParamTriple",
    "SigmaFamily",
    "admissible_params",
    "analyze_solution",
    "build_inverse",
    "build_solution",
    "build_standard",
    "check_p_braiding",
    "closed_form_fg",
    "enumerate_near_braces",
    "make_triple",
    "structural_report",
    "trivial_near_brace",
    "validate_group",
    "validate_near_brace",
]
