"""
ybsolve - finite square-free solutions of the set-theoretic Yang-Baxter equation.
"""

from ybsolve.construct import (
    FAMILIES,
    LinearParams,
    StuActions,
    canonical_doubling,
    easy_family,
    extend_by_automorphism,
    gi_X,
    gi_Y,
    gi_sigma,
    linear_solution,
    semidirect_extension,
    stu_union,
    trivial_extension,
    trivial_solution,
    wreath_product,
)
from ybsolve.enumerate import canonical_form, enumerate_square_free, is_isomorphic
from ybsolve.exceptions import YBSolveError
from ybsolve.group import yb_group
from ybsolve.perm import Permutation, parse_cycles
from ybsolve.qset import PropertyFlags, QuadraticSet, classify, from_left_action, is_square_free_solution
from ybsolve.retract import mpl, retract, retract_tower
from ybsolve.ybs_format import parse_ybs, write_ybs

__version__ = "0.1.0"

__all__ = [
    "FAMILIES",
    "LinearParams",
    "Permutation",
    "PropertyFlags",
    "QuadraticSet",
    "StuActions",
    "YBSolveError",
    "canonical_doubling",
    "canonical_form",
    "classify",
    "easy_family",
    "enumerate_square_free",
    "extend_by_automorphism",
    "from_left_action",
    "gi_X",
    "gi_Y",
    "gi_sigma",
    "is_isomorphic",
    "is_square_free_solution",
    "linear_solution",
    "mpl",
    "parse_cycles",
    "parse_ybs",
    "retract",
    "retract_tower",
    "semidirect_extension",
    "stu_union",
    "trivial_extension",
    "trivial_solution",
    "wreath_product",
    "write_ybs",
    "yb_group",
]
