"""Exact rational and polynomial arithmetic."""

from .modp import PrimePoly, cycle_type
from .resultant import discriminant, gcd, is_squarefree, resultant, squarefree_part
from .sturm import Interval, RealRoot, isolate_roots, refine_root, root_count, sturm_count, sturm_isolate
from .upoly import UniPoly, as_fraction, fraction_str, poly_arith

__all__ = [
    "Interval",
    "PrimePoly",
    "RealRoot",
    "UniPoly",
    "as_fraction",
    "cycle_type",
    "discriminant",
    "fraction_str",
    "gcd",
    "is_squarefree",
    "poly_arith",
    "refine_root",
    "resultant",
    "root_count",
    "squarefree_part",
    "isolate_roots",
    "sturm_count",
    "sturm_isolate",
]
