"""Exact Jantzen filtrations of Verma and standard Whittaker modules."""

from .filtration import strictness_check, sum_formula_check, verma_jantzen
from .klpoly import kl_polynomial, parabolic_kl
from .report import VERSION as __version__
from .rootdata import build_root_system
from .weyl import weyl_group
from .whittaker import make_eta, pairing_uniqueness_check, whittaker_jantzen

__all__ = [
    "__version__",
    "build_root_system",
    "kl_polynomial",
    "make_eta",
    "pairing_uniqueness_check",
    "parabolic_kl",
    "strictness_check",
    "sum_formula_check",
    "verma_jantzen",
    "weyl_group",
    "whittaker_jantzen",
]
