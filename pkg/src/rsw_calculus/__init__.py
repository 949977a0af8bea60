"""Symbolic calculus for Real Seiberg-Witten invariants of 4-manifolds with involution."""
from .charclass import VirtualBundle, binom_int, binom_mod2, tensor_by_line, vb_invert, vb_sum, vb_w
from .model import Chamber, RealFourManifold, RealSpinC, Violation, derive_d, validate
from .ring import IntClass, LaurentClass, Mod2Class, UpToSignClass, cup, int_cup, kunneth, pushforward_top

__version__ = "0.1.0"

__all__ = [
    "Chamber", "IntClass", "LaurentClass", "Mod2Class", "RealFourManifold", "RealSpinC", "UpToSignClass",
    "VirtualBundle", "Violation", "binom_int", "binom_mod2", "cup", "derive_d", "int_cup", "kunneth",
    "pushforward_top", "tensor_by_line", "validate", "vb_invert", "vb_sum", "vb_w",
]
