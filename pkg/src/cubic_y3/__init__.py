"""Exact verification of the lattice, intersection and Jacobian-ring invariants
attached to a cubic surface and its triple-contact surface of lines."""
from __future__ import annotations

from .exact import Cyclotomic, SymFormInvariants, hnf, kernel_saturated, snf, sym_invariants
from .polyring import CubicSurface, MultiPoly

__all__ = [
    "CubicSurface",
    "Cyclotomic",
    "MultiPoly",
    "SymFormInvariants",
    "hnf",
    "kernel_saturated",
    "snf",
    "sym_invariants",
]
