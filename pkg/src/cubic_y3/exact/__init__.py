"""Exact scalar and matrix kernels."""
from __future__ import annotations

from .cyclotomic import CUBE_ROOTS, OMEGA, Cyclotomic, field_value, to_json_value
from .intmat import (
    SymFormInvariants,
    det,
    hnf,
    kernel_saturated,
    lattice_basis,
    signature,
    snf,
    sym_invariants,
)

__all__ = [
    "CUBE_ROOTS",
    "OMEGA",
    "Cyclotomic",
    "SymFormInvariants",
    "det",
    "field_value",
    "hnf",
    "kernel_saturated",
    "lattice_basis",
    "signature",
    "snf",
    "sym_invariants",
    "to_json_value",
]
