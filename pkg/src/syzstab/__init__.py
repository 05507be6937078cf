"""Syzygy points of projective schemes: Koszul cohomology, Hilbert-Mumford weights, divisor classes."""

from .divisors import DivisorClass, alpha_of_beta, polarization, slope
from .ideals import IdealPresentation, Parameterization, hilbert_fn, ideal_piece
from .koszul import BettiTable, betti_table, koszul_dim, schur_dim, syzygy_kernel
from .stability import OneParamSubgroup, hm_weight, limit_scheme, vgit_weight, wall

__version__ = "0.1.0"

__all__ = [
    "BettiTable",
    "DivisorClass",
    "IdealPresentation",
    "OneParamSubgroup",
    "Parameterization",
    "alpha_of_beta",
    "betti_table",
    "hilbert_fn",
    "hm_weight",
    "ideal_piece",
    "koszul_dim",
    "limit_scheme",
    "polarization",
    "schur_dim",
    "slope",
    "syzygy_kernel",
    "vgit_weight",
    "wall",
]
