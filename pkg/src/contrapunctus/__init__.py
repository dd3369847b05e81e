"""Exact first-species counterpoint worlds over Z_2k and the circle."""

from .continuum import CircleSymmetry, continuous_successors, maximizers
from .counterpoint import CounterpointSymmetry, SuccessorSet, counterpoint_symmetries, oracle_symmetries
from .dichotomy import Dichotomy, find_quasipolarities, induced_quasipolarity
from .extension import U0, Embedding, chain_extend, doubling_tower, extended_symmetries
from .zmod import AffineMap, DualAffineMap, DualNumber

__version__ = "0.1.0"

__all__ = [
    "AffineMap",
    "CircleSymmetry",
    "CounterpointSymmetry",
    "Dichotomy",
    "DualAffineMap",
    "DualNumber",
    "Embedding",
    "SuccessorSet",
    "U0",
    "chain_extend",
    "continuous_successors",
    "counterpoint_symmetries",
    "doubling_tower",
    "extended_symmetries",
    "find_quasipolarities",
    "induced_quasipolarity",
    "maximizers",
    "oracle_symmetries",
]
