"""Exact Grothendieck groups of cluster categories and additive functions on them."""

__version__ = "0.1.0"

from .zlinalg import AbelianGroup, IntMatrix, cokernel, snf
from .quiver import Quiver, DynkinType, parse_quiver, kbar_hereditary, dynkin_quiver
from .sheafk0 import K0Lattice, WeightSequence, kbar_canonical
from .meshhom import DObj, knit, dynkin_lambda_table
from .tube import TubeObj, kbar_tube

__all__ = [
    "AbelianGroup", "IntMatrix", "cokernel", "snf",
    "Quiver", "DynkinType", "parse_quiver", "kbar_hereditary", "dynkin_quiver",
    "K0Lattice", "WeightSequence", "kbar_canonical",
    "DObj", "knit", "dynkin_lambda_table",
    "TubeObj", "kbar_tube",
]
