"""Exact zero-sum constants over Z_2^d with witness extraction.

Computes the generalized Erdos-Ginzburg-Ziv constants s_{2m}(Z_2^d), the
extremal set sizes beta_W(d), and the forbidden-weight code redundancies
R_{2m}(n), cross-validated against coding-theory identities; extracts
explicit zero-sum witnesses constructively via binormal-form reduction.
"""

from .gf2 import BitMatrix, BitVector, OpLog, nullspace_basis, rank, solve_linear
from .types import ConstantRecord, GroupSequence, VectorSet, WeightSet, ZeroSumWitness

__version__ = "0.1.0"
