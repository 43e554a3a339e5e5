"""Adjacency-invariant spaces and spatio-spectral limiting on products of short cycles.

Vertices of C_m^N (m = 3, 4, 5) are indexed by a :class:`VertexTable`
ordered by distance from the origin; operators are exact integer sparse
matrices on that index set.
"""

from .config import BudgetExceeded
from .group import (GroupElement, LevelSignature, VertexTable, enumerate_vertices,
                    feasible_signatures, level_set, level_signature, lower_level,
                    neighbors, path_distance, raise_level, reflect)
from .invariant import (LevelMatrix, MultiplierSequence, SubspaceBasis, build_V, build_W,
                        hadamard_eigenbasis, level_matrix, multiplier_sequence,
                        verify_invariance)
from .operators import (CommutatorReport, IntOperator, OperatorSet, adjacency, commutator,
                        inner_adjacency, neutral_adjacency, outer_adjacency, r1_op,
                        reflection_op, subadjacency, twisted_outer)
from .spectral import FourierBasis, dft_matrix, gft
from .ssl import SslConfig, SslReport, classify, decompose, spatial_projection, spectral_projection

__version__ = "0.1.0"
