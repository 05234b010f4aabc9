"""Exact rational models of based mapping spaces ``F_*(X, Y)``.

``X`` is given by a free differential graded Lie algebra (a Quillen model),
``Y`` by a Sullivan minimal model.  The package builds the chains coalgebra of
the Lie model, the Brown-Szczarba style model of the mapping space and its
minimal reduction, and decides whether attaching a cell to ``X`` splits the
mapping space as a product with an iterated loop space of ``Y``.
"""

from __future__ import annotations

from .algebra import CapError, FreeCDGA, ModelError
from .chains import (ChainCoalgebra, FiniteCoalgebra, dual_cochains, finite_dual_coalgebra,
                     rho_reduction, truncated_chains)
from .invariants import (CupLength, cup_length, d1_depth, d1_filtration, d_length, homotopy_lie,
                         kotani_free_test, whitehead_length)
from .lie import FreeDGL, FreeLieAlgebra, GradedLieAlgebra, dgl_homology, lie_basis
from .mapping import (BSModel, ConnectivityError, ConsistencyError, MappingSpaceModel,
                      based_bs_model, bs_model, mapping_space_model, minimal_reduce)
from .splitting import (HYPOTHESIS_FAILS, SPLITS, UNKNOWN, Decomposition, Verdict, decompose,
                        gamma_cycles, homotopy_ranks, splitting_check)

__version__ = "0.1.0"

__all__ = [
    "BSModel", "CapError", "ChainCoalgebra", "ConnectivityError", "ConsistencyError", "CupLength",
    "Decomposition", "FiniteCoalgebra", "FreeCDGA", "FreeDGL", "FreeLieAlgebra", "GradedLieAlgebra",
    "HYPOTHESIS_FAILS", "MappingSpaceModel", "ModelError", "SPLITS", "UNKNOWN", "Verdict",
    "based_bs_model", "bs_model", "cup_length", "d1_depth", "d1_filtration", "d_length", "decompose",
    "dgl_homology", "dual_cochains", "finite_dual_coalgebra", "gamma_cycles", "homotopy_lie", "homotopy_ranks",
    "kotani_free_test", "lie_basis", "mapping_space_model", "minimal_reduce", "rho_reduction", "splitting_check",
    "truncated_chains", "whitehead_length",
]
