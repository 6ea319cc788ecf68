"""Matroids from linearly independent set families, in exact arithmetic."""

from .constructions import (
    DirectSumDecomposition,
    direction_matrix,
    example2_family,
    example3_family,
    lisf_matroid,
    random_theorem3_instance,
    random_theorem4_instance,
    theorem3_hypotheses,
    theorem4_hypotheses,
)
from .exactalg import GF, Q, FieldSpec, Matrix, Scalar, Subspace, Vector, rref, span
from .matroid import (
    IndependenceFamily,
    check_axioms,
    exhaustive_max_weight,
    greedy_max_weight,
    summarize,
    vector_matroid,
)
from .setfamily import (
    FiniteSet,
    PuncturedSubspace,
    SetFamily,
    apply_isomorphism,
    is_lisf,
    is_lisf_sampled,
    scale_family,
    symmetrize,
)

__version__ = "0.1.0"
