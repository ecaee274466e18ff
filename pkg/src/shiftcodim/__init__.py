"""Expected codimension of matroid varieties and a shift-and-split
Littlewood-Richardson rule, checked against brute-force oracles."""

from .errors import (
    ConsistencyError,
    DisconnectedInput,
    EmptyIntersection,
    MatroidError,
    NotAMatroid,
    NotAPositroid,
    ParseError,
)
from .expected import (
    EcReport,
    SetFamily,
    cyclic_interval,
    cyclic_interval_family,
    ec_from_s,
    ec_from_s_euler,
    ec_report,
    expected_codim,
    flacets,
    interval_family,
    s_polynomial,
    tutte_polynomial,
)
from .interval import (
    IntervalRankMatrix,
    ShiftTrace,
    apply_shift,
    codimension,
    essential_set,
    irm_from_conditions,
    lr_expand,
    richardson,
    schubert_partition,
    select_shift,
    split_components,
)
from .lr import lr_coefficient, monomial_lr_coefficient, schur_product_in_box
from .matroid import Matroid, RankCondition, generated_pseudo_rank
from .positroid import (
    BoundedAffinePermutation,
    CyclicRankMatrix,
    affine_length,
    affine_permutation,
    cyclic_rank_matrix,
    is_positroid,
    permutation_to_matroid,
    positroid_ec,
    random_bounded_affine_permutation,
)

__all__ = [name for name in dir() if not name.startswith("_")]
