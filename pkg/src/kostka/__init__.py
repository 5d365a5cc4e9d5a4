"""Exact Ehrhart polynomials for Gelfand-Tsetlin, order and Birkhoff polytopes."""

from ._version import __version__
from .birkhoff import birkhoff_ehrhart, birkhoff_interior_count, magic_square_count
from .combinatorics import (
    Partition,
    Permutation,
    SkewShape,
    WeightVector,
    contains_pattern,
    transposition_neighborhood,
)
from .ehrhart import (
    EhrhartResult,
    HStarVector,
    PointEvaluator,
    adaptive_ehrhart,
    compute_ehrhart,
    ehrhart_from_hstar,
    hstar_from_ehrhart,
    is_log_concave,
    is_palindromic,
    is_real_rooted,
    is_ultra_log_concave,
    verify_polynomial,
)
from .errors import (
    Cancelled,
    DuplicateAbscissa,
    EmptyPolytope,
    InvalidShape,
    KostkaError,
    NonIntegralHStar,
    NotAPartition,
    NotAPermutation,
    NotNaturallyLabeled,
    ResourceLimit,
    SizeMismatch,
    VerificationFailed,
    ZeroPolynomial,
)
from .gt import (
    ForcedEqualityMask,
    GTChainSpec,
    forced_equality_mask,
    gt_dimension,
    gt_ehrhart,
    kostka,
    kostka_dilated,
    strict_kostka,
)
from .polynomial import RationalPolynomial, lagrange_interpolate
from .posets import (
    FrontierPlan,
    IdealLattice,
    Poset,
    antichain,
    chain,
    count_linear_extensions,
    fence,
    hstar_via_linext,
    order_polynomial,
    order_polytope_ehrhart,
    order_polytope_hstar,
    permutation_poset,
    search_nonrealrooted,
    shape_poset,
    strict_order_polynomial,
)
from .records import ResultRecord, ResultStore
