"""Moore-Penrose inverses and EP classification on normed matrix spaces.

The library decides hermitianness, Moore-Penrose invertibility, and the EP
property for matrices acting on C^n under the l1, l2, or linf norm, and for
elements of block matrix algebras under the max-of-blocks norm.  Every
verdict is backed by explicit witnesses (hermitian idempotents, invertible
multipliers), and every claimed equivalence is recomputed rather than
assumed.
"""

from .ep import (
    EpEquivalences,
    EpReport,
    NoGroupInverse,
    ProductReport,
    adjoint_ep,
    algebra_ep_battery,
    ep_projector,
    group_inverse,
    is_ep,
    powers_ep,
    product_ep_check,
    product_ep_check_lifted,
)
from .hermitian import (
    HermitianVerdict,
    NotRepresentable,
    coordinate_support,
    hermitian_idempotent_with_nullspace,
    hermitian_idempotent_with_range,
    is_hermitian,
    is_hermitian_idempotent,
)
from .kernels import BACKEND
from .matcore import (
    DEFAULT_TOL,
    PreconditionError,
    SubspaceBasis,
    ToleranceBreakdown,
    ToleranceProfile,
    as_matrix,
    mat_exp,
    rank_nullspace_range,
    subspace_contains,
    subspace_equal,
    subspace_intersect,
    subspace_sum,
)
from .moorepenrose import (
    AlgebraContext,
    MpFailure,
    MpResult,
    adjoint_mp,
    algebra_norm,
    conjugate_transport,
    ctx_mp_inverse,
    direct_sum_mp,
    is_hermitian_ctx,
    lift_left,
    lift_right,
    mp_inverse,
    mp_l2,
    normalized_from_generalized,
    penrose_residuals,
    quotient_mp,
    verify_mp,
    verify_mp_ctx,
    verify_mp_lifted,
)
from .norms import NormKind, dual_of, log_norm, op_norm

__version__ = "0.1.0"

__all__ = [
    "AlgebraContext",
    "BACKEND",
    "DEFAULT_TOL",
    "EpEquivalences",
    "EpReport",
    "HermitianVerdict",
    "MpFailure",
    "MpResult",
    "NoGroupInverse",
    "NormKind",
    "NotRepresentable",
    "PreconditionError",
    "ProductReport",
    "SubspaceBasis",
    "ToleranceBreakdown",
    "ToleranceProfile",
    "adjoint_ep",
    "adjoint_mp",
    "algebra_ep_battery",
    "algebra_norm",
    "as_matrix",
    "conjugate_transport",
    "coordinate_support",
    "ctx_mp_inverse",
    "direct_sum_mp",
    "dual_of",
    "ep_projector",
    "group_inverse",
    "hermitian_idempotent_with_nullspace",
    "hermitian_idempotent_with_range",
    "is_ep",
    "is_hermitian",
    "is_hermitian_ctx",
    "is_hermitian_idempotent",
    "lift_left",
    "lift_right",
    "log_norm",
    "mat_exp",
    "mp_inverse",
    "mp_l2",
    "normalized_from_generalized",
    "op_norm",
    "penrose_residuals",
    "powers_ep",
    "product_ep_check",
    "product_ep_check_lifted",
    "quotient_mp",
    "rank_nullspace_range",
    "subspace_contains",
    "subspace_equal",
    "subspace_intersect",
    "subspace_sum",
    "verify_mp",
    "verify_mp_ctx",
    "verify_mp_lifted",
]
