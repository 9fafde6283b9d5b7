"""Moore-Penrose inverses on (C^n, ||.||) and in block matrix algebras.

An element a has a Moore-Penrose inverse x when a = a x a, x = x a x, and
both products a x and x a are hermitian for the ambient norm.  There is at
most one such x.  Existence is equivalent to the existence of hermitian
idempotents P, Q with N(P) = N(a) and R(Q) = R(a), and the inverse is
assembled from them: it kills N(Q) and inverts a from R(a) back onto R(P).
Under l1/linf the idempotents exist only for coordinate subspaces, so the
inverse can fail to exist even for idempotent operators; the failure is
reported structurally rather than numerically.

The module also transports inverses along the standard constructions:
regular-representation lifts x -> a x and x -> x a, plain-transpose
adjoints on the dual norm, direct sums under the max norm, block quotient
algebras, and conjugation by isometries.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .hermitian import NotRepresentable, hermitian_idempotent_with_range, is_hermitian
from .matcore import (
    DEFAULT_TOL,
    PreconditionError,
    SubspaceBasis,
    ToleranceBreakdown,
    as_matrix,
    as_square,
    inverse,
    rank_nullspace_range,
    solve_full_rank,
)
from .norms import NormKind, dual_of, op_norm


class MpFailure(Enum):
    """Why no Moore-Penrose inverse exists for the ambient norm."""

    NULLSPACE_NOT_REPRESENTABLE = "nullspace_not_representable"
    RANGE_NOT_REPRESENTABLE = "range_not_representable"


@dataclass(frozen=True)
class MpResult:
    """Outcome of a Moore-Penrose computation.

    When the inverse exists, witness_p = mp @ a and witness_q = a @ mp are
    the hermitian idempotents with N(witness_p) = N(a) and
    R(witness_q) = R(a), and the two residual fields carry the raw defect
    norms of the Penrose equations.  Otherwise ``failure`` records which
    witness does not exist.
    """

    exists: bool
    mp: np.ndarray | None = None
    witness_p: np.ndarray | None = None
    witness_q: np.ndarray | None = None
    failure: MpFailure | None = None
    residual_axa: float | None = None
    residual_xax: float | None = None


def penrose_residuals(a, x, kind):
    """Raw defect norms of the two Penrose product equations."""
    return (
        op_norm(a - a @ x @ a, kind),
        op_norm(x - x @ a @ x, kind),
    )


def _equation_scales(a, x, kind):
    na = 1.0 + op_norm(a, kind)
    nx = 1.0 + op_norm(x, kind)
    return na * na * nx, na * nx * nx


def verify_mp(a, x, kind, tol=DEFAULT_TOL):
    """Whether x is the Moore-Penrose inverse of a for the given norm."""
    a = as_matrix(a)
    x = as_matrix(x)
    if a.shape != x.T.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {x.shape}")
    r_axa, r_xax = penrose_residuals(a, x, kind)
    s_axa, s_xax = _equation_scales(a, x, kind)
    if r_axa > tol.zero_abs_tol * s_axa or r_xax > tol.zero_abs_tol * s_xax:
        return False
    if not is_hermitian(a @ x, kind, tol).is_hermitian:
        return False
    return is_hermitian(x @ a, kind, tol).is_hermitian


def normalized_from_generalized(a, b, tol=DEFAULT_TOL):
    """Normalized generalized inverse b a b from a generalized inverse b."""
    a = as_matrix(a)
    b = as_matrix(b)
    scale = (1.0 + op_norm(a, NormKind.L2)) ** 2 * (1.0 + op_norm(b, NormKind.L2))
    if op_norm(a - a @ b @ a, NormKind.L2) > tol.zero_abs_tol * scale:
        raise PreconditionError("b is not a generalized inverse of a")
    return b @ a @ b


def mp_inverse(a, kind, tol=DEFAULT_TOL):
    """Moore-Penrose inverse of a square matrix, with witnesses.

    Builds the hermitian idempotents P (prescribed null space) and Q
    (prescribed range); if either does not exist for this norm the result
    reports the failure.  Otherwise the inverse is defined to vanish on
    N(Q) and to invert a from R(a) back onto R(P), and the result is
    verified before being returned.
    """
    a = as_square(a)
    n = a.shape[0]
    rank, nsp, rng = rank_nullspace_range(a, tol)
    try:
        range_p = _complement_range(nsp, kind, tol)
    except NotRepresentable:
        return MpResult(exists=False, failure=MpFailure.NULLSPACE_NOT_REPRESENTABLE)
    try:
        q = hermitian_idempotent_with_range(rng, kind, tol)
    except NotRepresentable:
        return MpResult(exists=False, failure=MpFailure.RANGE_NOT_REPRESENTABLE)

    if rank == 0:
        x = np.zeros_like(a)
    else:
        _, nq, _ = rank_nullspace_range(q, tol)
        bp = range_p.basis
        u = rng.basis
        # invert a from R(a) back onto R(P): solve (a bp) z = u columnwise
        z = solve_full_rank(a @ bp, u)
        full = np.hstack([u, nq.basis])
        image = np.hstack([bp @ z, np.zeros((n, nq.dim), dtype=np.complex128)])
        # x [u | nq] = [bp z | 0]
        x = solve_full_rank(full.T, image.T).T

    if not verify_mp(a, x, kind, tol):
        raise ToleranceBreakdown(
            "constructed Moore-Penrose candidate failed verification"
        )
    r_axa, r_xax = penrose_residuals(a, x, kind)
    return MpResult(
        exists=True,
        mp=x,
        witness_p=x @ a,
        witness_q=a @ x,
        residual_axa=r_axa,
        residual_xax=r_xax,
    )


def _complement_range(nsp, kind, tol):
    """Range of the hermitian idempotent with the given null space."""
    n = nsp.ambient_dim
    p = np.eye(n, dtype=np.complex128) - hermitian_idempotent_with_range(nsp, kind, tol)
    _, _, range_p = rank_nullspace_range(p, tol)
    return range_p


def mp_l2(a, tol=DEFAULT_TOL):
    """Euclidean pseudoinverse by rank factorization; the l2 oracle.

    With a = F G a full-rank factorization (F orthonormal columns), the
    pseudoinverse is G* (G G*)^-1 (F* F)^-1 F*, which reduces to
    G* (G G*)^-1 F* here.  Accepts any shape, including rectangular.
    """
    a = as_matrix(a)
    rank, _, rng = rank_nullspace_range(a, tol)
    if rank == 0:
        return np.zeros((a.shape[1], a.shape[0]), dtype=np.complex128)
    f = rng.basis
    g = f.conj().T @ a
    gram = g @ g.conj().T
    return g.conj().T @ solve_full_rank(gram, f.conj().T)


@dataclass(frozen=True)
class AlgebraContext:
    """A block-diagonal matrix algebra with the max-over-blocks norm.

    Elements are block-diagonal matrices on the direct sum of the C^{n_i};
    the unit is the identity and has norm one.  A single block recovers the
    full matrix algebra on C^n.
    """

    blocks: tuple[int, ...]
    norm: NormKind

    def __post_init__(self):
        if not self.blocks or any(b <= 0 for b in self.blocks):
            raise ValueError("blocks must be a nonempty tuple of positive sizes")
        object.__setattr__(self, "blocks", tuple(int(b) for b in self.blocks))

    @property
    def dim(self):
        """Dimension of the underlying direct-sum space."""
        return sum(self.blocks)

    @property
    def coord_dim(self):
        """Dimension of the algebra as a vector space."""
        return sum(b * b for b in self.blocks)

    def offsets(self):
        out = []
        start = 0
        for b in self.blocks:
            out.append((start, start + b))
            start += b
        return out

    def split(self, a):
        a = as_square(a)
        if a.shape[0] != self.dim:
            raise ValueError(f"element size {a.shape[0]} does not match context {self.dim}")
        return [a[i:j, i:j] for i, j in self.offsets()]

    def join(self, parts):
        a = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for (i, j), part in zip(self.offsets(), parts):
            a[i:j, i:j] = as_square(part)
        return a

    def unit(self):
        return np.eye(self.dim, dtype=np.complex128)

    def contains(self, a, tol=DEFAULT_TOL):
        """Whether a is block-diagonal with this context's block sizes."""
        a = as_square(a)
        if a.shape[0] != self.dim:
            return False
        off = a - self.join(self.split(a))
        return float(np.abs(off).max()) <= tol.zero_abs_tol

    def vec(self, a):
        """Coordinates of an element: concatenated row-major block vecs."""
        return np.concatenate([blk.reshape(-1) for blk in self.split(a)])

    def element_norm(self, a):
        """Algebra norm: max over blocks of the induced operator norm."""
        return max(op_norm(blk, self.norm) for blk in self.split(a))


def algebra_norm(a, ctx):
    return ctx.element_norm(a)


def is_hermitian_ctx(a, ctx, tol=DEFAULT_TOL):
    """Hermitian in the direct-sum algebra, i.e. blockwise hermitian.

    exp(i t a) acts blockwise and the max norm of a block-diagonal operator
    is the max of the block norms, so the verdict localizes to blocks.
    """
    return all(is_hermitian(blk, ctx.norm, tol).is_hermitian for blk in ctx.split(a))


def verify_mp_ctx(a, x, ctx, tol=DEFAULT_TOL):
    """Penrose verification inside a block algebra."""
    a = as_square(a)
    x = as_square(x)
    r_axa = np.abs(a - a @ x @ a).max()
    r_xax = np.abs(x - x @ a @ x).max()
    na = 1.0 + ctx.element_norm(a)
    nx = 1.0 + ctx.element_norm(x)
    if r_axa > tol.zero_abs_tol * na * na * nx or r_xax > tol.zero_abs_tol * na * nx * nx:
        return False
    return is_hermitian_ctx(a @ x, ctx, tol) and is_hermitian_ctx(x @ a, ctx, tol)


def ctx_mp_inverse(a, ctx, tol=DEFAULT_TOL):
    """Moore-Penrose inverse inside a block algebra, computed blockwise.

    The direct sum with the max norm inherits inverses blockwise, so the
    element has an inverse exactly when every block does; the first failing
    block determines the reported failure.
    """
    if not ctx.contains(a, tol):
        raise PreconditionError("element is not block-diagonal for this context")
    parts = []
    for blk in ctx.split(a):
        res = mp_inverse(blk, ctx.norm, tol)
        if not res.exists:
            return MpResult(exists=False, failure=res.failure)
        parts.append(res.mp)
    x = ctx.join(parts)
    return MpResult(
        exists=True,
        mp=x,
        witness_p=x @ a,
        witness_q=a @ x,
        residual_axa=float(np.abs(a - a @ x @ a).max()),
        residual_xax=float(np.abs(x - x @ a @ x).max()),
    )


def lift_left(a, ctx):
    """Matrix of x -> a x on the coordinatized algebra.

    Acts blockwise as kron(block, I).  Under the coordinate l1/l2/linf
    norms the operator norm of a left lift equals the algebra norm of a.
    """
    if not ctx.contains(a):
        raise PreconditionError("element is not block-diagonal for this context")
    parts = [np.kron(blk, np.eye(b, dtype=np.complex128)) for blk, b in zip(ctx.split(a), ctx.blocks)]
    return _block_diag(parts)


def lift_right(a, ctx):
    """Matrix of x -> x a on the coordinatized algebra (kron(I, block^T))."""
    if not ctx.contains(a):
        raise PreconditionError("element is not block-diagonal for this context")
    parts = [np.kron(np.eye(b, dtype=np.complex128), blk.T) for blk, b in zip(ctx.split(a), ctx.blocks)]
    return _block_diag(parts)


def _block_diag(parts):
    total = sum(p.shape[0] for p in parts)
    out = np.zeros((total, total), dtype=np.complex128)
    start = 0
    for p in parts:
        k = p.shape[0]
        out[start : start + k, start : start + k] = p
        start += k
    return out


def verify_mp_lifted(a, x, ctx, tol=DEFAULT_TOL):
    """Penrose verification for the lifted pair (x -> a x, x -> x a).

    The product of two left lifts is the left lift of the product, and
    ||exp(i t L_d)|| = ||exp(i t d)||, so hermitianness of the lifted
    products reduces exactly to hermitianness of a x and x a in the base
    algebra; no norm on the lifted space is ever evaluated.
    """
    la, lx = lift_left(a, ctx), lift_left(x, ctx)
    ra, rx = lift_right(a, ctx), lift_right(x, ctx)
    scale = tol.zero_abs_tol * (1.0 + ctx.element_norm(a)) ** 2 * (1.0 + ctx.element_norm(x)) ** 2
    for m, mx in ((la, lx), (ra, rx)):
        if np.abs(m - m @ mx @ m).max() > scale:
            return False
        if np.abs(mx - mx @ m @ mx).max() > scale:
            return False
    return is_hermitian_ctx(a @ x, ctx, tol) and is_hermitian_ctx(x @ a, ctx, tol)


def adjoint_mp(t, kind, tol=DEFAULT_TOL):
    """Moore-Penrose inverse of the Banach adjoint (plain transpose).

    The adjoint lives on the dual space, which carries the dual norm.  In
    finite dimension existence on either side implies it on the other, and
    the inverse of the transpose is the transpose of the inverse; both
    facts are asserted here rather than assumed.
    """
    t = as_square(t)
    primal = mp_inverse(t, kind, tol)
    adj = mp_inverse(t.T, dual_of(kind), tol)
    if primal.exists != adj.exists:
        raise ToleranceBreakdown(
            "adjoint and primal disagree on Moore-Penrose existence"
        )
    if primal.exists:
        scale = 1.0 + op_norm(primal.mp, kind)
        if np.abs(adj.mp - primal.mp.T).max() > 1e-9 * scale:
            raise ToleranceBreakdown("adjoint inverse is not the transposed inverse")
    return adj


def direct_sum_mp(t1, result1, t2, result2, kind, tol=DEFAULT_TOL):
    """Moore-Penrose inverse of t1 (+) t2 under the max norm of the sum.

    The block diagonal of the two inverses is the inverse of the block
    diagonal; the claim is verified on the sum space before returning.
    """
    t1 = as_square(t1)
    t2 = as_square(t2)
    if not (result1.exists and result2.exists):
        raise PreconditionError("both summands must have a Moore-Penrose inverse")
    ctx = AlgebraContext((t1.shape[0], t2.shape[0]), kind)
    t = _block_diag([t1, t2])
    x = _block_diag([result1.mp, result2.mp])
    if not verify_mp_ctx(t, x, ctx, tol):
        raise ToleranceBreakdown("direct-sum inverse failed verification")
    return x


def quotient_mp(a, ctx, ideal_blocks, tol=DEFAULT_TOL):
    """Moore-Penrose inverse in the quotient by a block ideal.

    The ideal consists of the selected blocks (a proper closed bilateral
    ideal of the direct sum); the quotient algebra is realized on the
    complementary blocks.  The inverse of the projected element is computed
    there and checked against the projection of the inverse of a.
    """
    ideal = sorted(set(int(i) for i in ideal_blocks))
    if any(i < 0 or i >= len(ctx.blocks) for i in ideal):
        raise ValueError("ideal block index out of range")
    keep = [i for i in range(len(ctx.blocks)) if i not in ideal]
    if not keep:
        raise ValueError("ideal covers every block; a proper ideal is required")
    full = ctx_mp_inverse(a, ctx, tol)
    if not full.exists:
        raise PreconditionError("element has no Moore-Penrose inverse in the context")
    parts = ctx.split(a)
    q_ctx = AlgebraContext(tuple(ctx.blocks[i] for i in keep), ctx.norm)
    q_a = _block_diag([parts[i] for i in keep])
    q_res = ctx_mp_inverse(q_a, q_ctx, tol)
    if not q_res.exists:
        raise ToleranceBreakdown("quotient element lost its inverse")
    projected = _block_diag([ctx.split(full.mp)[i] for i in keep])
    scale = 1.0 + float(np.abs(projected).max())
    if np.abs(q_res.mp - projected).max() > tol.zero_abs_tol * scale:
        raise ToleranceBreakdown("quotient inverse does not match the projected inverse")
    return q_res


def conjugate_transport(u, f, kind, tol=DEFAULT_TOL):
    """Transport the inverse of u along an isometric change of frame.

    For invertible f with f and f^-1 isometric for the norm, the inverse of
    f^-1 u f is f^-1 u_mp f.  The caller asserts isometry (permutations and
    unimodular diagonals qualify for l1/linf, unitaries for l2); the result
    is verified, and a failure reports f as non-isometric.
    """
    u = as_square(u)
    f = as_square(f)
    rank_f, _, _ = rank_nullspace_range(f, tol)
    if rank_f != f.shape[0]:
        raise PreconditionError("frame matrix is singular")
    res = mp_inverse(u, kind, tol)
    if not res.exists:
        raise PreconditionError("u has no Moore-Penrose inverse for this norm")
    f_inv = inverse(f)
    transported = f_inv @ res.mp @ f
    if not verify_mp(f_inv @ u @ f, transported, kind, tol):
        raise PreconditionError(
            "transported inverse failed verification; f is not an isometry for this norm"
        )
    return transported
