"""EP classification and its equivalence batteries.

An element with a Moore-Penrose inverse is EP when it commutes with that
inverse.  In finite dimension this is equivalent to the null spaces (or the
ranges) of the element and its inverse coinciding, and to the existence of
invertible multipliers carrying one onto the other.  Every equivalence this
module reports is decided by an independent computation and the agreement
of the flags is asserted per instance, never assumed.

Multiplier witnesses are constructed from the splitting X = N(a) + R(a)
that EP elements admit: the witness acts as the identity on the kernel and
as an explicit power of the invertible part on the range.  Statements
quantified over the invertible group are decided through such closed-form
candidates and verified by multiplication; searching the group would be
numerically meaningless.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matcore import (
    DEFAULT_TOL,
    PreconditionError,
    SubspaceBasis,
    ToleranceBreakdown,
    as_square,
    inverse,
    orthonormal_columns,
    rank_nullspace_range,
    subspace_contains,
    subspace_equal,
    subspace_intersect,
    subspace_sum,
)
from .moorepenrose import (
    AlgebraContext,
    ctx_mp_inverse,
    lift_left,
    lift_right,
    mp_inverse,
)
from .norms import dual_of, op_norm


class NoGroupInverse(Exception):
    """The element has no group inverse (its rank drops on squaring)."""


@dataclass(frozen=True)
class EpEquivalences:
    """The four independently computed EP criteria for one instance."""

    commutes: bool
    nullspace_match: bool
    range_match: bool
    witness_found: bool

    def as_tuple(self):
        return (self.commutes, self.nullspace_match, self.range_match, self.witness_found)

    def agree(self):
        return len(set(self.as_tuple())) == 1


@dataclass(frozen=True)
class EpReport:
    """EP verdict with the equivalence flags and multiplier witnesses.

    witness_p is invertible with mp = P a = a P, witness_q invertible with
    a = Q mp = mp Q; both are present exactly when the element is EP.
    """

    is_ep: bool
    commutator_norm: float
    checks: EpEquivalences
    witness_p: np.ndarray | None = None
    witness_q: np.ndarray | None = None


@dataclass(frozen=True)
class ProductReport:
    """Hypotheses and conclusions for a product of two EP elements."""

    hyp_range: bool
    hyp_null: bool
    null_sum_eq: bool
    range_cap_eq: bool
    product_ep: bool
    hyp_range_defect: float = 0.0
    hyp_null_defect: float = 0.0


def _maxabs(m):
    return float(np.abs(m).max()) if m.size else 0.0


def _invertible(m, tol):
    m = as_square(m)
    return orthonormal_columns(m, tol.rank_rel_tol).shape[1] == m.shape[0]


def _split_data(a, tol):
    """Data for the splitting X = N(a) + R(a), or None if not direct.

    Returns the kernel basis, range basis, the matrix of a restricted to
    its range (exact, since a maps everything into its range), and the
    stacked basis of the whole space.
    """
    a = as_square(a)
    n = a.shape[0]
    rank, nsp, rng = rank_nullspace_range(a, tol)
    basis = np.hstack([nsp.basis, rng.basis])
    if orthonormal_columns(basis, tol.rank_rel_tol).shape[1] < n:
        return None
    restricted = rng.basis.conj().T @ (a @ rng.basis)
    if orthonormal_columns(restricted, tol.rank_rel_tol).shape[1] < rank:
        return None
    return nsp, rng, restricted, basis


def _block_embed(k, top, bottom):
    n = k + bottom.shape[0]
    out = np.eye(n, dtype=np.complex128) * top
    out[k:, k:] = bottom
    return out


def _ep_witnesses(a, x, tol):
    """Multiplier witnesses (P, Q), each None when it fails verification.

    P and Q act as the identity on N(a); on the range they act as the
    inverse square, respectively the square, of a restricted there.
    """
    data = _split_data(a, tol)
    if data is None:
        return None, None
    nsp, rng, restricted, basis = data
    k = nsp.dim
    sq = restricted @ restricted
    try:
        sq_inv = inverse(sq)
        basis_inv = inverse(basis)
    except ToleranceBreakdown:
        return None, None
    p_wit = basis @ _block_embed(k, 1.0, sq_inv) @ basis_inv
    q_wit = basis @ _block_embed(k, 1.0, sq) @ basis_inv
    bound = tol.herm_tol
    sa = 1.0 + _maxabs(a)
    sx = 1.0 + _maxabs(x)
    p_ok = (
        _maxabs(x - p_wit @ a) <= bound * sa * (1.0 + _maxabs(p_wit))
        and _maxabs(x - a @ p_wit) <= bound * sa * (1.0 + _maxabs(p_wit))
    )
    q_ok = (
        _maxabs(a - q_wit @ x) <= bound * sx * (1.0 + _maxabs(q_wit))
        and _maxabs(a - x @ q_wit) <= bound * sx * (1.0 + _maxabs(q_wit))
    )
    return (p_wit if p_ok else None), (q_wit if q_ok else None)


def _ep_report(a, mp_result, kind, tol):
    x = mp_result.mp
    comm = op_norm(a @ x - x @ a, kind)
    scale = max(1.0, op_norm(a @ x, kind), op_norm(x @ a, kind))
    commutes = comm <= tol.herm_tol * scale
    _, nsp_a, rng_a = rank_nullspace_range(a, tol)
    _, nsp_x, rng_x = rank_nullspace_range(x, tol)
    p_wit, q_wit = _ep_witnesses(a, x, tol)
    checks = EpEquivalences(
        commutes=commutes,
        nullspace_match=subspace_equal(nsp_a, nsp_x, tol),
        range_match=subspace_equal(rng_a, rng_x, tol),
        witness_found=p_wit is not None and q_wit is not None,
    )
    if not checks.agree():
        raise ToleranceBreakdown(
            f"EP equivalence flags disagree: {checks}; tolerances too loose for this instance"
        )
    if commutes:
        return EpReport(True, comm, checks, p_wit, q_wit)
    return EpReport(False, comm, checks)


def is_ep(a, kind, tol=DEFAULT_TOL):
    """Full EP report for a square matrix under the given norm."""
    a = as_square(a)
    res = mp_inverse(a, kind, tol)
    if not res.exists:
        raise PreconditionError(
            f"no Moore-Penrose inverse under {kind.value} ({res.failure.value})"
        )
    return _ep_report(a, res, kind, tol)


def ep_projector(a, kind, tol=DEFAULT_TOL):
    """The unique hermitian idempotent with the kernel and range of a.

    Exists exactly when a is EP, in which case it is a @ mp = mp @ a.
    """
    a = as_square(a)
    res = mp_inverse(a, kind, tol)
    if not res.exists:
        raise PreconditionError("no Moore-Penrose inverse under this norm")
    report = _ep_report(a, res, kind, tol)
    if not report.is_ep:
        raise PreconditionError("element is not EP; no such projector exists")
    return a @ res.mp


def group_inverse(a, tol=DEFAULT_TOL):
    """Group inverse of a square matrix.

    Exists exactly when rank(a^2) = rank(a); built from the splitting
    X = N(a) + R(a) as zero on the kernel and the inverse of a on the
    range.  Norm-free; for EP elements it coincides with the Moore-Penrose
    inverse.
    """
    a = as_square(a)
    rank_a = rank_nullspace_range(a, tol)[0]
    rank_a2 = rank_nullspace_range(a @ a, tol)[0]
    if rank_a2 < rank_a:
        raise NoGroupInverse(f"rank drops from {rank_a} to {rank_a2} on squaring")
    data = _split_data(a, tol)
    if data is None:
        raise ToleranceBreakdown("rank test and splitting disagree")
    nsp, _, restricted, basis = data
    b = basis @ _block_embed(nsp.dim, 0.0, inverse(restricted)) @ inverse(basis)
    scale = (1.0 + _maxabs(a)) * (1.0 + _maxabs(b))
    ok = (
        _maxabs(a - a @ b @ a) <= tol.zero_abs_tol * scale * (1.0 + _maxabs(a))
        and _maxabs(b - b @ a @ b) <= tol.zero_abs_tol * scale * (1.0 + _maxabs(b))
        and _maxabs(a @ b - b @ a) <= tol.zero_abs_tol * scale
    )
    if not ok:
        raise ToleranceBreakdown("group inverse candidate failed verification")
    return b


def powers_ep(a, kind, max_k, tol=DEFAULT_TOL):
    """EP verdicts for a, a^2, ..., a^max_k; requires a itself to be EP."""
    a = as_square(a)
    if not is_ep(a, kind, tol).is_ep:
        raise PreconditionError("element is not EP")
    out = []
    power = np.eye(a.shape[0], dtype=np.complex128)
    for _ in range(max_k):
        power = power @ a
        out.append(is_ep(power, kind, tol).is_ep)
    return out


def adjoint_ep(t, kind, tol=DEFAULT_TOL):
    """EP status of t, checked against its plain transpose on the dual norm.

    The two verdicts are provably equal; a disagreement is reported as a
    tolerance breakdown rather than returned.
    """
    t = as_square(t)
    res = mp_inverse(t, kind, tol)
    if not res.exists:
        raise PreconditionError("no Moore-Penrose inverse under this norm")
    res_d = mp_inverse(t.T, dual_of(kind), tol)
    if not res_d.exists:
        raise ToleranceBreakdown("transpose lost its inverse under the dual norm")
    verdict = _ep_report(t, res, kind, tol).is_ep
    verdict_dual = _ep_report(t.T, res_d, dual_of(kind), tol).is_ep
    if verdict != verdict_dual:
        raise ToleranceBreakdown("EP status is not transpose-stable at this tolerance")
    return verdict


def _hypothesis_flags(s, s_mp, t, t_mp, st, tol):
    n = st.shape[0]
    eye = np.eye(n, dtype=np.complex128)
    range_defect = _maxabs((eye - t @ t_mp) @ st)
    null_defect = _maxabs(st @ (eye - s_mp @ s))
    scale = 1.0 + _maxabs(st)
    return (
        range_defect <= tol.zero_abs_tol * scale,
        null_defect <= tol.zero_abs_tol * scale,
        range_defect,
        null_defect,
    )


def product_ep_check(s, t, kind, tol=DEFAULT_TOL):
    """EP analysis of a product of two EP elements.

    Reports whether the range/kernel hypotheses hold, whether the kernel of
    the product is the sum of the kernels and its range the intersection of
    the ranges, and whether the product is EP.  Three implications among
    these flags always hold in finite dimension and are asserted per call.
    """
    s = as_square(s)
    t = as_square(t)
    if s.shape != t.shape:
        raise ValueError("factors must act on the same space")
    res_s = mp_inverse(s, kind, tol)
    if not res_s.exists:
        raise PreconditionError("first factor has no Moore-Penrose inverse")
    res_t = mp_inverse(t, kind, tol)
    if not res_t.exists:
        raise PreconditionError("second factor has no Moore-Penrose inverse")
    if not _ep_report(s, res_s, kind, tol).is_ep:
        raise PreconditionError("first factor is not EP")
    if not _ep_report(t, res_t, kind, tol).is_ep:
        raise PreconditionError("second factor is not EP")
    st = s @ t
    res_st = mp_inverse(st, kind, tol)
    if not res_st.exists:
        raise PreconditionError("product has no Moore-Penrose inverse")

    hyp_range, hyp_null, d_range, d_null = _hypothesis_flags(s, res_s.mp, t, res_t.mp, st, tol)
    _, nsp_s, rng_s = rank_nullspace_range(s, tol)
    _, nsp_t, rng_t = rank_nullspace_range(t, tol)
    _, nsp_st, rng_st = rank_nullspace_range(st, tol)
    null_sum_eq = subspace_equal(nsp_st, subspace_sum(nsp_s, nsp_t, tol), tol)
    range_cap_eq = subspace_equal(rng_st, subspace_intersect(rng_s, rng_t, tol), tol)
    product_ep = _ep_report(st, res_st, kind, tol).is_ep

    report = ProductReport(hyp_range, hyp_null, null_sum_eq, range_cap_eq, product_ep, d_range, d_null)
    if null_sum_eq and range_cap_eq and not product_ep:
        raise ToleranceBreakdown("kernel/range laws hold but the product is not EP")
    if product_ep and not (
        subspace_contains(rng_t, rng_st, tol) and subspace_contains(nsp_st, nsp_s, tol)
    ):
        raise ToleranceBreakdown("EP product violates the containment conclusions")
    if hyp_range and hyp_null and not (null_sum_eq and range_cap_eq and product_ep):
        raise ToleranceBreakdown("hypotheses hold but a conclusion fails")
    return report


def product_ep_check_lifted(a, b, ctx, tol=DEFAULT_TOL):
    """Product analysis computed on the left-multiplication lifts.

    Same flags as :func:`product_ep_check`, but every ingredient is read
    off the lifted operators on the coordinatized algebra.  For block
    contexts the flags provably match the direct matrix computation.
    """
    res_a = ctx_mp_inverse(a, ctx, tol)
    if not res_a.exists:
        raise PreconditionError("first factor has no Moore-Penrose inverse")
    res_b = ctx_mp_inverse(b, ctx, tol)
    if not res_b.exists:
        raise PreconditionError("second factor has no Moore-Penrose inverse")
    ab = a @ b
    res_ab = ctx_mp_inverse(ab, ctx, tol)
    if not res_ab.exists:
        raise PreconditionError("product has no Moore-Penrose inverse")

    la, lb = lift_left(a, ctx), lift_left(b, ctx)
    lxa, lxb = lift_left(res_a.mp, ctx), lift_left(res_b.mp, ctx)
    lab, lxab = lift_left(ab, ctx), lift_left(res_ab.mp, ctx)
    hyp_range, hyp_null, d_range, d_null = _hypothesis_flags(la, lxa, lb, lxb, la @ lb, tol)
    _, nsp_a, rng_a = rank_nullspace_range(la, tol)
    _, nsp_b, rng_b = rank_nullspace_range(lb, tol)
    _, nsp_ab, rng_ab = rank_nullspace_range(lab, tol)
    null_sum_eq = subspace_equal(nsp_ab, subspace_sum(nsp_a, nsp_b, tol), tol)
    range_cap_eq = subspace_equal(rng_ab, subspace_intersect(rng_a, rng_b, tol), tol)
    comm = _maxabs(lab @ lxab - lxab @ lab)
    scale = max(1.0, _maxabs(lab @ lxab), _maxabs(lxab @ lab))
    product_ep = comm <= tol.herm_tol * scale
    return ProductReport(hyp_range, hyp_null, null_sum_eq, range_cap_eq, product_ep, d_range, d_null)


def algebra_ep_battery(a, ctx, tol=DEFAULT_TOL):
    """Evaluate the full battery of EP equivalences in a block algebra.

    Every statement is decided by its own computation: commutators on the
    element and on both lifts, kernel and orbit equalities of the lifted
    maps, multiplier witnesses on the lifts, the square identities, orbit
    memberships, and the invertible-orbit statements through closed-form
    candidates.  The returned booleans must agree; disagreement raises.
    """
    res = ctx_mp_inverse(a, ctx, tol)
    if not res.exists:
        raise PreconditionError("element has no Moore-Penrose inverse in this context")
    x = res.mp
    n = ctx.dim
    bound = tol.herm_tol
    eye = np.eye(n, dtype=np.complex128)
    p = a @ x

    la, lx = lift_left(a, ctx), lift_left(x, ctx)
    ra, rx = lift_right(a, ctx), lift_right(x, ctx)
    _, nsp_la, rng_la = rank_nullspace_range(la, tol)
    _, nsp_lx, rng_lx = rank_nullspace_range(lx, tol)
    _, nsp_ra, rng_ra = rank_nullspace_range(ra, tol)
    _, nsp_rx, rng_rx = rank_nullspace_range(rx, tol)

    def small(m, scale):
        return _maxabs(m) <= bound * max(1.0, scale)

    def member(v, space):
        norm = float(np.linalg.norm(v))
        if norm <= tol.zero_abs_tol:
            return True
        line = SubspaceBasis.from_vectors(v[:, None] / norm, tol)
        return subspace_contains(space, line, tol)

    lp_wit, lq_wit = _ep_witnesses(la, lx, tol)
    rp_wit, rq_wit = _ep_witnesses(ra, rx, tol)

    va, vx = ctx.vec(a), ctx.vec(x)
    c_cand = a @ a + (eye - p)
    u_cand = x @ x + (eye - p)
    sa = 1.0 + _maxabs(a)
    sx = 1.0 + _maxabs(x)
    c_inv = _invertible(c_cand, tol)
    u_inv = _invertible(u_cand, tol)
    elem_right = c_inv and small(a - x @ c_cand, sx * (1.0 + _maxabs(c_cand)))
    elem_left = c_inv and small(a - c_cand @ x, sx * (1.0 + _maxabs(c_cand)))
    mp_right = u_inv and small(x - a @ u_cand, sa * (1.0 + _maxabs(u_cand)))
    mp_left = u_inv and small(x - u_cand @ a, sa * (1.0 + _maxabs(u_cand)))

    flags = {
        "commutes": small(a @ x - x @ a, max(_maxabs(p), _maxabs(x @ a))),
        "left_mult_ep": small(la @ lx - lx @ la, max(_maxabs(la @ lx), _maxabs(lx @ la))),
        "left_kernel_eq": subspace_equal(nsp_la, nsp_lx, tol),
        "left_orbit_eq": subspace_equal(rng_la, rng_lx, tol),
        "left_witness_to_mp": lp_wit is not None,
        "left_witness_from_mp": lq_wit is not None,
        "right_mult_ep": small(ra @ rx - rx @ ra, max(_maxabs(ra @ rx), _maxabs(rx @ ra))),
        "right_kernel_eq": subspace_equal(nsp_ra, nsp_rx, tol),
        "right_orbit_eq": subspace_equal(rng_ra, rng_rx, tol),
        "right_witness_to_mp": rp_wit is not None,
        "right_witness_from_mp": rq_wit is not None,
        "square_identity": small(a @ a @ x - a, sa * sa * sx) and small(x @ a @ a - a, sa * sa * sx),
        "element_in_mp_orbits": member(va, rng_lx) and member(va, rng_rx),
        "mp_in_element_orbits": member(vx, rng_la) and member(vx, rng_ra),
        "element_in_mp_invertible_orbits": elem_right and elem_left,
        "mp_in_element_invertible_orbits": mp_right and mp_left,
        "right_invertible_orbit_eq": elem_right and mp_right,
        "left_invertible_orbit_eq": elem_left and mp_left,
    }
    if len(set(flags.values())) != 1:
        raise ToleranceBreakdown(f"EP battery statements disagree: {flags}")
    return flags
