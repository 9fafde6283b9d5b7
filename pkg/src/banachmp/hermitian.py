"""Hermitian verdicts and hermitian idempotent synthesis.

An element is hermitian when exp(i t m) is an isometry for every real t.
That holds exactly when the logarithmic norms of +i m and -i m both vanish,
which is decidable in closed form, so the verdict never relies on sampling
t.  A finite exp sweep is still available as a redundant numerical witness.

Hermitian idempotents are the Banach analogue of orthogonal projectors.
Under l2 every subspace is the range of one; under l1/linf the hermitian
elements are exactly the real diagonal matrices, so the hermitian
idempotents are the 0/1 diagonals and only coordinate subspaces (spans of
standard basis vectors) are representable ranges.  That gap is precisely
what makes Moore-Penrose inverses norm-dependent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .matcore import DEFAULT_TOL, SubspaceBasis, as_square
from .norms import NormKind, log_norm, op_norm

_CODE = {
    NormKind.L1: kernels.NORM_L1,
    NormKind.L2: kernels.NORM_L2,
    NormKind.LINF: kernels.NORM_LINF,
}


class NotRepresentable(Exception):
    """No hermitian idempotent has the requested range or null space."""


@dataclass(frozen=True)
class HermitianVerdict:
    """Outcome of a hermitian test.

    log_norm_plus and log_norm_minus are the logarithmic norms of +i m and
    -i m; the verdict is true when both vanish within herm_tol.
    sweep_max_defect is the max over the requested t grid of
    abs(||exp(i t m)|| - 1), or None when no sweep was requested.
    """

    is_hermitian: bool
    log_norm_plus: float
    log_norm_minus: float
    sweep_max_defect: float | None = None


def is_hermitian(m, kind, tol=DEFAULT_TOL, sweep_points=0, sweep_halfwidth=10.0):
    """Decide hermitianness by the logarithmic-norm criterion.

    A positive sweep_points additionally evaluates the exp-sweep defect on
    an even grid over [-sweep_halfwidth, sweep_halfwidth]; the sweep is a
    diagnostic only and never part of the decision, since no finite grid
    can certify a for-all-t statement.
    """
    m = as_square(m)
    plus = log_norm(1j * m, kind)
    minus = log_norm(-1j * m, kind)
    verdict = abs(plus) <= tol.herm_tol and abs(minus) <= tol.herm_tol
    defect = None
    if sweep_points:
        ts = np.linspace(-sweep_halfwidth, sweep_halfwidth, sweep_points)
        defect = float(kernels.exp_sweep_defect(m, ts, _CODE[kind]))
    return HermitianVerdict(verdict, plus, minus, defect)


def is_hermitian_idempotent(m, kind, tol=DEFAULT_TOL):
    """True when m is idempotent and hermitian for the given norm."""
    m = as_square(m)
    scale = (1.0 + op_norm(m, kind)) ** 2
    if op_norm(m @ m - m, kind) > tol.herm_tol * scale:
        return False
    return is_hermitian(m, kind, tol).is_hermitian


def coordinate_support(space, tol=DEFAULT_TOL):
    """Indices of the standard basis vectors spanning the subspace, or None.

    A subspace is coordinate exactly when the row-support pattern of an
    orthonormal basis, thresholded at zero_abs_tol, has as many nonzero
    rows as the dimension; this is stable under rotations of the basis
    within the subspace.
    """
    row_norms = np.linalg.norm(space.basis, axis=1) if space.dim else np.zeros(space.ambient_dim)
    support = np.nonzero(row_norms > tol.zero_abs_tol)[0]
    if len(support) != space.dim:
        return None
    return support


def hermitian_idempotent_with_range(space, kind, tol=DEFAULT_TOL):
    """The hermitian idempotent whose range is the given subspace.

    For l2 this is the Euclidean orthogonal projector and always exists.
    For l1/linf it is the 0/1 diagonal supported on the subspace when the
    subspace is coordinate; otherwise NotRepresentable is raised.  The
    result is unique among hermitian idempotents with that range.
    """
    if kind is NormKind.L2:
        return space.projector()
    support = coordinate_support(space, tol)
    if support is None:
        raise NotRepresentable(
            f"no {kind.value} hermitian idempotent has this {space.dim}-dimensional range"
        )
    p = np.zeros((space.ambient_dim, space.ambient_dim), dtype=np.complex128)
    p[support, support] = 1.0
    return p


def hermitian_idempotent_with_nullspace(space, kind, tol=DEFAULT_TOL):
    """The hermitian idempotent whose null space is the given subspace.

    Complement of the range construction: P is hermitian idempotent with
    N(P) = S exactly when I - P is one with range S.  NotRepresentable
    propagates.
    """
    n = space.ambient_dim
    return np.eye(n, dtype=np.complex128) - hermitian_idempotent_with_range(space, kind, tol)
