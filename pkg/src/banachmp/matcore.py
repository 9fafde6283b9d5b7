"""Dense complex matrix core.

Validation, rank and subspace extraction, the matrix exponential, and the
subspace lattice (sum, intersection, containment) that the rest of the
library quantifies over.  Matrices are plain ``numpy.ndarray`` values of
complex128; every rank decision goes through one pivoted Gram-Schmidt
kernel so that all tolerance questions are answered in a single place.

Subspace bases are orthonormal in the Euclidean inner product no matter
which Banach norm the ambient space carries: spans are norm-independent,
and the ambient norm only ever matters for hermitian verdicts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels


class ToleranceBreakdown(Exception):
    """An internally constructed object failed its own verification.

    Raised instead of silently returning a value that does not satisfy the
    identities it was built for; usually means the active tolerances are
    too loose or the instance is too ill-conditioned for them.
    """


class PreconditionError(Exception):
    """An operation was called on inputs outside its stated domain."""


@dataclass(frozen=True)
class ToleranceProfile:
    """Numeric thresholds used across the library.

    rank_rel_tol: rank cutoff, relative to the largest column norm.
    zero_abs_tol: absolute threshold below which a residual counts as zero.
    herm_tol: bound on logarithmic norms in hermitian verdicts.
    """

    rank_rel_tol: float = 1e-10
    zero_abs_tol: float = 1e-9
    herm_tol: float = 1e-8

    def __post_init__(self):
        for name in ("rank_rel_tol", "zero_abs_tol", "herm_tol"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")

    @classmethod
    def from_herm_tol(cls, herm_tol):
        """Profile with the two auxiliary tolerances scaled from herm_tol.

        The scaling reproduces the default profile at herm_tol = 1e-8.
        """
        return cls(
            rank_rel_tol=herm_tol * 1e-2,
            zero_abs_tol=herm_tol * 1e-1,
            herm_tol=herm_tol,
        )


DEFAULT_TOL = ToleranceProfile()


def as_matrix(m):
    """Coerce input to a finite complex128 2-D array."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={arr.ndim}")
    if arr.size and not np.isfinite(arr).all():
        raise ValueError("matrix entries must be finite")
    return arr


def as_square(m):
    arr = as_matrix(m)
    if arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    return arr


def mat_exp(m):
    """Matrix exponential of a square matrix (scaling and squaring)."""
    return kernels.mat_exp(as_square(m))


def _readonly(arr):
    arr = np.ascontiguousarray(arr)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class SubspaceBasis:
    """A subspace of C^n carried by an orthonormal column basis.

    ``basis`` has shape (ambient_dim, dim) and is marked read-only; a
    zero-dimensional subspace is an (n, 0) array.
    """

    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self):
        if self.basis.shape[0] != self.ambient_dim:
            raise ValueError("basis rows must match ambient_dim")

    @property
    def dim(self):
        return self.basis.shape[1]

    def projector(self):
        """Euclidean orthogonal projector onto the subspace."""
        return self.basis @ self.basis.conj().T

    @classmethod
    def zero(cls, n):
        return cls(n, _readonly(np.zeros((n, 0), dtype=np.complex128)))

    @classmethod
    def full(cls, n):
        return cls(n, _readonly(np.eye(n, dtype=np.complex128)))

    @classmethod
    def from_vectors(cls, vectors, tol=DEFAULT_TOL):
        """Span of the given column vectors, orthonormalized at tolerance."""
        cols = as_matrix(vectors)
        return cls(cols.shape[0], _readonly(orthonormal_columns(cols, tol.rank_rel_tol)))


def orthonormal_columns(cols, rel_tol, exact_dim=None):
    """Orthonormal basis of the column span, by pivoted Gram-Schmidt.

    At each step the remaining column of largest residual norm is accepted,
    reorthogonalized once against the basis so far, and projected out of
    the rest.  Columns whose residual norm falls below ``rel_tol`` times
    the largest initial column norm count as dependent.  When the span
    dimension is known a priori, ``exact_dim`` keeps exactly that many
    vectors regardless of the threshold.
    """
    work = np.array(cols, dtype=np.complex128)
    n, m = work.shape
    limit = min(n, m) if exact_dim is None else exact_dim
    norms = np.linalg.norm(work, axis=0)
    scale = float(norms.max()) if m else 0.0
    thresh = rel_tol * scale
    taken = np.zeros(m, dtype=bool)
    basis = []
    while len(basis) < limit:
        norms_masked = np.where(taken, -1.0, norms)
        j = int(np.argmax(norms_masked))
        nj = norms_masked[j]
        if exact_dim is None and nj <= thresh:
            break
        if nj <= 0.0:
            raise ToleranceBreakdown("requested span dimension is not attainable")
        q = work[:, j] / nj
        if basis:
            bmat = np.column_stack(basis)
            q = q - bmat @ (bmat.conj().T @ q)
            qn = np.linalg.norm(q)
            if qn <= max(thresh, 1e-300) and exact_dim is None:
                taken[j] = True
                norms[j] = 0.0
                continue
            q = q / qn
        taken[j] = True
        basis.append(q)
        rest = ~taken
        if rest.any():
            coeffs = q.conj() @ work[:, rest]
            work[:, rest] -= np.outer(q, coeffs)
            norms[rest] = np.linalg.norm(work[:, rest], axis=0)
    if not basis:
        return np.zeros((n, 0), dtype=np.complex128)
    return np.column_stack(basis)


def rank_nullspace_range(m, tol=DEFAULT_TOL):
    """Rank, null space, and range of a matrix, at the active tolerance.

    The rank is decided on the columns; the null space is the Euclidean
    complement of the conjugate-row span, so m @ v vanishes for every null
    basis vector up to roundoff.
    """
    m = as_matrix(m)
    rows, cols = m.shape
    range_basis = orthonormal_columns(m, tol.rank_rel_tol)
    rank = range_basis.shape[1]
    if rank == cols:
        nsp = np.zeros((cols, 0), dtype=np.complex128)
    else:
        row_span = orthonormal_columns(m.conj().T, tol.rank_rel_tol, exact_dim=rank)
        resid = np.eye(cols, dtype=np.complex128) - row_span @ row_span.conj().T
        nsp = orthonormal_columns(resid, tol.rank_rel_tol, exact_dim=cols - rank)
    return (
        rank,
        SubspaceBasis(cols, _readonly(nsp)),
        SubspaceBasis(rows, _readonly(range_basis)),
    )


def _check_ambient(u, v):
    if u.ambient_dim != v.ambient_dim:
        raise ValueError(
            f"ambient dimension mismatch: {u.ambient_dim} vs {v.ambient_dim}"
        )


def subspace_sum(u, v, tol=DEFAULT_TOL):
    """Span of the union of two subspaces."""
    _check_ambient(u, v)
    stacked = np.hstack([u.basis, v.basis])
    return SubspaceBasis.from_vectors(stacked, tol)


def subspace_intersect(u, v, tol=DEFAULT_TOL):
    """Intersection, via the null space of the stacked-basis system.

    A vector lies in both spans exactly when U x = V y has a solution, so
    the kernel of [U | -V] parametrizes the intersection.
    """
    _check_ambient(u, v)
    n = u.ambient_dim
    p = u.dim
    if p == 0 or v.dim == 0:
        return SubspaceBasis.zero(n)
    stacked = np.hstack([u.basis, -v.basis])
    _, kernel, _ = rank_nullspace_range(stacked, tol)
    if kernel.dim == 0:
        return SubspaceBasis.zero(n)
    meet = u.basis @ kernel.basis[:p, :]
    return SubspaceBasis.from_vectors(meet, tol)


def subspace_contains(u, v, tol=DEFAULT_TOL):
    """Whether u contains v, up to the zero tolerance on unit residuals."""
    _check_ambient(u, v)
    if v.dim == 0:
        return True
    resid = v.basis - u.basis @ (u.basis.conj().T @ v.basis)
    return float(np.linalg.norm(resid, axis=0).max()) <= tol.zero_abs_tol


def subspace_equal(u, v, tol=DEFAULT_TOL):
    """Mutual containment at tolerance."""
    if u.dim != v.dim:
        return False
    return subspace_contains(u, v, tol) and subspace_contains(v, u, tol)


def mgs_qr(c):
    """Unpivoted modified Gram-Schmidt QR of a full-column-rank matrix."""
    c = as_matrix(c)
    n, m = c.shape
    q = c.copy()
    r = np.zeros((m, m), dtype=np.complex128)
    scale = float(np.linalg.norm(q, axis=0).max()) if m else 0.0
    for j in range(m):
        for i in range(j):
            r[i, j] = np.vdot(q[:, i], q[:, j])
            q[:, j] -= r[i, j] * q[:, i]
        r[j, j] = np.linalg.norm(q[:, j])
        if r[j, j].real <= 1e-12 * scale:
            raise ToleranceBreakdown("matrix is rank deficient in a full-rank solve")
        q[:, j] /= r[j, j]
    return q, r


def solve_full_rank(c, rhs):
    """Least-squares solve c @ z = rhs for full-column-rank c, via QR.

    Exact for square invertible c; for consistent systems (rhs in the
    column span) it returns the unique solution.
    """
    c = as_matrix(c)
    rhs = np.asarray(rhs, dtype=np.complex128)
    q, r = mgs_qr(c)
    y = q.conj().T @ rhs
    m = r.shape[0]
    z = np.zeros_like(y)
    for i in range(m - 1, -1, -1):
        z[i] = (y[i] - r[i, i + 1 :] @ z[i + 1 :]) / r[i, i]
    return z


def inverse(c):
    """Inverse of a square matrix, via the QR solver."""
    c = as_square(c)
    return solve_full_rank(c, np.eye(c.shape[0], dtype=np.complex128))
