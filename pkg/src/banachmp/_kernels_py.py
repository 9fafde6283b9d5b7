"""Numpy implementations of the hot numeric kernels.

The compiled twin ``_kernels_cy`` exports the same callables with the same
contracts; :mod:`banachmp.kernels` picks whichever is importable.  The
matrix exponential is kept in algorithmic lockstep with the compiled one
(same series order, same scaling rule).  The hermitian eigenvalue kernel
differs by design: the compiled backend carries a self-contained cyclic
Jacobi solver, while this fallback defers to LAPACK through numpy, so the
two backends cross-validate each other in the parity tests.
"""

from __future__ import annotations

import numpy as np

NORM_L1 = 1
NORM_L2 = 2
NORM_LINF = 3

_SERIES_ORDER = 18
_SCALE_TARGET = 0.5
_MAX_SQUARINGS = 64


def _as_c128(a):
    return np.ascontiguousarray(a, dtype=np.complex128)


def mat_exp(a):
    """exp(a) by scaling-and-squaring around a fixed-order truncated series.

    The input is halved until its max-row-sum norm is at most 0.5, run
    through an order-18 Taylor polynomial in Horner form, and squared back
    up.  exp(0) is the identity exactly.
    """
    a = _as_c128(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("mat_exp needs a square matrix")
    n = a.shape[0]
    norm = float(np.abs(a).sum(axis=1).max()) if n else 0.0
    squarings = 0
    while norm > _SCALE_TARGET and squarings < _MAX_SQUARINGS:
        norm *= 0.5
        squarings += 1
    x = a / (2.0**squarings)
    eye = np.eye(n, dtype=np.complex128)
    result = eye.copy()
    for k in range(_SERIES_ORDER, 0, -1):
        result = eye + (x @ result) / k
    for _ in range(squarings):
        result = result @ result
    return result


def op_norm_l1(a):
    """Max absolute column sum."""
    a = _as_c128(a)
    if a.size == 0:
        return 0.0
    return float(np.abs(a).sum(axis=0).max())


def op_norm_linf(a):
    """Max absolute row sum."""
    a = _as_c128(a)
    if a.size == 0:
        return 0.0
    return float(np.abs(a).sum(axis=1).max())


def herm_eig_max(h):
    """Largest eigenvalue of a hermitian matrix.

    Accuracy must not depend on eigenvalue gaps, because callers evaluate
    norms of near-identity matrices whose spectra are tightly clustered;
    LAPACK's symmetric solver satisfies that, and the compiled backend's
    Jacobi sweeps do the same without the dependency.
    """
    h = _as_c128(h)
    if h.shape[0] == 0:
        return 0.0
    a = (h + h.conj().T) / 2.0
    if not a.any():
        return 0.0
    return float(np.linalg.eigvalsh(a)[-1])


def op_norm_l2(a):
    """Largest singular value: the root of the top eigenvalue of a* a."""
    a = _as_c128(a)
    if a.size == 0:
        return 0.0
    b = a.conj().T @ a
    return float(np.sqrt(max(herm_eig_max(b), 0.0)))


def op_norm(a, code):
    if code == NORM_L1:
        return op_norm_l1(a)
    if code == NORM_L2:
        return op_norm_l2(a)
    if code == NORM_LINF:
        return op_norm_linf(a)
    raise ValueError(f"unknown norm code {code!r}")


def exp_sweep_defect(a, ts, code):
    """max over t in ts of abs(op_norm(exp(i t a)) - 1)."""
    a = _as_c128(a)
    worst = 0.0
    for t in np.asarray(ts, dtype=np.float64):
        e = mat_exp((1j * t) * a)
        worst = max(worst, abs(op_norm(e, code) - 1.0))
    return worst
