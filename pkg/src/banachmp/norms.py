"""Induced operator norms and logarithmic norms for l1, l2, linf.

The logarithmic norm (matrix measure) is the one-sided derivative of
t -> ||I + t m|| at 0+.  It has a closed form for all three norms, which is
what lets hermitian verdicts avoid any sweep over t.  Duality pairs l1 with
linf and leaves l2 fixed; the Banach adjoint of a matrix under the bilinear
dual pairing is its plain transpose, with no conjugation.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from . import kernels
from .matcore import as_matrix, as_square


class NormKind(Enum):
    """Which vector norm C^n carries; fixes the induced operator norm."""

    L1 = "l1"
    L2 = "l2"
    LINF = "linf"

    @classmethod
    def from_label(cls, label):
        try:
            return cls(label.lower())
        except ValueError:
            raise ValueError(f"unknown norm {label!r}; expected l1, l2 or linf") from None


_CODE = {
    NormKind.L1: kernels.NORM_L1,
    NormKind.L2: kernels.NORM_L2,
    NormKind.LINF: kernels.NORM_LINF,
}


def dual_of(kind):
    """Norm carried by the dual space: l1 <-> linf, l2 <-> l2."""
    if kind is NormKind.L1:
        return NormKind.LINF
    if kind is NormKind.LINF:
        return NormKind.L1
    return NormKind.L2


def op_norm(m, kind):
    """Operator norm of m induced by the given vector norm.

    l1 is the max absolute column sum, linf the max absolute row sum, and
    l2 the largest singular value (power iteration on m* m).
    """
    return kernels.op_norm(as_matrix(m), _CODE[kind])


def log_norm(m, kind):
    """Logarithmic norm of a square matrix.

    Closed forms: for l1 the max over columns j of Re m_jj plus the
    off-diagonal absolute column sum, for linf the row-wise mirror, and for
    l2 the largest eigenvalue of the hermitian part (m + m*)/2.
    """
    m = as_square(m)
    n = m.shape[0]
    if n == 0:
        return 0.0
    if kind is NormKind.L2:
        h = (m + m.conj().T) / 2.0
        return float(kernels.herm_eig_max(h))
    absm = np.abs(m)
    re_diag = np.real(np.diagonal(m))
    if kind is NormKind.L1:
        off = absm.sum(axis=0) - np.diagonal(absm)
    else:
        off = absm.sum(axis=1) - np.diagonal(absm)
    return float((re_diag + off).max())
