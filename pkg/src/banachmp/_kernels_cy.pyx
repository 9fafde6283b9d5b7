# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot numeric kernels.

Mirrors ``_kernels_py`` exactly (same series order, same scaling rule, same
power-iteration schedule); the two backends may differ only by roundoff.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport hypot

cnp.import_array()

NORM_L1 = 1
NORM_L2 = 2
NORM_LINF = 3

cdef int _SERIES_ORDER = 18
cdef double _SCALE_TARGET = 0.5
cdef int _MAX_SQUARINGS = 64
cdef int _JACOBI_SWEEPS = 60
cdef double _JACOBI_RELTOL = 1e-14


cdef inline double _cabs(double complex z) noexcept nogil:
    return hypot(z.real, z.imag)


cdef void _matmul(const double complex[:, ::1] a, const double complex[:, ::1] b,
                  double complex[:, ::1] out, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i, j, k
    cdef double complex s
    for i in range(n):
        for j in range(n):
            s = 0
            for k in range(n):
                s = s + a[i, k] * b[k, j]
            out[i, j] = s


cdef double _max_row_sum(const double complex[:, ::1] a) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef double best = 0.0, acc
    for i in range(a.shape[0]):
        acc = 0.0
        for j in range(a.shape[1]):
            acc += _cabs(a[i, j])
        if acc > best:
            best = acc
    return best


cdef double _max_col_sum(const double complex[:, ::1] a) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef double best = 0.0, acc
    for j in range(a.shape[1]):
        acc = 0.0
        for i in range(a.shape[0]):
            acc += _cabs(a[i, j])
        if acc > best:
            best = acc
    return best


cdef void _mat_exp_into(const double complex[:, ::1] a, double complex[:, ::1] result,
                        double complex[:, ::1] x, double complex[:, ::1] tmp,
                        Py_ssize_t n) noexcept nogil:
    cdef double norm = _max_row_sum(a)
    cdef int squarings = 0
    cdef Py_ssize_t i, j
    cdef int k, s
    cdef double scale
    while norm > _SCALE_TARGET and squarings < _MAX_SQUARINGS:
        norm *= 0.5
        squarings += 1
    scale = 2.0 ** squarings
    for i in range(n):
        for j in range(n):
            x[i, j] = a[i, j] / scale
            result[i, j] = 1.0 if i == j else 0.0
    for k in range(_SERIES_ORDER, 0, -1):
        _matmul(x, result, tmp, n)
        for i in range(n):
            for j in range(n):
                result[i, j] = tmp[i, j] / k
                if i == j:
                    result[i, j] = result[i, j] + 1.0
    for s in range(squarings):
        _matmul(result, result, tmp, n)
        result[:, :] = tmp
    return


def mat_exp(a):
    """exp(a) by scaling-and-squaring around a fixed-order truncated series."""
    a = np.ascontiguousarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("mat_exp needs a square matrix")
    cdef Py_ssize_t n = a.shape[0]
    out = np.empty((n, n), dtype=np.complex128)
    x = np.empty((n, n), dtype=np.complex128)
    tmp = np.empty((n, n), dtype=np.complex128)
    if n:
        _mat_exp_into(a, out, x, tmp, n)
    return out


def op_norm_l1(a):
    """Max absolute column sum."""
    a = np.ascontiguousarray(a, dtype=np.complex128)
    if a.size == 0:
        return 0.0
    return _max_col_sum(a)


def op_norm_linf(a):
    """Max absolute row sum."""
    a = np.ascontiguousarray(a, dtype=np.complex128)
    if a.size == 0:
        return 0.0
    return _max_row_sum(a)


cdef double _herm_eig_max_mv(double complex[:, ::1] a, Py_ssize_t n) noexcept nogil:
    """Largest eigenvalue of a hermitian matrix by cyclic Jacobi sweeps.

    Destroys the buffer.  Accuracy does not depend on eigenvalue gaps,
    which matters for norms of near-identity matrices.
    """
    cdef Py_ssize_t p, q, i
    cdef int sweep
    cdef double scale = 0.0, off, ab, tau, t, c, s, best
    cdef double complex beta, u, v11, v12, v21, v22, xp, xq
    for p in range(n):
        for q in range(n):
            ab = _cabs(a[p, q])
            if ab > scale:
                scale = ab
    if scale == 0.0:
        return 0.0
    cdef double thresh = _JACOBI_RELTOL * scale
    for sweep in range(_JACOBI_SWEEPS):
        off = 0.0
        for p in range(n):
            for q in range(n):
                if p != q:
                    ab = _cabs(a[p, q])
                    if ab > off:
                        off = ab
        if off <= thresh:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                beta = a[p, q]
                ab = _cabs(beta)
                if ab <= thresh * 1e-2:
                    continue
                u = beta / ab
                tau = (a[q, q].real - a[p, p].real) / (2.0 * ab)
                t = 1.0 / ((tau if tau >= 0 else -tau) + (1.0 + tau * tau) ** 0.5)
                if tau < 0:
                    t = -t
                c = 1.0 / (1.0 + t * t) ** 0.5
                s = t * c
                v11 = u * c
                v12 = u * s
                v21 = -s
                v22 = c
                for i in range(n):
                    xp = a[i, p] * v11 + a[i, q] * v21
                    xq = a[i, p] * v12 + a[i, q] * v22
                    a[i, p] = xp
                    a[i, q] = xq
                for i in range(n):
                    xp = v11.conjugate() * a[p, i] + v21.conjugate() * a[q, i]
                    xq = v12.conjugate() * a[p, i] + v22.conjugate() * a[q, i]
                    a[p, i] = xp
                    a[q, i] = xq
    best = a[0, 0].real
    for p in range(1, n):
        if a[p, p].real > best:
            best = a[p, p].real
    return best


def op_norm_l2(a):
    """Largest singular value: the root of the top eigenvalue of a* a."""
    a = np.ascontiguousarray(a, dtype=np.complex128)
    if a.size == 0:
        return 0.0
    b = np.ascontiguousarray(a.conj().T @ a)
    cdef double lam = _herm_eig_max_mv(b, b.shape[0])
    return max(lam, 0.0) ** 0.5


def herm_eig_max(h):
    """Largest eigenvalue of a hermitian matrix, by cyclic Jacobi sweeps."""
    h = np.ascontiguousarray(h, dtype=np.complex128)
    cdef Py_ssize_t n = h.shape[0]
    if n == 0:
        return 0.0
    b = np.ascontiguousarray((h + h.conj().T) / 2.0)
    return _herm_eig_max_mv(b, n)


def op_norm(a, code):
    if code == 1:
        return op_norm_l1(a)
    if code == 2:
        return op_norm_l2(a)
    if code == 3:
        return op_norm_linf(a)
    raise ValueError(f"unknown norm code {code!r}")


def exp_sweep_defect(a, ts, code):
    """max over t in ts of abs(op_norm(exp(i t a)) - 1)."""
    a = np.ascontiguousarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("exp_sweep_defect needs a square matrix")
    ts = np.ascontiguousarray(ts, dtype=np.float64)
    cdef int icode = code
    if icode not in (1, 2, 3):
        raise ValueError(f"unknown norm code {code!r}")
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t nt = ts.shape[0]
    if n == 0 or nt == 0:
        return 0.0
    ita = np.empty((n, n), dtype=np.complex128)
    e = np.empty((n, n), dtype=np.complex128)
    x = np.empty((n, n), dtype=np.complex128)
    tmp = np.empty((n, n), dtype=np.complex128)
    gram = np.empty((n, n), dtype=np.complex128)
    cdef double complex[:, ::1] amv = a
    cdef double complex[:, ::1] itamv = ita
    cdef double complex[:, ::1] emv = e
    cdef double complex[:, ::1] xmv = x
    cdef double complex[:, ::1] tmpmv = tmp
    cdef double complex[:, ::1] gmv = gram
    cdef const double[::1] tmv = ts
    cdef double worst = 0.0, value, t
    cdef double complex factor
    cdef Py_ssize_t it, i, j, k
    cdef double complex s
    with nogil:
        for it in range(nt):
            t = tmv[it]
            factor = 1j * t
            for i in range(n):
                for j in range(n):
                    itamv[i, j] = factor * amv[i, j]
            _mat_exp_into(itamv, emv, xmv, tmpmv, n)
            if icode == 1:
                value = _max_col_sum(emv)
            elif icode == 3:
                value = _max_row_sum(emv)
            else:
                for i in range(n):
                    for j in range(n):
                        s = 0
                        for k in range(n):
                            s = s + emv[k, i].conjugate() * emv[k, j]
                        gmv[i, j] = s
                value = _herm_eig_max_mv(gmv, n)
                value = (value if value > 0.0 else 0.0) ** 0.5
            if value - 1.0 > worst:
                worst = value - 1.0
            if 1.0 - value > worst:
                worst = 1.0 - value
    return worst
