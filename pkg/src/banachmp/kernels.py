"""Backend selection for the numeric kernels.

Imports the compiled extension when it is available and falls back to the
numpy implementation otherwise.  Set ``BANACHMP_BACKEND=python`` in the
environment to force the fallback (used by the benchmark and by tests that
compare the two backends).
"""

from __future__ import annotations

import os

from . import _kernels_py

_impl = None
if os.environ.get("BANACHMP_BACKEND", "").lower() == "python":
    _impl = _kernels_py
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND = "python" if _impl is _kernels_py else "cython"

NORM_L1 = _kernels_py.NORM_L1
NORM_L2 = _kernels_py.NORM_L2
NORM_LINF = _kernels_py.NORM_LINF

mat_exp = _impl.mat_exp
op_norm = _impl.op_norm
op_norm_l1 = _impl.op_norm_l1
op_norm_l2 = _impl.op_norm_l2
op_norm_linf = _impl.op_norm_linf
herm_eig_max = _impl.herm_eig_max
exp_sweep_defect = _impl.exp_sweep_defect


def available_backends():
    """Names of the kernel backends importable right now."""
    names = ["python"]
    try:
        from . import _kernels_cy  # noqa: F401

        names.append("cython")
    except ImportError:
        pass
    return names


def get_backend(name):
    """Return the kernel module for an explicit backend name."""
    if name == "python":
        return _kernels_py
    if name == "cython":
        from . import _kernels_cy

        return _kernels_cy
    raise ValueError(f"unknown backend {name!r}")
