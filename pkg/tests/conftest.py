import numpy as np
import pytest

from banachmp import NormKind, SubspaceBasis

# the two classical norm-dependence examples on C^2
SYM_PROJECTOR = np.array([[0.5, -0.5], [-0.5, 0.5]], dtype=complex)
DIFFERENCE_MAP = np.array([[1.0, -1.0], [0.0, 0.0]], dtype=complex)
DIFFERENCE_MP = np.array([[0.5, 0.0], [-0.5, 0.0]], dtype=complex)

ALL_NORMS = (NormKind.L1, NormKind.L2, NormKind.LINF)


@pytest.fixture
def rng():
    return np.random.default_rng(20240915)


def span(*vectors):
    cols = np.column_stack([np.asarray(v, dtype=complex) for v in vectors])
    return SubspaceBasis.from_vectors(cols)


def random_complex(rng, n, m=None):
    m = n if m is None else m
    return (rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))) / np.sqrt(2.0)
