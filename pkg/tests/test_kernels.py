"""Kernel correctness against external oracles, and backend parity."""

import numpy as np
import pytest
import scipy.linalg

from banachmp.kernels import available_backends, get_backend

from conftest import random_complex

BACKENDS = available_backends()


@pytest.fixture(params=BACKENDS)
def kern(request):
    return get_backend(request.param)


def test_mat_exp_of_zero_is_exactly_identity(kern):
    out = kern.mat_exp(np.zeros((3, 3), dtype=complex))
    assert (out == np.eye(3)).all()


def test_mat_exp_matches_scipy(kern, rng):
    for _ in range(25):
        a = random_complex(rng, 5) * rng.uniform(0.1, 4.0)
        expected = scipy.linalg.expm(a)
        got = kern.mat_exp(a)
        assert np.abs(got - expected).max() <= 1e-11 * (1.0 + np.abs(expected).max())


def test_mat_exp_rejects_non_square(kern):
    with pytest.raises(ValueError):
        kern.mat_exp(np.zeros((2, 3), dtype=complex))


def test_op_norms_match_numpy(kern, rng):
    for _ in range(25):
        a = random_complex(rng, 4, 6)
        assert kern.op_norm_l1(a) == pytest.approx(np.abs(a).sum(axis=0).max(), abs=1e-13)
        assert kern.op_norm_linf(a) == pytest.approx(np.abs(a).sum(axis=1).max(), abs=1e-13)
        svd_top = np.linalg.svd(a, compute_uv=False)[0]
        assert kern.op_norm_l2(a) == pytest.approx(svd_top, abs=1e-12)


def test_op_norm_l2_handles_clustered_spectra(kern, rng):
    a = np.eye(5, dtype=complex) + 1e-6 * random_complex(rng, 5)
    svd_top = np.linalg.svd(a, compute_uv=False)[0]
    assert kern.op_norm_l2(a) == pytest.approx(svd_top, abs=1e-13)


def test_op_norm_l2_on_singular_projector(kern):
    # annihilates the all-ones direction; a classic trap for bad start vectors
    t = np.array([[0.5, -0.5], [-0.5, 0.5]], dtype=complex)
    assert kern.op_norm_l2(t) == pytest.approx(1.0, abs=1e-13)


def test_herm_eig_max_matches_numpy(kern, rng):
    for _ in range(25):
        g = random_complex(rng, 5)
        h = g + g.conj().T
        assert kern.herm_eig_max(h) == pytest.approx(
            np.linalg.eigvalsh(h)[-1], abs=1e-12
        )


def test_exp_sweep_defect_zero_for_skew_hermitian(kern, rng):
    g = random_complex(rng, 4)
    h = g + g.conj().T
    ts = np.linspace(-10, 10, 41)
    # exp(it h) is unitary for hermitian h, so the l2 defect vanishes
    assert kern.exp_sweep_defect(h, ts, kern.NORM_L2) <= 1e-10


def test_exp_sweep_defect_detects_growth(kern):
    s = np.array([[1.0, -1.0], [0.0, 0.0]], dtype=complex)
    assert kern.exp_sweep_defect(s, np.linspace(-10, 10, 201), kern.NORM_L1) > 0.5


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled backend not built")
def test_backends_agree(rng):
    py = get_backend("python")
    cy = get_backend("cython")
    ts = np.linspace(-5, 5, 21)
    for _ in range(20):
        a = random_complex(rng, 4) * rng.uniform(0.2, 3.0)
        h = a + a.conj().T
        assert np.abs(py.mat_exp(a) - cy.mat_exp(a)).max() <= 1e-12
        assert py.op_norm_l1(a) == pytest.approx(cy.op_norm_l1(a), abs=1e-13)
        assert py.op_norm_linf(a) == pytest.approx(cy.op_norm_linf(a), abs=1e-13)
        assert py.op_norm_l2(a) == pytest.approx(cy.op_norm_l2(a), abs=1e-12)
        assert py.herm_eig_max(h) == pytest.approx(cy.herm_eig_max(h), abs=1e-12)
        for code in (1, 2, 3):
            assert py.exp_sweep_defect(a, ts, code) == pytest.approx(
                cy.exp_sweep_defect(a, ts, code), rel=1e-9, abs=1e-11
            )
