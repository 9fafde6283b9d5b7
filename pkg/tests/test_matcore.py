"""Matrix core: rank/subspace extraction, exponential, subspace lattice."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from banachmp import (
    DEFAULT_TOL,
    SubspaceBasis,
    ToleranceProfile,
    as_matrix,
    mat_exp,
    rank_nullspace_range,
    subspace_contains,
    subspace_equal,
    subspace_intersect,
    subspace_sum,
)
from banachmp.matcore import ToleranceBreakdown, inverse, mgs_qr, solve_full_rank

from conftest import DIFFERENCE_MAP, random_complex, span


class TestToleranceProfile:
    def test_defaults(self):
        tol = ToleranceProfile()
        assert tol.rank_rel_tol == 1e-10
        assert tol.zero_abs_tol == 1e-9
        assert tol.herm_tol == 1e-8

    def test_scaling_from_herm_tol_reproduces_defaults(self):
        assert ToleranceProfile.from_herm_tol(1e-8) == ToleranceProfile()

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            ToleranceProfile(rank_rel_tol=-1.0)


class TestValidation:
    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            as_matrix([[np.nan, 0.0], [0.0, 1.0]])

    def test_rejects_inf(self):
        with pytest.raises(ValueError):
            as_matrix([[np.inf, 0.0], [0.0, 1.0]])

    def test_rejects_vector(self):
        with pytest.raises(ValueError):
            as_matrix([1.0, 2.0])


class TestRankNullspaceRange:
    def test_difference_map(self):
        rank, nsp, rng_sub = rank_nullspace_range(DIFFERENCE_MAP)
        assert rank == 1
        assert subspace_equal(nsp, span([1, 1]))
        assert subspace_equal(rng_sub, span([1, 0]))

    def test_identity(self):
        rank, nsp, rng_sub = rank_nullspace_range(np.eye(3))
        assert rank == 3
        assert nsp.dim == 0
        assert subspace_equal(rng_sub, SubspaceBasis.full(3))

    def test_rank_one_by_hand_row_reduction(self):
        # [[1,2],[2,4]]: second row is twice the first, so rank 1,
        # kernel x + 2y = 0 i.e. span{(2,-1)}, range span{(1,2)}
        rank, nsp, rng_sub = rank_nullspace_range(np.array([[1.0, 2.0], [2.0, 4.0]]))
        assert rank == 1
        assert subspace_equal(nsp, span([2, -1]))
        assert subspace_equal(rng_sub, span([1, 2]))

    def test_kernel_is_annihilated(self, rng):
        for _ in range(50):
            n = int(rng.integers(1, 7))
            r = int(rng.integers(0, n + 1))
            m = random_complex(rng, n, r) @ random_complex(rng, r, n)
            rank, nsp, rng_sub = rank_nullspace_range(m)
            assert rank + nsp.dim == n
            assert rng_sub.dim == rank
            if nsp.dim:
                bound = DEFAULT_TOL.zero_abs_tol * max(np.abs(m).max(), 1e-30)
                assert np.abs(m @ nsp.basis).max() <= bound

    def test_range_vectors_lie_in_column_span(self, rng):
        m = random_complex(rng, 5, 2) @ random_complex(rng, 2, 5)
        _, _, rng_sub = rank_nullspace_range(m)
        oracle = np.linalg.svd(m, full_matrices=False)[0][:, :2]
        assert subspace_equal(rng_sub, SubspaceBasis.from_vectors(oracle))


class TestMatExp:
    def test_zero_gives_exact_identity(self):
        assert (mat_exp(np.zeros((2, 2))) == np.eye(2)).all()

    def test_diagonal(self):
        got = mat_exp(np.diag([1j * np.pi, 0.0]))
        assert np.abs(got - np.diag([-1.0, 1.0])).max() <= 1e-12

    def test_nilpotent_series_terminates(self):
        got = mat_exp(np.array([[0.0, 1.0], [0.0, 0.0]]))
        assert np.abs(got - np.array([[1.0, 1.0], [0.0, 1.0]])).max() <= 1e-15

    def test_exp_inverse_identity(self, rng):
        for _ in range(20):
            a = random_complex(rng, 4) * rng.uniform(0.1, 2.0)
            assert np.abs(mat_exp(a) @ mat_exp(-a) - np.eye(4)).max() <= 1e-10

    def test_exp_additivity(self, rng):
        for _ in range(20):
            a = random_complex(rng, 3)
            a /= max(np.abs(a).sum(axis=1).max(), 1.0)
            s, t = rng.uniform(-2, 2, size=2)
            lhs = mat_exp((s + t) * a)
            rhs = mat_exp(s * a) @ mat_exp(t * a)
            assert np.abs(lhs - rhs).max() <= 1e-10

    def test_rejects_rectangular(self):
        with pytest.raises(ValueError):
            mat_exp(np.zeros((2, 3)))


class TestSubspaceLattice:
    def test_nested_intersection(self):
        u = span([1, 0])
        v = span([1, 0], [0, 1])
        assert subspace_equal(subspace_intersect(u, v), u)

    def test_complementary_lines_sum_to_plane(self):
        total = subspace_sum(span([1, 1]), span([1, -1]))
        assert subspace_equal(total, SubspaceBasis.full(2))

    def test_plane_intersection_is_shared_line(self):
        u = span([1, 0, 0], [0, 1, 0])
        v = span([0, 1, 0], [0, 0, 1])
        assert subspace_equal(subspace_intersect(u, v), span([0, 1, 0]))

    def test_contains_is_ordered(self):
        u = span([1, 0], [0, 1])
        v = span([1, 2])
        assert subspace_contains(u, v)
        assert not subspace_contains(v, u)

    def test_ambient_mismatch_raises(self):
        with pytest.raises(ValueError):
            subspace_sum(span([1, 0]), span([1, 0, 0]))

    @given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 10_000))
    @settings(max_examples=60, deadline=None)
    def test_dimension_formula(self, p, q, seed):
        rng = np.random.default_rng(seed)
        u = SubspaceBasis.from_vectors(random_complex(rng, 4, p))
        v = SubspaceBasis.from_vectors(random_complex(rng, 4, q))
        lhs = subspace_sum(u, v).dim + subspace_intersect(u, v).dim
        assert lhs == u.dim + v.dim


class TestSolvers:
    def test_qr_reproduces_matrix(self, rng):
        c = random_complex(rng, 5, 3)
        q, r = mgs_qr(c)
        assert np.abs(q @ r - c).max() <= 1e-12
        assert np.abs(q.conj().T @ q - np.eye(3)).max() <= 1e-12

    def test_solve_full_rank_consistent_system(self, rng):
        c = random_complex(rng, 5, 3)
        z = random_complex(rng, 3, 2)
        got = solve_full_rank(c, c @ z)
        assert np.abs(got - z).max() <= 1e-10

    def test_inverse(self, rng):
        c = random_complex(rng, 4) + 2.0 * np.eye(4)
        assert np.abs(c @ inverse(c) - np.eye(4)).max() <= 1e-11

    def test_rank_deficient_solve_raises(self):
        with pytest.raises(ToleranceBreakdown):
            mgs_qr(np.array([[1.0, 1.0], [1.0, 1.0]]))
