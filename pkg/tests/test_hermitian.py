"""Hermitian verdicts and hermitian idempotent synthesis."""

import numpy as np
import pytest

from banachmp import (
    NormKind,
    NotRepresentable,
    SubspaceBasis,
    coordinate_support,
    hermitian_idempotent_with_nullspace,
    hermitian_idempotent_with_range,
    is_hermitian,
    is_hermitian_idempotent,
    op_norm,
)

from conftest import ALL_NORMS, SYM_PROJECTOR, random_complex, span


class TestIsHermitian:
    def test_rotated_projector_under_l2(self):
        verdict = is_hermitian(SYM_PROJECTOR, NormKind.L2)
        assert verdict.is_hermitian
        assert abs(verdict.log_norm_plus) <= 1e-12
        assert abs(verdict.log_norm_minus) <= 1e-12

    def test_rotated_projector_under_l1(self):
        verdict = is_hermitian(SYM_PROJECTOR, NormKind.L1)
        assert not verdict.is_hermitian
        assert verdict.log_norm_plus >= 0.5 - 1e-9

    def test_real_diagonal_under_l1(self):
        verdict = is_hermitian(np.diag([1.0, -3.0, 0.0]), NormKind.L1)
        assert verdict.is_hermitian

    def test_sweep_is_off_by_default(self):
        assert is_hermitian(np.eye(2), NormKind.L2).sweep_max_defect is None

    def test_sweep_defect_small_for_hermitian(self, rng):
        g = random_complex(rng, 4)
        h = g + g.conj().T
        verdict = is_hermitian(h, NormKind.L2, sweep_points=201)
        assert verdict.is_hermitian
        assert verdict.sweep_max_defect <= 1e-6

    def test_sweep_defect_large_for_non_hermitian(self):
        # the l1 norm of exp(it P) peaks at sqrt(2) near t = pi/2
        verdict = is_hermitian(SYM_PROJECTOR, NormKind.L1, sweep_points=201)
        assert verdict.sweep_max_defect > 0.4

    @pytest.mark.parametrize("kind", (NormKind.L1, NormKind.LINF))
    def test_l1_linf_hermitians_are_exactly_real_diagonals(self, rng, kind):
        for _ in range(40):
            d = np.diag(rng.standard_normal(4)).astype(complex)
            assert is_hermitian(d, kind).is_hermitian
            m = d.copy()
            i, j = rng.integers(0, 4, size=2)
            bump = 1e-3 + abs(rng.standard_normal())
            m[i, j] += 1j * bump if i == j else bump
            assert not is_hermitian(m, kind).is_hermitian

    def test_l2_hermitians_are_exactly_selfadjoint(self, rng):
        for _ in range(40):
            g = random_complex(rng, 4)
            assert is_hermitian(g + g.conj().T, NormKind.L2).is_hermitian
            skew = g - g.conj().T
            if op_norm(skew, NormKind.L2) > 1e-3:
                assert not is_hermitian(g, NormKind.L2).is_hermitian

    def test_rejects_rectangular(self):
        with pytest.raises(ValueError):
            is_hermitian(np.zeros((2, 3)), NormKind.L2)


class TestIsHermitianIdempotent:
    @pytest.mark.parametrize("kind", ALL_NORMS)
    def test_identity(self, kind):
        assert is_hermitian_idempotent(np.eye(3), kind)

    def test_rotated_projector_l2_only(self):
        assert is_hermitian_idempotent(SYM_PROJECTOR, NormKind.L2)
        assert not is_hermitian_idempotent(SYM_PROJECTOR, NormKind.L1)

    def test_zero_one_diagonal_under_l1(self):
        assert is_hermitian_idempotent(np.diag([1.0, 0.0, 1.0]), NormKind.L1)

    def test_non_idempotent_rejected(self):
        assert not is_hermitian_idempotent(2.0 * np.eye(2), NormKind.L2)


class TestCoordinateSupport:
    def test_coordinate_plane(self):
        assert list(coordinate_support(span([0, 1, 0], [0, 0, 1]))) == [1, 2]

    def test_rotated_basis_of_coordinate_plane(self):
        u = np.array([[0, 0], [1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
        assert list(coordinate_support(SubspaceBasis.from_vectors(u))) == [1, 2]

    def test_diagonal_line_is_not_coordinate(self):
        assert coordinate_support(span([1, 1])) is None


class TestIdempotentSynthesis:
    def test_coordinate_line_under_l1(self):
        got = hermitian_idempotent_with_range(span([1, 0]), NormKind.L1)
        assert np.abs(got - np.diag([1.0, 0.0])).max() == 0.0

    def test_diagonal_line_under_l1_is_unrepresentable(self):
        with pytest.raises(NotRepresentable):
            hermitian_idempotent_with_range(span([1, 1]), NormKind.L1)

    def test_diagonal_line_under_l2(self):
        got = hermitian_idempotent_with_range(span([1, 1]), NormKind.L2)
        assert np.abs(got - 0.5 * np.ones((2, 2))).max() <= 1e-14

    @pytest.mark.parametrize("kind", ALL_NORMS)
    def test_trivial_nullspace_gives_identity(self, kind):
        got = hermitian_idempotent_with_nullspace(SubspaceBasis.zero(2), kind)
        assert np.abs(got - np.eye(2)).max() <= 1e-14

    def test_nullspace_diagonal_line_under_l2(self):
        got = hermitian_idempotent_with_nullspace(span([1, 1]), NormKind.L2)
        assert np.abs(got - SYM_PROJECTOR).max() <= 1e-14

    def test_nullspace_diagonal_line_under_l1_is_unrepresentable(self):
        with pytest.raises(NotRepresentable):
            hermitian_idempotent_with_nullspace(span([1, 1]), NormKind.L1)

    @pytest.mark.parametrize("kind", ALL_NORMS)
    def test_synthesized_idempotents_pass_the_verdict(self, rng, kind):
        for _ in range(10):
            if kind is NormKind.L2:
                target = SubspaceBasis.from_vectors(random_complex(rng, 4, 2))
            else:
                sel = rng.permutation(4)[:2]
                cols = np.zeros((4, 2), dtype=complex)
                cols[sel, [0, 1]] = 1.0
                target = SubspaceBasis.from_vectors(cols)
            p = hermitian_idempotent_with_range(target, kind)
            assert is_hermitian_idempotent(p, kind)

    def test_same_range_means_same_idempotent(self, rng):
        # uniqueness: two different bases of one subspace synthesize one map
        cols = random_complex(rng, 4, 2)
        mix = cols @ (np.eye(2) + 0.5 * random_complex(rng, 2))
        p = hermitian_idempotent_with_range(SubspaceBasis.from_vectors(cols), NormKind.L2)
        q = hermitian_idempotent_with_range(SubspaceBasis.from_vectors(mix), NormKind.L2)
        assert np.abs(p - q).max() <= 1e-9
