"""Suite runner: determinism, vacuous runs, tolerance guard."""

import numpy as np

from banachmp import NormKind, ToleranceProfile
from banachmp.suites import (
    PROPERTIES,
    ep_instance,
    mp_instance,
    random_invertible,
    random_unitary,
    run_suite,
)


def _snapshot(report):
    return [(o.name, o.passed, o.checked, tuple(o.failures)) for o in report.outcomes]


def test_same_seed_same_outcomes():
    a = run_suite(seed=7, instances=5, norm=NormKind.L2, size=3)
    b = run_suite(seed=7, instances=5, norm=NormKind.L2, size=3)
    assert _snapshot(a) == _snapshot(b)
    assert a.all_passed


def test_runs_every_registered_property():
    report = run_suite(seed=1, instances=3, norm=NormKind.LINF, size=3)
    assert len(report.outcomes) == len(PROPERTIES)


def test_zero_instances_pass_vacuously():
    report = run_suite(seed=0, instances=0, norm=NormKind.L1, size=4)
    assert report.all_passed
    assert all(o.checked == 0 for o in report.outcomes)


def test_loose_tolerance_is_refused():
    report = run_suite(seed=0, instances=5, tol=ToleranceProfile.from_herm_tol(1e-1))
    assert not report.tolerance_supported
    assert not report.all_passed
    assert report.outcomes == []


def test_generators_are_reproducible():
    r1, r2 = np.random.default_rng(3), np.random.default_rng(3)
    assert np.array_equal(random_unitary(r1, 4), random_unitary(r2, 4))
    assert np.array_equal(ep_instance(r1, 4, 2, NormKind.L2), ep_instance(r2, 4, 2, NormKind.L2))
    assert np.array_equal(
        mp_instance(r1, 4, 2, NormKind.L1), mp_instance(r2, 4, 2, NormKind.L1)
    )


def test_invertible_generator_is_well_conditioned():
    rng = np.random.default_rng(11)
    for _ in range(20):
        a = random_invertible(rng, 4)
        s = np.linalg.svd(a, compute_uv=False)
        assert s[-1] >= 0.5 - 1e-12 and s[0] <= 2.0 + 1e-12
