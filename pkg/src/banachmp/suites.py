"""Seeded instance generators and the property-suite runner.

Everything here is driven by a ``numpy.random.Generator`` seeded by the
caller, so a suite run is reproducible from (seed, instances, norm, size)
alone.  The properties mirror the invariants the library promises; each
one returns a structured outcome with counterexample descriptions instead
of raising, so the CLI can dump failures without dying on the first one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .hermitian import coordinate_support, is_hermitian
from .matcore import (
    DEFAULT_TOL,
    SubspaceBasis,
    mat_exp,
    rank_nullspace_range,
    subspace_equal,
    subspace_intersect,
    subspace_sum,
)
from .moorepenrose import (
    AlgebraContext,
    algebra_norm,
    ctx_mp_inverse,
    lift_left,
    mp_inverse,
    mp_l2,
    verify_mp,
    verify_mp_lifted,
)
from .ep import is_ep, product_ep_check, product_ep_check_lifted
from .norms import NormKind, dual_of, log_norm, op_norm

MAX_SUPPORTED_HERM_TOL = 1e-4


@dataclass
class PropertyOutcome:
    name: str
    passed: bool
    checked: int
    failures: list[str] = field(default_factory=list)


@dataclass
class SuiteReport:
    seed: int
    instances: int
    norm: NormKind
    size: int
    outcomes: list[PropertyOutcome]
    tolerance_supported: bool = True

    @property
    def all_passed(self):
        return self.tolerance_supported and all(o.passed for o in self.outcomes)


# ---------------------------------------------------------------------------
# generators


def random_complex(rng, n, m=None):
    m = n if m is None else m
    return (rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))) / np.sqrt(2.0)


def random_unitary(rng, n):
    """Haar-ish unitary from the QR of a complex Gaussian, phases fixed."""
    from .matcore import mgs_qr

    q, r = mgs_qr(random_complex(rng, n))
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * phases.conj()


def random_invertible(rng, n, smin=0.5, smax=2.0):
    """Invertible with singular values in [smin, smax]; mild conditioning."""
    s = rng.uniform(smin, smax, size=n)
    return random_unitary(rng, n) @ (s[:, None] * random_unitary(rng, n))


def random_permutation(rng, n):
    p = np.zeros((n, n), dtype=np.complex128)
    p[np.arange(n), rng.permutation(n)] = 1.0
    return p


def random_rank_deficient(rng, n, r):
    """Random n x n matrix of rank exactly r (l2 instances)."""
    return random_complex(rng, n, r) @ random_complex(rng, r, n)


def ep_instance(rng, n, r, kind):
    """A random EP element of rank r for the given norm.

    l2 uses a unitary change of frame around an invertible leading block;
    l1/linf use a permutation so that kernel and range stay coordinate.
    """
    core = np.zeros((n, n), dtype=np.complex128)
    core[:r, :r] = random_invertible(rng, r)
    if kind is NormKind.L2:
        u = random_unitary(rng, n)
        return u @ core @ u.conj().T
    p = random_permutation(rng, n)
    return p @ core @ p.conj().T


def mp_instance(rng, n, r, kind, ep=False):
    """A random rank-r element whose Moore-Penrose inverse exists.

    With ep=False the kernel and range frames are drawn independently, so
    the instance is generically not EP while existence is preserved.
    """
    if ep:
        return ep_instance(rng, n, r, kind)
    core = np.zeros((n, n), dtype=np.complex128)
    core[:r, :r] = random_invertible(rng, r)
    if kind is NormKind.L2:
        return random_unitary(rng, n) @ core @ random_unitary(rng, n).conj().T
    return random_permutation(rng, n) @ core @ random_permutation(rng, n).conj().T


def product_hypothesis_pair(rng, n, r, kind):
    """Two EP elements sharing a frame, so the product hypotheses hold."""
    if kind is NormKind.L2:
        frame = random_unitary(rng, n)
    else:
        frame = random_permutation(rng, n)
    out = []
    for _ in range(2):
        core = np.zeros((n, n), dtype=np.complex128)
        core[:r, :r] = random_invertible(rng, r)
        out.append(frame @ core @ frame.conj().T)
    return out[0], out[1]


# ---------------------------------------------------------------------------
# properties


def _outcome(name, checked, failures):
    return PropertyOutcome(name, not failures, checked, failures[:10])


def prop_nullspace_residual(rng, n, kind, tol, instances):
    failures = []
    for i in range(instances):
        m = random_rank_deficient(rng, n, int(rng.integers(0, n + 1)))
        _, nsp, _ = rank_nullspace_range(m, tol)
        if nsp.dim == 0:
            continue
        defect = float(np.abs(m @ nsp.basis).max())
        bound = tol.zero_abs_tol * max(op_norm(m, kind), 1e-30)
        if defect > bound:
            failures.append(f"instance {i}: kernel residual {defect:.3e} > {bound:.3e}")
    return _outcome("kernel_vectors_are_annihilated", instances, failures)


def prop_exp_inverse(rng, n, kind, tol, instances):
    failures = []
    for i in range(instances):
        a = random_complex(rng, n)
        norm = op_norm(a, NormKind.L2)
        if norm > 5.0:
            a = a * (5.0 / norm)
        defect = np.abs(mat_exp(a) @ mat_exp(-a) - np.eye(n)).max()
        if defect > 1e-10:
            failures.append(f"instance {i}: exp(A)exp(-A) defect {defect:.3e}")
    return _outcome("exp_of_negation_inverts", instances, failures)


def prop_exp_additivity(rng, n, kind, tol, instances):
    failures = []
    for i in range(instances):
        a = random_complex(rng, n)
        norm = op_norm(a, NormKind.LINF)
        if norm > 1.0:
            a = a / norm
        s, t = rng.uniform(-2.0, 2.0, size=2)
        defect = np.abs(mat_exp((s + t) * a) - mat_exp(s * a) @ mat_exp(t * a)).max()
        if defect > 1e-10:
            failures.append(f"instance {i}: additivity defect {defect:.3e} at s={s:.3f}, t={t:.3f}")
    return _outcome("exp_is_additive_in_the_exponent", instances, failures)


def prop_subspace_dim_formula(rng, n, kind, tol, instances):
    failures = []
    for i in range(instances):
        u = SubspaceBasis.from_vectors(random_complex(rng, n, int(rng.integers(0, n + 1))), tol)
        v = SubspaceBasis.from_vectors(random_complex(rng, n, int(rng.integers(0, n + 1))), tol)
        total = subspace_sum(u, v, tol).dim + subspace_intersect(u, v, tol).dim
        if total != u.dim + v.dim:
            failures.append(f"instance {i}: dim(U+V)+dim(U^V) = {total} != {u.dim + v.dim}")
    return _outcome("subspace_dimension_formula", instances, failures)


def prop_submultiplicative(rng, n, kind, tol, instances):
    failures = []
    for i in range(instances):
        a, b = random_complex(rng, n), random_complex(rng, n)
        lhs = op_norm(a @ b, kind)
        rhs = op_norm(a, kind) * op_norm(b, kind)
        if lhs > rhs + 1e-10:
            failures.append(f"instance {i}: ||ab|| = {lhs:.12f} > {rhs:.12f}")
    return _outcome("operator_norm_submultiplicative", instances, failures)


def prop_transpose_dual_norm(rng, n, kind, tol, instances):
    failures = []
    for i in range(instances):
        a = random_complex(rng, n)
        lhs = op_norm(a.T, dual_of(kind))
        rhs = op_norm(a, kind)
        if abs(lhs - rhs) > 1e-10:
            failures.append(f"instance {i}: transpose norm {lhs!r} vs {rhs!r}")
    return _outcome("transpose_matches_dual_norm", instances, failures)


def prop_log_norm_derivative(rng, n, kind, tol, instances):
    failures = []
    for i in range(instances):
        a = random_complex(rng, n)
        mu = log_norm(a, kind)
        for t in (1e-3, 1e-4):
            quotient = (op_norm(np.eye(n) + t * a, kind) - 1.0) / t
            if abs(quotient - mu) > 10.0 * t:
                failures.append(
                    f"instance {i}: difference quotient {quotient:.9f} vs measure {mu:.9f} at t={t}"
                )
    return _outcome("log_norm_is_the_norm_derivative", instances, failures)


def prop_exp_growth_bound(rng, n, kind, tol, instances):
    failures = []
    for i in range(instances):
        a = random_complex(rng, n)
        mu = log_norm(a, kind)
        for t in rng.uniform(0.0, 2.0, size=3):
            lhs = op_norm(mat_exp(t * a), kind)
            rhs = np.exp(t * mu) + 1e-9
            if lhs > rhs:
                failures.append(f"instance {i}: ||exp(tA)|| = {lhs:.9f} > {rhs:.9f} at t={t:.4f}")
    return _outcome("exp_growth_bounded_by_log_norm", instances, failures)


def prop_l1_linf_hermitian_characterization(rng, n, kind, tol, instances):
    failures = []
    for i in range(instances):
        d = np.diag(rng.standard_normal(n).astype(np.complex128))
        for k in (NormKind.L1, NormKind.LINF):
            if not is_hermitian(d, k, tol).is_hermitian:
                failures.append(f"instance {i}: real diagonal rejected under {k.value}")
        m = d.copy()
        r, c = rng.integers(0, n, size=2)
        if r == c:
            m[r, c] += 1j * (1e-3 + abs(rng.standard_normal()))
        else:
            m[r, c] += 1e-3 + abs(rng.standard_normal())
        for k in (NormKind.L1, NormKind.LINF):
            if is_hermitian(m, k, tol).is_hermitian:
                failures.append(f"instance {i}: perturbed matrix accepted under {k.value}")
    return _outcome("l1_linf_hermitians_are_real_diagonal", instances, failures)


def prop_l2_hermitian_is_selfadjoint(rng, n, kind, tol, instances):
    failures = []
    for i in range(instances):
        g = random_complex(rng, n)
        h = g + g.conj().T
        if not is_hermitian(h, NormKind.L2, tol).is_hermitian:
            failures.append(f"instance {i}: self-adjoint matrix rejected")
        skew = g - g.conj().T
        if op_norm(skew, NormKind.L2) > 1e-3 and is_hermitian(g, NormKind.L2, tol).is_hermitian:
            failures.append(f"instance {i}: non-self-adjoint matrix accepted")
    return _outcome("l2_hermitians_are_selfadjoint", instances, failures)


def prop_exp_sweep_cross_check(rng, n, kind, tol, instances):
    failures = []
    for i in range(instances):
        if kind is NormKind.L2:
            g = random_complex(rng, n)
            m = g + g.conj().T
        else:
            m = np.diag(rng.standard_normal(n).astype(np.complex128))
        verdict = is_hermitian(m, kind, tol, sweep_points=201)
        if not verdict.is_hermitian:
            failures.append(f"instance {i}: generated hermitian rejected")
        elif verdict.sweep_max_defect > 1e-6:
            failures.append(f"instance {i}: sweep defect {verdict.sweep_max_defect:.3e}")
    return _outcome("exp_sweep_confirms_hermitian_verdicts", instances, failures)


def prop_mp_uniqueness_and_involution(rng, n, kind, tol, instances):
    failures = []
    for i in range(instances):
        a = mp_instance(rng, n, int(rng.integers(1, n + 1)), kind, ep=bool(rng.integers(0, 2)))
        res = mp_inverse(a, kind, tol)
        if not res.exists:
            failures.append(f"instance {i}: generated instance lost its inverse")
            continue
        back = mp_inverse(res.mp, kind, tol)
        if not back.exists or np.abs(back.mp - a).max() > 1e-8 * (1.0 + np.abs(a).max()):
            failures.append(f"instance {i}: involution defect")
        if kind is NormKind.L2:
            oracle = mp_l2(a, tol)
            if np.abs(res.mp - oracle).max() > 1e-9 * (1.0 + np.abs(oracle).max()):
                failures.append(f"instance {i}: disagrees with rank-factorization oracle")
    return _outcome("mp_is_unique_and_involutive", instances, failures)


def prop_lift_preserves_mp(rng, n, kind, tol, instances):
    failures = []
    ctx = AlgebraContext((n,), kind)
    for i in range(instances):
        a = mp_instance(rng, n, int(rng.integers(1, n + 1)), kind, ep=bool(rng.integers(0, 2)))
        res = mp_inverse(a, kind, tol)
        if not res.exists:
            failures.append(f"instance {i}: generated instance lost its inverse")
            continue
        if not verify_mp_lifted(a, res.mp, ctx, tol):
            failures.append(f"instance {i}: lifted pair failed verification")
        la = lift_left(a, ctx)
        if abs(op_norm(la, kind) - algebra_norm(a, ctx)) > 1e-9:
            failures.append(f"instance {i}: lift changed the norm")
    return _outcome("left_lift_preserves_mp_and_norm", instances, failures)


def prop_l1_existence_law(rng, n, kind, tol, instances):
    """Existence under l1 happens exactly for coordinate kernel and range."""
    failures = []
    for i in range(instances):
        r = int(rng.integers(1, n))
        if rng.integers(0, 2):
            a = mp_instance(rng, n, r, NormKind.L1, ep=bool(rng.integers(0, 2)))
            expect = True
        else:
            a = random_complex(rng, n, r) @ random_complex(rng, r, n)
            _, nsp, rng_sub = rank_nullspace_range(a, tol)
            expect = (
                coordinate_support(nsp, tol) is not None
                and coordinate_support(rng_sub, tol) is not None
            )
        res = mp_inverse(a, NormKind.L1, tol)
        if res.exists != expect:
            failures.append(f"instance {i}: existence {res.exists} but expected {expect}")
        if res.exists and not verify_mp(a, res.mp, NormKind.L1, tol):
            failures.append(f"instance {i}: inverse failed verification")
    return _outcome("l1_existence_needs_coordinate_subspaces", instances, failures)


def prop_ep_flags_agree(rng, n, kind, tol, instances):
    failures = []
    for i in range(instances):
        r = int(rng.integers(1, n + 1))
        a = mp_instance(rng, n, r, kind, ep=bool(rng.integers(0, 2)))
        try:
            report = is_ep(a, kind, tol)
        except Exception as exc:  # noqa: BLE001
            failures.append(f"instance {i}: {exc}")
            continue
        if not report.checks.agree():
            failures.append(f"instance {i}: flags {report.checks}")
    return _outcome("ep_equivalence_flags_agree", instances, failures)


def prop_ep_generator_soundness(rng, n, kind, tol, instances):
    failures = []
    saw_non_ep = False
    for i in range(instances):
        r = int(rng.integers(1, n + 1))
        a = ep_instance(rng, n, r, kind)
        report = is_ep(a, kind, tol)
        if not report.is_ep:
            failures.append(f"instance {i}: generated EP instance classified non-EP")
        if not report.is_ep == is_ep(mp_inverse(a, kind, tol).mp, kind, tol).is_ep:
            failures.append(f"instance {i}: EP status not shared with the inverse")
        if kind is NormKind.L2 and r < n:
            from .matcore import inverse

            g = random_invertible(rng, n) + 0.3 * random_complex(rng, n)
            core = np.zeros((n, n), dtype=np.complex128)
            core[:r, :r] = random_invertible(rng, r)
            if not is_ep(g @ core @ inverse(g), kind, tol).is_ep:
                saw_non_ep = True
    if kind is NormKind.L2 and instances >= 10 and not saw_non_ep:
        failures.append("no non-unitary conjugation produced a non-EP witness")
    return _outcome("ep_generators_are_sound", instances, failures)


def prop_product_hypotheses_imply_ep(rng, n, kind, tol, instances):
    failures = []
    for i in range(instances):
        s, t = product_hypothesis_pair(rng, n, int(rng.integers(1, n + 1)), kind)
        try:
            report = product_ep_check(s, t, kind, tol)
        except Exception as exc:  # noqa: BLE001
            failures.append(f"instance {i}: {exc}")
            continue
        if not (report.hyp_range and report.hyp_null):
            failures.append(f"instance {i}: generated pair violates the hypotheses")
        elif not (report.null_sum_eq and report.range_cap_eq and report.product_ep):
            failures.append(f"instance {i}: conclusions failed: {report}")
    return _outcome("shared_frame_products_stay_ep", instances, failures)


def prop_product_flags_match_lifted(rng, n, kind, tol, instances):
    failures = []
    blocks = (n, max(2, n - 1))
    ctx = AlgebraContext(blocks, kind)
    for i in range(instances):
        parts_a, parts_b = [], []
        for b in blocks:
            s, t = product_hypothesis_pair(rng, b, int(rng.integers(1, b + 1)), kind)
            parts_a.append(s)
            parts_b.append(t)
        a, b = ctx.join(parts_a), ctx.join(parts_b)
        direct = product_ep_check(a, b, kind, tol)
        lifted = product_ep_check_lifted(a, b, ctx, tol)
        pairs = [
            ("hyp_range", direct.hyp_range, lifted.hyp_range),
            ("hyp_null", direct.hyp_null, lifted.hyp_null),
            ("null_sum_eq", direct.null_sum_eq, lifted.null_sum_eq),
            ("range_cap_eq", direct.range_cap_eq, lifted.range_cap_eq),
            ("product_ep", direct.product_ep, lifted.product_ep),
        ]
        for name, x, y in pairs:
            if x != y:
                failures.append(f"instance {i}: {name} direct={x} lifted={y}")
    return _outcome("lifted_product_flags_match_direct", instances, failures)


def prop_direct_sum_and_quotient(rng, n, kind, tol, instances):
    from .moorepenrose import direct_sum_mp, quotient_mp

    failures = []
    for i in range(instances):
        n2 = max(2, n - 1)
        a = mp_instance(rng, n, int(rng.integers(1, n + 1)), kind, ep=bool(rng.integers(0, 2)))
        b = mp_instance(rng, n2, int(rng.integers(1, n2 + 1)), kind, ep=bool(rng.integers(0, 2)))
        ra, rb = mp_inverse(a, kind, tol), mp_inverse(b, kind, tol)
        if not (ra.exists and rb.exists):
            failures.append(f"instance {i}: generated summand lost its inverse")
            continue
        try:
            x = direct_sum_mp(a, ra, b, rb, kind, tol)
        except Exception as exc:  # noqa: BLE001
            failures.append(f"instance {i}: direct sum failed: {exc}")
            continue
        if np.abs(x[:n, :n] - ra.mp).max() > 1e-9 or np.abs(x[n:, n:] - rb.mp).max() > 1e-9:
            failures.append(f"instance {i}: direct-sum inverse is not blockwise")
        ctx = AlgebraContext((n, n2), kind)
        joint = ctx.join([a, b])
        try:
            q = quotient_mp(joint, ctx, [1], tol)
        except Exception as exc:  # noqa: BLE001
            failures.append(f"instance {i}: quotient failed: {exc}")
            continue
        if np.abs(q.mp - ra.mp).max() > 1e-9 * (1.0 + np.abs(ra.mp).max()):
            failures.append(f"instance {i}: quotient inverse is not the projection")
    return _outcome("direct_sum_and_quotient_transport", instances, failures)


def prop_adjoint_duality(rng, n, kind, tol, instances):
    from .moorepenrose import adjoint_mp

    failures = []
    for i in range(instances):
        a = mp_instance(rng, n, int(rng.integers(1, n + 1)), kind, ep=bool(rng.integers(0, 2)))
        res = mp_inverse(a, kind, tol)
        adj = adjoint_mp(a, kind, tol)
        if res.exists != adj.exists:
            failures.append(f"instance {i}: existence not transpose-stable")
            continue
        if res.exists and np.abs(adj.mp - res.mp.T).max() > 1e-9 * (1.0 + np.abs(res.mp).max()):
            failures.append(f"instance {i}: inverse of transpose is not transposed inverse")
        from .ep import adjoint_ep

        try:
            adjoint_ep(a, kind, tol)
        except Exception as exc:  # noqa: BLE001
            failures.append(f"instance {i}: EP transpose stability: {exc}")
    return _outcome("duality_preserves_mp_and_ep", instances, failures)


PROPERTIES = [
    prop_nullspace_residual,
    prop_exp_inverse,
    prop_exp_additivity,
    prop_subspace_dim_formula,
    prop_submultiplicative,
    prop_transpose_dual_norm,
    prop_log_norm_derivative,
    prop_exp_growth_bound,
    prop_l1_linf_hermitian_characterization,
    prop_l2_hermitian_is_selfadjoint,
    prop_exp_sweep_cross_check,
    prop_mp_uniqueness_and_involution,
    prop_lift_preserves_mp,
    prop_l1_existence_law,
    prop_ep_flags_agree,
    prop_ep_generator_soundness,
    prop_product_hypotheses_imply_ep,
    prop_product_flags_match_lifted,
    prop_direct_sum_and_quotient,
    prop_adjoint_duality,
]


def run_suite(seed=0, instances=50, norm=NormKind.L2, size=4, tol=DEFAULT_TOL, properties=None):
    """Run the property batteries with one child generator per property.

    Child generators are spawned in registry order, so adding instances or
    skipping properties never reshuffles the randomness of the others.
    """
    selected = PROPERTIES if properties is None else list(properties)
    supported = tol.herm_tol <= MAX_SUPPORTED_HERM_TOL
    outcomes = []
    if supported:
        root = np.random.default_rng(seed)
        children = root.spawn(len(selected))
        for prop, child in zip(selected, children):
            name = prop.__name__.removeprefix("prop_")
            if instances == 0:
                outcomes.append(PropertyOutcome(name, True, 0, []))
                continue
            outcome = prop(child, size, norm, tol, instances)
            outcome.name = name
            outcomes.append(outcome)
    return SuiteReport(seed, instances, norm, size, outcomes, tolerance_supported=supported)
