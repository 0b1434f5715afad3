"""Verification suites: every module invariant as a pass/fail check.

Each suite exercises one analytic claim (an identity, an exactness
statement, a limit, an order of accuracy) with fixed tolerances and a
seeded random-draw budget, and reports its worst observed defect.  The
CLI ``verify`` command runs all of them; the acceptance tests reuse
them.  Randomness is seeded from the ``QNLSE_SEED`` environment
variable (default 42) so reruns are reproducible.
"""

from __future__ import annotations

import cmath
import math
import os
import warnings
from dataclasses import dataclass

import numpy as np

from .integrators import (
    GridSpec,
    OdeSpaceCase,
    OdeTimeCase,
    PdeCase,
    convergence_study,
    fit_observed_order,
    integrate_separated_space,
    integrate_separated_time,
    interior_linf_error,
    manufactured_field,
    propagate,
    sample_field,
)
from .qmath import (
    HypParams,
    check_binomial_identity,
    cpow_principal,
    hyp2f1,
    q_exp,
    q_exp_real_cutoff,
)
from .residuals import (
    Analytic,
    FiniteDifference,
    hypergeom_ode_residual,
    new_nlse_residual,
    nrt_residual,
    scan_residual,
    separated_space_residual,
    separated_time_residual,
)
from .solutions import (
    FreeParticleSpec,
    SolutionKind,
    amplitude_wave,
    classical_plane_wave_field,
    product_solution,
    product_solution_field,
    q_plane_wave,
    q_plane_wave_field,
    q_plane_wave_hypergeometric,
    separated_f,
    separated_g,
    separated_space_curve,
    separated_time_curve,
)

DEFAULT_SEED = 42
RESIDUAL_Q_SET = (0.5, 0.9, 1.1, 1.5)
LIMIT_DELTAS = (1e-1, 1e-2, 1e-3)


def seed_from_env() -> int:
    raw = os.environ.get("QNLSE_SEED", "")
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_SEED


@dataclass
class SuiteResult:
    """Outcome of one verification suite."""

    name: str
    passed: bool
    worst: float
    tolerance: float
    detail: str = ""

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": int(self.passed),
            "worst": self.worst,
            "tolerance": self.tolerance,
            "detail": self.detail,
        }


def _scan_grid() -> GridSpec:
    # x in [-5, 5] (101 points), t in [0, 1] (11 points)
    return GridSpec(-5.0, 5.0, 101, 0.1, 10)


def _draw_z(rng, radius: float = 0.9) -> complex:
    r = radius * math.sqrt(rng.uniform())
    phi = rng.uniform(-math.pi, math.pi)
    return r * cmath.exp(1j * phi)


# ---------------------------------------------------------------------------
# special-function suites
# ---------------------------------------------------------------------------


def suite_binomial_identity(rng) -> SuiteResult:
    """Series-vs-power defect of F(-a, c; c; -z) = (1+z)^a on 200 draws."""
    tol = 1e-10
    worst = 0.0
    for _ in range(200):
        alpha = rng.uniform(-3.0, 3.0)
        gamma = rng.uniform(0.5, 4.0)
        worst = max(worst, check_binomial_identity(alpha, gamma, _draw_z(rng)))
    return SuiteResult("binomial-identity", worst <= tol, worst, tol)


def suite_hypergeometric_ode(rng) -> SuiteResult:
    """Scaled defect of the hypergeometric differential equation."""
    tol = 1e-8
    worst = 0.0
    for _ in range(200):
        params = HypParams(
            rng.uniform(-3.0, 3.0),
            rng.uniform(-3.0, 3.0),
            rng.uniform(0.5, 4.0),
            _draw_z(rng),
        )
        worst = max(worst, hypergeom_ode_residual(params))
    # the plane-wave specialization: alpha = 1/(q-1), beta = gamma
    for q in (0.5, 0.9, 1.1, 1.5, 2.0):
        for _ in range(40):
            gamma = rng.uniform(0.5, 4.0)
            params = HypParams(1.0 / (q - 1.0), gamma, gamma, _draw_z(rng))
            worst = max(worst, hypergeom_ode_residual(params))
    return SuiteResult("hypergeometric-ode", worst <= tol, worst, tol)


def suite_hypergeometric_symmetry(rng) -> SuiteResult:
    """2F1 is symmetric in its first two parameters."""
    tol = 1e-12
    worst = 0.0
    for _ in range(100):
        a = rng.uniform(-3.0, 3.0)
        b = rng.uniform(-3.0, 3.0)
        c = rng.uniform(0.5, 4.0)
        z = _draw_z(rng)
        f1 = hyp2f1(HypParams(a, b, c, z))
        f2 = hyp2f1(HypParams(b, a, c, z))
        worst = max(worst, abs(f1 - f2) / max(1.0, abs(f1)))
    return SuiteResult("hypergeometric-symmetry", worst <= tol, worst, tol)


def suite_power_integer_consistency(rng) -> SuiteResult:
    """cpow_principal agrees with repeated multiplication on -3..3."""
    tol = 1e-13
    worst = 0.0
    for _ in range(100):
        base = complex(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0))
        if abs(base) < 0.2:
            continue
        for n in range(-3, 4):
            direct = 1.0 + 0j
            for _ in range(abs(n)):
                direct *= base
            if n < 0:
                direct = 1.0 / direct
            got = cpow_principal(base, n)
            worst = max(worst, abs(got - direct) / max(1.0, abs(direct)))
    return SuiteResult("power-integer-consistency", worst <= tol, worst, tol)


def suite_deformed_exp_product_rule(rng) -> SuiteResult:
    """e(x)e(y) = e(x + y + (q-1)xy) on the positive-bracket domain.

    The composition carries (q-1), matching the (q-1)-inside convention
    of the deformed exponential implemented here.
    """
    tol = 1e-12
    worst = 0.0
    count = 0
    while count < 200:
        q = rng.uniform(0.2, 1.8)
        if abs(q - 1.0) < 1e-6:
            continue
        x = rng.uniform(-1.5, 1.5)
        y = rng.uniform(-1.5, 1.5)
        if 1.0 + (q - 1.0) * x <= 1e-6 or 1.0 + (q - 1.0) * y <= 1e-6:
            continue
        combined = x + y + (q - 1.0) * x * y
        if 1.0 + (q - 1.0) * combined <= 1e-6:
            continue
        lhs = q_exp_real_cutoff(q, x) * q_exp_real_cutoff(q, y)
        rhs = q_exp_real_cutoff(q, combined)
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
        count += 1
    return SuiteResult("deformed-exp-product-rule", worst <= tol, worst, tol)


def suite_deformed_exp_limit(rng) -> SuiteResult:
    """q -> 1 limit of the deformed exponential, fitted order >= 0.9.

    With the (q-1)-inside convention the limit is exp(-z); the distance
    to it must shrink linearly in |q - 1|.
    """
    tol = 0.9
    zs = [complex(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)) for _ in range(25)]
    zs = [z for z in zs if abs(z) <= 2.0] or [1.0 + 1.0j]
    orders = []
    for sign in (+1.0, -1.0):
        deltas = (1e-2, 1e-3, 1e-4)
        sups = []
        for d in deltas:
            q = 1.0 + sign * d
            sups.append(max(abs(q_exp(q, z) - cmath.exp(-z)) for z in zs))
        orders.append(fit_observed_order(deltas, sups))
    worst = min(orders)
    return SuiteResult("deformed-exp-limit", worst >= tol, worst, tol,
                       detail="fitted order in |q-1| (pass if >= tolerance)")


# ---------------------------------------------------------------------------
# solution suites
# ---------------------------------------------------------------------------


def _small_grid():
    xs = np.linspace(-5.0, 5.0, 21)
    ts = np.linspace(0.0, 1.0, 5)
    return xs, ts


def _limit_grid():
    # Order fits need the largest delta (0.1) inside the asymptotic
    # regime; on |px - Et| up to 6 the distance saturates and the fitted
    # slope dips below the true first-order scaling.
    xs = np.linspace(-2.0, 2.0, 21)
    ts = np.linspace(0.0, 1.0, 5)
    return xs, ts


def suite_plane_wave_representations() -> SuiteResult:
    """Direct vs hypergeometric plane-wave route, all gammas coincide."""
    tol = 1e-10
    xs, ts = _small_grid()
    worst = 0.0
    for q in (0.5, 0.9, 1.1, 1.5, 2.0):
        spec = FreeParticleSpec(q=q)
        for x in xs:
            for t in ts:
                direct = q_plane_wave(spec, float(x), float(t))
                values = [
                    q_plane_wave_hypergeometric(spec, g, float(x), float(t))
                    for g in (0.5, 1.0, 2.7)
                ]
                for v in values:
                    worst = max(worst, abs(v - direct))
                worst = max(worst, abs(values[0] - values[1]))
                worst = max(worst, abs(values[0] - values[2]))
    return SuiteResult("plane-wave-representations", worst <= tol, worst, tol)


def _classical_sup(kind, q: float) -> float:
    xs, ts = _limit_grid()
    spec = FreeParticleSpec(q=q)
    classical = classical_plane_wave_field(FreeParticleSpec(q=1.0))
    if kind == "plane":
        sol = q_plane_wave_field(spec)
    else:
        sol = product_solution_field(kind, spec)
    return max(
        abs(sol(float(x), float(t)) - classical(float(x), float(t)))
        for x in xs
        for t in ts
    )


def suite_classical_limit() -> SuiteResult:
    """Distance to exp(i(px - Et)/hbar) vanishes linearly in q - 1."""
    tol = 0.9
    worst_order = math.inf
    details = []
    for kind in ("plane", SolutionKind.NEW, SolutionKind.NRT):
        sups = [_classical_sup(kind, 1.0 + d) for d in LIMIT_DELTAS]
        order = fit_observed_order(LIMIT_DELTAS, sups)
        name = kind if isinstance(kind, str) else kind.value
        details.append(f"{name}:{order:.3f}")
        worst_order = min(worst_order, order)
    return SuiteResult("classical-limit", worst_order >= tol, worst_order, tol,
                       detail="fitted orders " + " ".join(details))


def suite_non_coincidence() -> SuiteResult:
    """The two space factors differ at q = 1.5 and merge as q -> 1."""

    def sup_diff(q: float, xs) -> float:
        spec = FreeParticleSpec(q=q, p=1.0, m=0.5, hbar=1.0)
        g_new = separated_space_curve(SolutionKind.NEW, spec)
        g_nrt = separated_space_curve(SolutionKind.NRT, spec)
        return max(abs(g_new(float(x)) - g_nrt(float(x))) for x in xs)

    split = sup_diff(1.5, np.linspace(-5.0, 5.0, 101))
    fit_xs = _limit_grid()[0]
    sups = [sup_diff(1.0 + d, fit_xs) for d in LIMIT_DELTAS]
    order = fit_observed_order(LIMIT_DELTAS, sups)
    passed = split > 1e-3 and order >= 0.9
    return SuiteResult(
        "non-coincidence", passed, order, 0.9,
        detail=f"sup|g_new-g_nrt|(q=1.5)={split:.6g} (must exceed 1e-3); "
               f"vanishing order {order:.3f}",
    )


def suite_origin_normalization() -> SuiteResult:
    """Every solution evaluates to exactly 1 at the origin."""
    worst = 0.0
    for q in (0.5, 0.9, 1.0, 1.1, 1.5, 2.0):
        spec = FreeParticleSpec(q=q)
        values = [
            q_plane_wave(spec, 0.0, 0.0),
            amplitude_wave(spec, 1.0 + 0j, 0.0, 0.0),
            q_plane_wave_hypergeometric(spec, 1.0, 0.0, 0.0),
        ]
        for kind in (SolutionKind.NEW, SolutionKind.NRT):
            if kind is SolutionKind.NRT and q == 2.0:
                continue
            values += [
                separated_f(kind, spec, 0.0),
                separated_g(kind, spec, 0.0),
                product_solution(kind, spec, 0.0, 0.0),
            ]
        worst = max(worst, max(abs(v - 1.0) for v in values))
    return SuiteResult("origin-normalization", worst == 0.0, worst, 0.0)


# ---------------------------------------------------------------------------
# residual suites
# ---------------------------------------------------------------------------


def _residual_pairs(q: float):
    """Every equation paired with the closed form that solves it."""
    spec = FreeParticleSpec(q=q)
    lam = spec.energy
    pairs = [
        ("new-field", q_plane_wave_field(spec), {}),
        ("new-phi", q_plane_wave_field(spec).pow(q), {}),
        ("new-time", separated_time_curve(SolutionKind.NEW, spec), {"lam": lam}),
        ("new-space", separated_space_curve(SolutionKind.NEW, spec), {"lam": lam}),
    ]
    if abs(q - 2.0) > 1e-12:
        pairs += [
            ("nrt-field", product_solution_field(SolutionKind.NRT, spec), {}),
            ("nrt-time", separated_time_curve(SolutionKind.NRT, spec), {"lam": lam}),
            ("nrt-space", separated_space_curve(SolutionKind.NRT, spec), {"lam": lam}),
        ]
    return spec, pairs


def _exactness_worst(method) -> tuple[float, str]:
    grid = _scan_grid()
    worst = 0.0
    where = ""
    q_values = RESIDUAL_Q_SET + (2.0,)
    for q in q_values:
        spec, pairs = _residual_pairs(q)
        for tag, sampler, extra in pairs:
            rep = scan_residual(tag, sampler, grid, method, q=q,
                                m=spec.m, hbar=spec.hbar, **extra)
            if rep.max_abs > worst:
                worst = rep.max_abs
                where = f"{tag} q={q}"
    return worst, where


def suite_residual_exactness_analytic() -> SuiteResult:
    tol = 1e-8
    worst, where = _exactness_worst(Analytic())
    return SuiteResult("residual-exactness-analytic", worst <= tol, worst, tol,
                       detail=f"worst at {where}")


def suite_residual_exactness_fd() -> SuiteResult:
    tol = 1e-5
    worst, where = _exactness_worst(FiniteDifference(richardson_levels=2))
    return SuiteResult("residual-exactness-fd", worst <= tol, worst, tol,
                       detail=f"worst at {where}")


def suite_change_of_variables() -> SuiteResult:
    """The psi-form and the phi-form (phi = psi^q) agree on exactness."""
    tol = 1e-8
    grid = _scan_grid()
    worst = 0.0
    for q in (0.9, 1.5):
        spec = FreeParticleSpec(q=q)
        for psi in (q_plane_wave_field(spec), product_solution_field(SolutionKind.NEW, spec)):
            r_psi = scan_residual("new-field", psi, grid, Analytic(), q=q,
                                  m=spec.m, hbar=spec.hbar)
            r_phi = scan_residual("new-phi", psi.pow(q), grid, Analytic(), q=q,
                                  m=spec.m, hbar=spec.hbar)
            worst = max(worst, r_psi.max_abs, r_phi.max_abs)
    return SuiteResult("change-of-variables", worst <= tol, worst, tol)


def suite_method_agreement() -> SuiteResult:
    """Analytic and finite-difference residuals agree pointwise to 1e-4."""
    tol = 1e-4
    worst = 0.0
    points = [(x, t) for x in np.linspace(-5.0, 5.0, 11) for t in (0.0, 0.5, 1.0)]
    an, fd = Analytic(), FiniteDifference()
    for q in (0.9, 1.5):
        spec = FreeParticleSpec(q=q)
        lam = spec.energy
        plane = q_plane_wave_field(spec)
        nrt_prod = product_solution_field(SolutionKind.NRT, spec)
        f_new = separated_time_curve(SolutionKind.NEW, spec)
        g_nrt = separated_space_curve(SolutionKind.NRT, spec)
        for x, t in points:
            pairs = [
                new_nlse_residual(plane, q, spec.m, spec.hbar, (x, t), an)
                - new_nlse_residual(plane, q, spec.m, spec.hbar, (x, t), fd),
                nrt_residual(nrt_prod, q, spec.m, spec.hbar, None, (x, t), an)
                - nrt_residual(nrt_prod, q, spec.m, spec.hbar, None, (x, t), fd),
                separated_time_residual(SolutionKind.NEW, f_new, q, lam,
                                        spec.hbar, t, an)
                - separated_time_residual(SolutionKind.NEW, f_new, q, lam,
                                          spec.hbar, t, fd),
                separated_space_residual(SolutionKind.NRT, g_nrt, q, lam,
                                         spec.m, spec.hbar, x, an)
                - separated_space_residual(SolutionKind.NRT, g_nrt, q, lam,
                                           spec.m, spec.hbar, x, fd),
            ]
            worst = max(worst, max(abs(d) for d in pairs))
    return SuiteResult("derivative-method-agreement", worst <= tol, worst, tol)


def suite_lambda_uniqueness() -> SuiteResult:
    """A 1% mis-set separation constant is loudly visible."""
    floor = 1e-4
    grid = _scan_grid()
    worst_min = math.inf
    spec = FreeParticleSpec(q=1.5)
    lam = spec.energy
    for kind, tag in ((SolutionKind.NEW, "new-space"), (SolutionKind.NRT, "nrt-space")):
        g = separated_space_curve(kind, spec)
        for factor in (1.01, 0.99):
            rep = scan_residual(tag, g, grid, Analytic(), q=spec.q,
                                m=spec.m, hbar=spec.hbar, lam=lam * factor)
            worst_min = min(worst_min, rep.max_abs)
    return SuiteResult("lambda-uniqueness", worst_min > floor, worst_min, floor,
                       detail="max residual under 1% lambda perturbation (must exceed tolerance)")


def suite_cross_equation() -> SuiteResult:
    """Each equation rejects the other equation's q != 1 solution."""
    floor = 1e-3
    grid = _scan_grid()
    spec = FreeParticleSpec(q=1.5)
    lam = spec.energy
    checks = [
        ("nrt-field", product_solution_field(SolutionKind.NEW, spec), {}),
        ("new-field", product_solution_field(SolutionKind.NRT, spec), {}),
        ("new-space", separated_space_curve(SolutionKind.NRT, spec), {"lam": lam}),
        ("nrt-space", separated_space_curve(SolutionKind.NEW, spec), {"lam": lam}),
    ]
    worst_min = math.inf
    for tag, sampler, extra in checks:
        rep = scan_residual(tag, sampler, grid, Analytic(), q=spec.q,
                            m=spec.m, hbar=spec.hbar, **extra)
        worst_min = min(worst_min, rep.max_abs)
    return SuiteResult("cross-equation-rejection", worst_min > floor, worst_min, floor,
                       detail="smallest cross-equation max residual (must exceed tolerance)")


# ---------------------------------------------------------------------------
# integrator suites
# ---------------------------------------------------------------------------


def suite_ode_vs_closed_form() -> SuiteResult:
    """RK4 endpoints match the closed forms to 1e-7 at step 1e-3."""
    tol = 1e-7
    worst = 0.0
    for q in (0.5, 1.1, 1.5):
        spec = FreeParticleSpec(q=q)
        lam = spec.energy
        for kind in (SolutionKind.NEW, SolutionKind.NRT):
            traj = integrate_separated_time(kind, q, lam, spec.hbar, 1.0, 1e-3)
            exact = separated_time_curve(kind, spec)(1.0)
            worst = max(worst, abs(traj[-1][1] - exact))
            traj = integrate_separated_space(kind, q, lam, spec.m, spec.hbar, 1.0, 1e-3)
            exact = separated_space_curve(kind, spec)(1.0)
            worst = max(worst, abs(traj[-1][1] - exact))
    return SuiteResult("ode-vs-closed-form", worst <= tol, worst, tol)


def suite_ode_order() -> SuiteResult:
    """Observed RK4 order 4 +/- 0.5 under step halving."""
    spec = FreeParticleSpec(q=1.5)
    orders = [
        convergence_study(OdeTimeCase(SolutionKind.NEW, spec), 4).observed_order,
        convergence_study(OdeSpaceCase(SolutionKind.NRT, spec), 4).observed_order,
    ]
    worst_dev = max(abs(o - 4.0) for o in orders)
    return SuiteResult("ode-order", worst_dev <= 0.5, worst_dev, 0.5,
                       detail=f"orders {orders[0]:.3f}, {orders[1]:.3f}")


def suite_pde_manufactured() -> SuiteResult:
    """Short-horizon manufactured propagation stays near the closed form.

    The deformed equations are anti-diffusive on half the domain
    (perturbations grow like exp((hbar/2m) Im[(1-q)(x-t)/q] k^2 t)), so
    the verifiable horizon at dx = 0.025 on [-5, 5] is short; 20 steps
    keep the parasitic modes below truncation error.
    """
    tol = 1e-5
    worst = 0.0
    spec = FreeParticleSpec(q=1.1)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        for kind in (SolutionKind.NEW, SolutionKind.NRT):
            exact = manufactured_field(kind, spec)
            grid = GridSpec(-5.0, 5.0, 401, 1e-4, 20)
            frames = propagate(kind, sample_field(exact, grid, 0.0), spec.q,
                               spec.m, spec.hbar, boundary=exact)
            worst = max(worst, interior_linf_error(frames[-1], exact))
    return SuiteResult("pde-manufactured", worst <= tol, worst, tol)


def suite_pde_spatial_order() -> SuiteResult:
    """Spatial refinement of the propagator shows order 2 +/- 0.3."""
    spec = FreeParticleSpec(q=1.1)
    worst_dev = 0.0
    detail = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        for kind in (SolutionKind.NEW, SolutionKind.NRT):
            rep = convergence_study(
                PdeCase(kind, spec, dx0=0.2, dt=1e-4, t_final=0.002), 3
            )
            worst_dev = max(worst_dev, abs(rep.observed_order - 2.0))
            detail.append(f"{kind.value}:{rep.observed_order:.3f}")
    return SuiteResult("pde-spatial-order", worst_dev <= 0.3, worst_dev, 0.3,
                       detail=" ".join(detail))


def suite_pde_classical_agreement() -> SuiteResult:
    """At q = 1 both propagators coincide and match the linear solution."""
    spec = FreeParticleSpec(q=1.0)
    exact = manufactured_field(SolutionKind.NEW, spec)
    grid = GridSpec(-5.0, 5.0, 401, 1e-4, 1000)
    initial = sample_field(exact, grid, 0.0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        frames_new = propagate(SolutionKind.NEW, initial, 1.0, spec.m, spec.hbar,
                               boundary=exact)
        frames_nrt = propagate(SolutionKind.NRT, initial, 1.0, spec.m, spec.hbar,
                               boundary=exact)
    pair_gap = max(
        float(np.max(np.abs(a.values - b.values)))
        for a, b in zip(frames_new, frames_nrt)
    )
    linear_err = interior_linf_error(frames_new[-1], exact)
    passed = pair_gap <= 1e-10 and linear_err <= 1e-4
    return SuiteResult(
        "pde-classical-agreement", passed, max(pair_gap, linear_err), 1e-4,
        detail=f"propagator gap {pair_gap:.3g} (tol 1e-10), linear error "
               f"{linear_err:.3g} (tol 1e-4)",
    )


def suite_propagation_determinism() -> SuiteResult:
    """Identical configurations produce bit-identical frames."""
    spec = FreeParticleSpec(q=1.5)
    exact = manufactured_field(SolutionKind.NEW, spec)
    grid = GridSpec(-2.0, 2.0, 81, 5e-5, 100)

    def run():
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            return propagate(SolutionKind.NEW, sample_field(exact, grid, 0.0),
                             spec.q, spec.m, spec.hbar, boundary=exact)

    a = run()
    b = run()
    identical = all(np.array_equal(x.values, y.values) for x, y in zip(a, b))
    return SuiteResult("propagation-determinism", identical,
                       0.0 if identical else 1.0, 0.0)


ALL_SUITES = (
    ("binomial-identity", "rng"),
    ("hypergeometric-ode", "rng"),
    ("hypergeometric-symmetry", "rng"),
    ("power-integer-consistency", "rng"),
    ("deformed-exp-product-rule", "rng"),
    ("deformed-exp-limit", "rng"),
    ("plane-wave-representations", ""),
    ("classical-limit", ""),
    ("non-coincidence", ""),
    ("origin-normalization", ""),
    ("residual-exactness-analytic", ""),
    ("residual-exactness-fd", ""),
    ("change-of-variables", ""),
    ("derivative-method-agreement", ""),
    ("lambda-uniqueness", ""),
    ("cross-equation-rejection", ""),
    ("ode-vs-closed-form", ""),
    ("ode-order", ""),
    ("pde-manufactured", ""),
    ("pde-spatial-order", ""),
    ("pde-classical-agreement", ""),
    ("propagation-determinism", ""),
)

_SUITE_FUNCS = {
    "binomial-identity": suite_binomial_identity,
    "hypergeometric-ode": suite_hypergeometric_ode,
    "hypergeometric-symmetry": suite_hypergeometric_symmetry,
    "power-integer-consistency": suite_power_integer_consistency,
    "deformed-exp-product-rule": suite_deformed_exp_product_rule,
    "deformed-exp-limit": suite_deformed_exp_limit,
    "plane-wave-representations": suite_plane_wave_representations,
    "classical-limit": suite_classical_limit,
    "non-coincidence": suite_non_coincidence,
    "origin-normalization": suite_origin_normalization,
    "residual-exactness-analytic": suite_residual_exactness_analytic,
    "residual-exactness-fd": suite_residual_exactness_fd,
    "change-of-variables": suite_change_of_variables,
    "derivative-method-agreement": suite_method_agreement,
    "lambda-uniqueness": suite_lambda_uniqueness,
    "cross-equation-rejection": suite_cross_equation,
    "ode-vs-closed-form": suite_ode_vs_closed_form,
    "ode-order": suite_ode_order,
    "pde-manufactured": suite_pde_manufactured,
    "pde-spatial-order": suite_pde_spatial_order,
    "pde-classical-agreement": suite_pde_classical_agreement,
    "propagation-determinism": suite_propagation_determinism,
}


def run_verification(seed: int | None = None,
                     names: list[str] | None = None) -> list[SuiteResult]:
    """Run the requested suites (all by default) and collect results."""
    if seed is None:
        seed = seed_from_env()
    rng = np.random.default_rng(seed)
    results = []
    for name, wants_rng in ALL_SUITES:
        if names is not None and name not in names:
            continue
        func = _SUITE_FUNCS[name]
        results.append(func(rng) if wants_rng else func())
    return results
