"""RK4 trajectories, the method-of-lines propagator, convergence studies."""

import cmath
import math
import warnings

import numpy as np
import pytest

from qnlse.errors import DegenerateStudyError, DomainError, PropagationError
from qnlse.integrators import (
    GridSpec,
    OdeSpaceCase,
    OdeTimeCase,
    PdeCase,
    WaveField,
    convergence_study,
    fit_observed_order,
    integrate_separated_space,
    integrate_separated_time,
    interior_linf_error,
    manufactured_field,
    propagate,
    rk4_step,
    sample_field,
)
from qnlse.solutions import (
    FreeParticleSpec,
    SolutionKind,
    separated_space_curve,
    separated_time_curve,
)


def quiet_propagate(*args, **kwargs):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        return propagate(*args, **kwargs)


class TestGridSpec:
    def test_dx_and_axes(self):
        grid = GridSpec(-5.0, 5.0, 101, 0.1, 10)
        assert grid.dx == pytest.approx(0.1)
        assert len(grid.x_values()) == 101
        assert grid.t_values()[-1] == pytest.approx(1.0)

    def test_zero_steps_allowed(self):
        grid = GridSpec(0.0, 1.0, 3, 0.1, 0)
        assert list(grid.t_values()) == [0.0]

    @pytest.mark.parametrize("kwargs", [
        dict(x_min=1.0, x_max=0.0), dict(n_points=2), dict(dt=0.0),
        dict(dt=-1.0), dict(n_steps=-1),
    ])
    def test_validation(self, kwargs):
        base = dict(x_min=0.0, x_max=1.0, n_points=11, dt=0.1, n_steps=5)
        with pytest.raises(DomainError):
            GridSpec(**{**base, **kwargs})


class TestWaveField:
    def test_length_checked(self):
        grid = GridSpec(0.0, 1.0, 5, 0.1, 1)
        with pytest.raises(DomainError):
            WaveField(grid, 0.0, np.ones(4, dtype=complex))

    def test_finiteness_checked(self):
        grid = GridSpec(0.0, 1.0, 3, 0.1, 1)
        with pytest.raises(DomainError):
            WaveField(grid, 0.0, np.array([1.0, float("inf"), 1.0], dtype=complex))


class TestRk4:
    def test_zero_rhs_keeps_state(self):
        state = np.array([1 + 2j, -0.5j])
        out = rk4_step(state, lambda t, y: 0.0 * y, 0.0, 0.1)
        assert np.array_equal(out, state)

    def test_rotation_accuracy(self):
        # classical RK4 at dt = 0.1 lands ~8.3e-7 from exp(i): the local
        # error dt^5/120 accumulated over ten unit-rate steps
        state = 1 + 0j
        for k in range(10):
            state = rk4_step(state, lambda t, y: 1j * y, k * 0.1, 0.1)
        assert abs(state - cmath.exp(1j)) <= 1e-6

    def test_halving_reduces_error_sixteenfold(self):
        def endpoint_error(dt):
            n = round(1.0 / dt)
            state = 1 + 0j
            for k in range(n):
                state = rk4_step(state, lambda t, y: 1j * y, k * dt, dt)
            return abs(state - cmath.exp(1j))

        ratio = endpoint_error(0.1) / endpoint_error(0.05)
        assert ratio == pytest.approx(16.0, rel=0.25)

    def test_nonfinite_stage_raises(self):
        with pytest.raises(PropagationError):
            rk4_step(1e308 + 0j, lambda t, y: y * y, 0.0, 1.0)


class TestSeparatedIntegration:
    def test_zero_span(self):
        assert integrate_separated_time(SolutionKind.NEW, 1.5, 1.0, 1.0, 0.0, 1e-3) \
            == [(0.0, 1.0 + 0j)]
        assert integrate_separated_space(SolutionKind.NEW, 1.5, 1.0, 0.5, 1.0, 0.0, 1e-3) \
            == [(0.0, 1.0 + 0j)]

    @pytest.mark.parametrize("q", [0.5, 1.1, 1.5])
    @pytest.mark.parametrize("kind", list(SolutionKind))
    def test_time_factor_matches_closed_form(self, kind, q):
        spec = FreeParticleSpec(q=q)
        traj = integrate_separated_time(kind, q, spec.energy, spec.hbar, 1.0, 1e-3)
        exact = separated_time_curve(kind, spec)(1.0)
        assert abs(traj[-1][1] - exact) <= 1e-8

    @pytest.mark.parametrize("q", [0.5, 1.1, 1.5])
    @pytest.mark.parametrize("kind", list(SolutionKind))
    def test_space_factor_matches_closed_form(self, kind, q):
        spec = FreeParticleSpec(q=q)
        traj = integrate_separated_space(kind, q, spec.energy, spec.m, spec.hbar,
                                         1.0, 1e-3)
        exact = separated_space_curve(kind, spec)(1.0)
        assert abs(traj[-1][1] - exact) <= 1e-7

    def test_classical_q_matches_exponentials(self):
        spec = FreeParticleSpec(q=1.0)
        traj = integrate_separated_time(SolutionKind.NRT, 1.0, spec.energy,
                                        spec.hbar, 1.0, 1e-3)
        assert abs(traj[-1][1] - cmath.exp(-1j)) <= 1e-10

    def test_wide_range_space_integration_crosses_winding(self):
        # x_end = 5 passes the principal-branch wrap point; the tracked
        # power has to keep the trajectory on the closed form
        spec = FreeParticleSpec(q=1.5)
        traj = integrate_separated_space(SolutionKind.NEW, spec.q, spec.energy,
                                         spec.m, spec.hbar, 5.0, 1e-3)
        exact = separated_space_curve(SolutionKind.NEW, spec)(5.0)
        assert abs(traj[-1][1] - exact) <= 1e-6

    def test_preconditions(self):
        with pytest.raises(DomainError):
            integrate_separated_time(SolutionKind.NEW, 0.0, 1.0, 1.0, 1.0, 1e-3)
        with pytest.raises(DomainError):
            integrate_separated_time(SolutionKind.NRT, 2.0, 1.0, 1.0, 1.0, 1e-3)
        with pytest.raises(DomainError):
            integrate_separated_space(SolutionKind.NEW, 1.5, -1.0, 0.5, 1.0, 1.0, 1e-3)
        with pytest.raises(DomainError):
            integrate_separated_space(SolutionKind.NRT, 2.5, 1.0, 0.5, 1.0, 1.0, 1e-3)

    @pytest.mark.parametrize("case_cls", [OdeTimeCase, OdeSpaceCase])
    def test_observed_order_is_four(self, case_cls):
        spec = FreeParticleSpec(q=1.5)
        rep = convergence_study(case_cls(SolutionKind.NEW, spec), 4)
        assert rep.observed_order == pytest.approx(4.0, abs=0.5)
        assert rep.monotone


class TestPropagate:
    def test_zero_steps_returns_initial_only(self):
        spec = FreeParticleSpec(q=1.5)
        exact = manufactured_field(SolutionKind.NEW, spec)
        grid = GridSpec(-1.0, 1.0, 21, 1e-4, 0)
        initial = sample_field(exact, grid, 0.0)
        frames = quiet_propagate(SolutionKind.NEW, initial, spec.q, spec.m,
                                 spec.hbar, boundary=exact)
        assert len(frames) == 1
        assert np.array_equal(frames[0].values, initial.values)

    @pytest.mark.parametrize("kind", list(SolutionKind))
    def test_short_horizon_manufactured_solution(self, kind):
        spec = FreeParticleSpec(q=1.1)
        exact = manufactured_field(kind, spec)
        grid = GridSpec(-5.0, 5.0, 401, 1e-4, 20)
        frames = quiet_propagate(kind, sample_field(exact, grid, 0.0), spec.q,
                                 spec.m, spec.hbar, boundary=exact)
        assert len(frames) == 21
        assert interior_linf_error(frames[-1], exact) <= 1e-5

    def test_classical_case_full_horizon(self):
        spec = FreeParticleSpec(q=1.0)
        exact = manufactured_field(SolutionKind.NEW, spec)
        grid = GridSpec(-5.0, 5.0, 401, 1e-4, 1000)
        initial = sample_field(exact, grid, 0.0)
        frames_new = quiet_propagate(SolutionKind.NEW, initial, 1.0, spec.m,
                                     spec.hbar, boundary=exact)
        frames_nrt = quiet_propagate(SolutionKind.NRT, initial, 1.0, spec.m,
                                     spec.hbar, boundary=exact)
        assert interior_linf_error(frames_new[-1], exact) <= 1e-4
        gap = max(float(np.max(np.abs(a.values - b.values)))
                  for a, b in zip(frames_new, frames_nrt))
        assert gap <= 1e-10

    def test_constant_potential_classical_solution(self):
        # with V = c the linear solution just gains a phase e^{-ict/hbar}
        spec = FreeParticleSpec(q=1.0)
        c = 0.7
        base = manufactured_field(SolutionKind.NEW, spec)

        class Shifted:
            def __call__(self, x, t):
                return base(x, t) * cmath.exp(-1j * c * t / spec.hbar)

            def log_value(self, x, t):
                return base.log_value(x, t) - 1j * c * t / spec.hbar

        exact = Shifted()
        grid = GridSpec(-2.0, 2.0, 161, 1e-4, 500)
        frames = quiet_propagate(SolutionKind.NEW, sample_field(exact, grid, 0.0),
                                 1.0, spec.m, spec.hbar, boundary=exact,
                                 potential=lambda x: c)
        assert interior_linf_error(frames[-1], exact) <= 1e-4

    def test_bare_callable_boundary_uses_principal_anchor(self):
        # a boundary without a continuous log forces the initial-phase
        # anchor to the grid point nearest x = 0; the classical wave
        # still winds past pi at |x| = 5, so this exercises the unwrap
        spec = FreeParticleSpec(q=1.0)
        exact = manufactured_field(SolutionKind.NEW, spec)
        grid = GridSpec(-5.0, 5.0, 401, 1e-4, 200)
        bare = lambda x, t: exact(x, t)
        frames = quiet_propagate(SolutionKind.NEW, sample_field(exact, grid, 0.0),
                                 1.0, spec.m, spec.hbar, boundary=bare)
        assert interior_linf_error(frames[-1], exact) <= 1e-4

    def test_determinism_bit_identical(self):
        spec = FreeParticleSpec(q=1.5)
        exact = manufactured_field(SolutionKind.NEW, spec)
        grid = GridSpec(-2.0, 2.0, 81, 5e-5, 100)

        def run():
            return quiet_propagate(SolutionKind.NEW, sample_field(exact, grid, 0.0),
                                   spec.q, spec.m, spec.hbar, boundary=exact)

        for a, b in zip(run(), run()):
            assert np.array_equal(a.values, b.values)

    def test_zero_initial_value_rejected(self):
        grid = GridSpec(-1.0, 1.0, 11, 1e-4, 5)
        values = np.ones(11, dtype=complex)
        values[5] = 0
        with pytest.raises(DomainError):
            quiet_propagate(SolutionKind.NEW, WaveField(grid, 0.0, values), 1.5,
                            0.5, 1.0, boundary=lambda x, t: 1.0 + 0j)

    def test_stability_warning(self):
        spec = FreeParticleSpec(q=1.5)
        exact = manufactured_field(SolutionKind.NEW, spec)
        grid = GridSpec(-1.0, 1.0, 101, 1e-2, 1)  # dt far above the heuristic
        with pytest.warns(RuntimeWarning, match="heuristic"):
            propagate(SolutionKind.NEW, sample_field(exact, grid, 0.0), spec.q,
                      spec.m, spec.hbar, boundary=exact)

    def test_blowup_raises_with_location(self):
        # q < 1 gives a superlinear nonlinearity (power 1/q > 1), so the
        # unstable step overflows instead of saturating
        spec = FreeParticleSpec(q=0.5)
        exact = manufactured_field(SolutionKind.NEW, spec)
        grid = GridSpec(-1.0, 1.0, 201, 0.05, 40)  # wildly unstable step
        with pytest.raises(PropagationError, match="step"):
            quiet_propagate(SolutionKind.NEW, sample_field(exact, grid, 0.0),
                            spec.q, spec.m, spec.hbar, boundary=exact)

    def test_q_guards(self):
        grid = GridSpec(-1.0, 1.0, 11, 1e-4, 1)
        field = WaveField(grid, 0.0, np.ones(11, dtype=complex))
        with pytest.raises(DomainError):
            quiet_propagate(SolutionKind.NEW, field, 0.0, 0.5, 1.0,
                            boundary=lambda x, t: 1.0 + 0j)
        with pytest.raises(DomainError):
            quiet_propagate(SolutionKind.NRT, field, 2.0, 0.5, 1.0,
                            boundary=lambda x, t: 1.0 + 0j)


class TestConvergenceStudies:
    def test_pde_spatial_order_two(self):
        spec = FreeParticleSpec(q=1.1)
        rep = convergence_study(
            PdeCase(SolutionKind.NEW, spec, dx0=0.2, dt=1e-4, t_final=0.002), 3
        )
        assert rep.observed_order == pytest.approx(2.0, abs=0.3)
        assert rep.monotone

    def test_fit_guards(self):
        with pytest.raises(DegenerateStudyError):
            fit_observed_order([0.1, 0.1], [1e-3, 1e-4])
        with pytest.raises(DegenerateStudyError):
            fit_observed_order([0.1], [1e-3])
        with pytest.raises(DegenerateStudyError):
            fit_observed_order([0.1, 0.05], [1e-3, 0.0])

    def test_study_needs_two_levels(self):
        spec = FreeParticleSpec(q=1.5)
        with pytest.raises(DegenerateStudyError):
            convergence_study(OdeTimeCase(SolutionKind.NEW, spec), 1)

    def test_fit_recovers_known_slope(self):
        hs = [0.1, 0.05, 0.025]
        errs = [2.0 * h**3 for h in hs]
        assert fit_observed_order(hs, errs) == pytest.approx(3.0, rel=1e-12)

    def test_non_monotone_errors_are_flagged_not_fatal(self):
        # fitting still works when the error dips and recovers
        order = fit_observed_order([0.1, 0.05, 0.025], [1e-3, 5e-6, 1e-5])
        assert math.isfinite(order)
