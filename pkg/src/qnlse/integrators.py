"""Numerical integration: RK4 for the separated factors and a
method-of-lines propagator for the two deformed field equations.

The separated equations are recast as explicit first-order systems:

* q-power time factor: i*hbar d/dt[f^q] = lam*f becomes
  f' = lam * f^(2-q) / (i*hbar*q);
* NRT time factor is already explicit, f' = lam * f^(2-q) / (i*hbar*(2-q));
* q-power space factor integrates (g, g') with g'' = -(2m*lam/hbar^2) g^q;
* NRT space factor substitutes u = g^(2-q), integrates
  u'' = -(2m*lam/hbar^2) u^(1/(2-q)) and recovers g = u^(1/(2-q)).

The propagator applies a second-order central Laplacian on the
interior, the pointwise fractional power of the field on its tracked
branch, and classical RK4 in time, with Dirichlet values injected from
a boundary source at every stage.  Manufactured boundary/initial data
from the closed forms turn it into a verifiable scheme.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from . import _kernels
from .errors import DegenerateStudyError, DomainError, PropagationError
from .solutions import (
    FreeParticleSpec,
    SolutionKind,
    product_solution_field,
    q_plane_wave_field,
    separated_space_curve,
    separated_time_curve,
)

# Explicit diffusive-scaling heuristic for the time step; exceeding it
# warns (the RK4 imaginary-axis limit is roomier) but does not abort.
STABILITY_SAFETY = 0.2


@dataclass(frozen=True)
class GridSpec:
    """Uniform space-time grid: n_points across [x_min, x_max], n_steps
    time steps of size dt.  n_steps = 0 is allowed (initial frame only)."""

    x_min: float
    x_max: float
    n_points: int
    dt: float
    n_steps: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)):
            raise DomainError("grid bounds must be finite")
        if self.x_max <= self.x_min:
            raise DomainError("x_max must exceed x_min")
        if self.n_points < 3:
            raise DomainError("n_points must be at least 3")
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise DomainError("dt must be positive")
        if self.n_steps < 0:
            raise DomainError("n_steps must be non-negative")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    def x_values(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    def t_values(self, t0: float = 0.0) -> np.ndarray:
        return t0 + self.dt * np.arange(self.n_steps + 1)


@dataclass
class WaveField:
    """Complex samples on the spatial grid at one instant."""

    grid: GridSpec
    t: float
    values: np.ndarray

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=np.complex128)
        if self.values.shape != (self.grid.n_points,):
            raise DomainError(
                f"field length {self.values.shape} does not match grid "
                f"({self.grid.n_points} points)"
            )
        if not np.all(np.isfinite(self.values.real) & np.isfinite(self.values.imag)):
            raise DomainError("field values must be finite")


@dataclass(frozen=True)
class ConvergenceReport:
    """Error-vs-resolution record with a fitted order of accuracy."""

    resolutions: tuple[float, ...]
    errors: tuple[float, ...]
    observed_order: float
    monotone: bool

    def as_dict(self) -> dict:
        out = {"observed_order": self.observed_order, "monotone": int(self.monotone)}
        for i, (r, e) in enumerate(zip(self.resolutions, self.errors)):
            out[f"resolution_{i}"] = r
            out[f"error_{i}"] = e
        return out


def fit_observed_order(resolutions: Sequence[float], errors: Sequence[float]) -> float:
    """Least-squares slope of log(error) against log(resolution)."""
    res = [float(r) for r in resolutions]
    errs = [float(e) for e in errors]
    if len(res) != len(errs) or len(res) < 2:
        raise DegenerateStudyError("need at least two (resolution, error) pairs")
    if len(set(res)) != len(res):
        raise DegenerateStudyError("duplicate resolutions make the fit degenerate")
    if any(e <= 0 for e in errs):
        raise DegenerateStudyError("errors must be positive to fit a log-log slope")
    slope = np.polyfit(np.log(res), np.log(errs), 1)[0]
    return float(slope)


# ---------------------------------------------------------------------------
# RK4
# ---------------------------------------------------------------------------


def rk4_step(state, rhs: Callable, t: float, dt: float):
    """One classical Runge-Kutta step of d(state)/dt = rhs(t, state)."""
    k1 = rhs(t, state)
    k2 = rhs(t + 0.5 * dt, state + 0.5 * dt * k1)
    k3 = rhs(t + 0.5 * dt, state + 0.5 * dt * k2)
    k4 = rhs(t + dt, state + dt * k3)
    for i, k in enumerate((k1, k2, k3, k4), start=1):
        if not np.all(np.isfinite(np.asarray(k))):
            raise PropagationError(f"RK4 stage {i} produced a non-finite value at t={t}")
    return state + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


class _TrackedPower:
    """Continuous-branch power of a scalar trajectory value.

    ``theta`` holds the unwrapped argument of the previous accepted
    state; stage values are unwrapped relative to it.
    """

    def __init__(self, initial: complex):
        self.theta = cmath.phase(initial)

    def __call__(self, value: complex, s: float) -> complex:
        r = abs(value)
        if r == 0.0:
            raise DomainError("trajectory value reached zero (fractional power undefined)")
        if s == 1.0:
            return value
        d = cmath.phase(value) - self.theta
        d -= 2.0 * math.pi * round(d / (2.0 * math.pi))
        ang = s * (self.theta + d)
        return r**s * complex(math.cos(ang), math.sin(ang))

    def advance(self, value: complex) -> None:
        d = cmath.phase(value) - self.theta
        d -= 2.0 * math.pi * round(d / (2.0 * math.pi))
        self.theta += d


def _step_count(span: float, step: float) -> int:
    if span == 0.0:
        return 0
    if step <= 0:
        raise DomainError("step size must be positive")
    return max(1, round(span / step))


def integrate_separated_time(kind: SolutionKind, q: float, lam: float,
                             hbar: float, t_end: float, dt: float
                             ) -> list[tuple[float, complex]]:
    """RK4 trajectory of the separated time factor from f(0) = 1."""
    if kind is SolutionKind.NEW:
        if abs(q) < 1e-300:
            raise DomainError("the q-power time equation requires q != 0")
        coef = q
    else:
        if abs(q - 2.0) < 1e-300:
            raise DomainError("the NRT time equation requires q != 2")
        coef = 2.0 - q
    n = _step_count(t_end, dt)
    trajectory = [(0.0, 1.0 + 0j)]
    if n == 0:
        return trajectory
    h = t_end / n
    scale = lam / (1j * hbar * coef)
    f = 1.0 + 0j
    tracker = _TrackedPower(f)
    for k in range(n):
        rhs = lambda _t, y: scale * tracker(y, 2.0 - q)
        f = rk4_step(f, rhs, k * h, h)
        if f == 0:
            raise DomainError(f"time factor reached zero at t={(k + 1) * h}")
        tracker.advance(f)
        trajectory.append(((k + 1) * h, f))
    return trajectory


def integrate_separated_space(kind: SolutionKind, q: float, lam: float,
                              m: float, hbar: float, x_end: float, dx: float
                              ) -> list[tuple[float, complex]]:
    """RK4 trajectory of the separated space factor from g(0) = 1.

    Initial slope comes from the closed form's exact derivative at the
    origin; the NRT branch integrates u = g^(2-q) (the variable whose
    second derivative the equation constrains) and maps back.
    """
    if lam <= 0:
        raise DomainError("the separated space integration needs lam > 0")
    p = math.sqrt(2.0 * m * lam)
    curvature = -2.0 * m * lam / (hbar * hbar)
    if kind is SolutionKind.NEW:
        if q <= -1.0:
            raise DomainError("the q-power space factor requires q > -1")
        slope0 = 2j * p / (hbar * math.sqrt(2.0 * (q + 1.0)))
        s_power = q
        state = np.array([1.0 + 0j, slope0])
    else:
        if abs(q - 2.0) < 1e-300 or (2.0 - q) * (3.0 - q) <= 0.0:
            raise DomainError("the NRT space factor requires q != 2 and (2-q)(3-q) > 0")
        g_slope0 = 2j * p / (hbar * math.sqrt(2.0 * (2.0 - q) * (3.0 - q)))
        slope0 = (2.0 - q) * g_slope0
        s_power = 1.0 / (2.0 - q)
        state = np.array([1.0 + 0j, slope0])

    n = _step_count(x_end, dx)
    tracker = _TrackedPower(state[0])

    def to_g(u: complex) -> complex:
        if kind is SolutionKind.NEW:
            return u
        return tracker(u, s_power) if s_power != 1.0 else u

    trajectory = [(0.0, 1.0 + 0j)]
    if n == 0:
        return trajectory
    h = x_end / n

    def rhs(_x, y):
        return np.array([y[1], curvature * tracker(y[0], s_power)])

    for k in range(n):
        state = rk4_step(state, rhs, k * h, h)
        if state[0] == 0:
            raise DomainError(f"space factor reached zero at x={(k + 1) * h}")
        tracker.advance(state[0])
        trajectory.append(((k + 1) * h, to_g(complex(state[0]))))
    return trajectory


# ---------------------------------------------------------------------------
# method-of-lines propagation
# ---------------------------------------------------------------------------


def _initial_theta(values: np.ndarray, xs: np.ndarray, t0: float, boundary) -> np.ndarray:
    """Continuous argument of the initial frame.

    Spatial unwrap fixes the profile up to a global multiple of 2*pi;
    the anchor comes from the boundary source's continuous logarithm if
    it has one, else the principal argument at the point nearest x = 0.
    """
    theta = np.unwrap(np.angle(values))
    log = getattr(boundary, "log_value", None)
    if log is not None:
        target = log(float(xs[0]), t0).imag
        shift = round((target - theta[0]) / (2.0 * math.pi))
    else:
        anchor = int(np.argmin(np.abs(xs)))
        target = math.atan2(values[anchor].imag, values[anchor].real)
        shift = round((target - theta[anchor]) / (2.0 * math.pi))
    return theta + 2.0 * math.pi * shift


def propagate(equation: SolutionKind, initial: WaveField, q: float, m: float,
              hbar: float, boundary, potential: Optional[Callable[[float], float]] = None,
              backend: Optional[str] = None) -> list[WaveField]:
    """March the chosen deformed equation from an initial frame.

    q-power form:  i*hbar  d(phi)/dt = H[phi^(1/q)]  (phi normalized at origin);
    NRT form:      i*hbar(2-q) d(psi)/dt = H[psi^(2-q)].

    The boundary source supplies exact Dirichlet values at both grid
    ends for every RK4 stage time.  Returns the field after every step,
    the initial frame included.
    """
    grid = initial.grid
    if equation is SolutionKind.NEW:
        if abs(q) < 1e-300:
            raise DomainError("the q-power equation requires q != 0")
        s, coef = 1.0 / q, 1.0
    else:
        if abs(q - 2.0) < 1e-300:
            raise DomainError("the NRT equation requires q != 2")
        s, coef = 2.0 - q, 2.0 - q

    values = np.asarray(initial.values, dtype=np.complex128)
    if np.any(values == 0):
        raise DomainError("initial field must be nonzero everywhere")

    dx = grid.dx
    limit = STABILITY_SAFETY * dx * dx * m / hbar
    if grid.dt > limit:
        warnings.warn(
            f"dt={grid.dt:g} exceeds the diffusive-scaling heuristic "
            f"{limit:g} = {STABILITY_SAFETY}*dx^2*m/hbar; the explicit scheme "
            "may be inaccurate or unstable",
            RuntimeWarning,
            stacklevel=2,
        )

    xs = grid.x_values()
    pot = np.zeros(grid.n_points) if potential is None else np.array(
        [float(potential(float(x))) for x in xs]
    )
    n_steps = grid.n_steps
    bl = np.empty((n_steps, 3), dtype=np.complex128)
    br = np.empty((n_steps, 3), dtype=np.complex128)
    x_left, x_right = float(xs[0]), float(xs[-1])
    for k in range(n_steps):
        t_k = initial.t + k * grid.dt
        for j, tau in enumerate((t_k, t_k + 0.5 * grid.dt, t_k + grid.dt)):
            bl[k, j] = boundary(x_left, tau)
            br[k, j] = boundary(x_right, tau)

    theta0 = _initial_theta(values, xs, initial.t, boundary)
    frames, _, status = _kernels.propagate_frames(
        values, theta0, s, -1j / (hbar * coef), -hbar * hbar / (2.0 * m),
        1.0 / (dx * dx), pot, grid.dt, n_steps, bl, br, backend=backend,
    )
    if status[0] != _kernels.STATUS_OK:
        reason = "zero" if status[0] == _kernels.STATUS_ZERO else "non-finite"
        raise PropagationError(
            f"field value became {reason} at step {int(status[1])}, "
            f"index {int(status[2])}"
        )
    return [
        WaveField(grid=grid, t=initial.t + k * grid.dt, values=frames[k])
        for k in range(n_steps + 1)
    ]


def manufactured_field(equation: SolutionKind, spec: FreeParticleSpec):
    """The closed form each propagator should reproduce exactly.

    The q-power equation evolves phi = (q-plane wave)^q; the NRT
    equation evolves its separated product solution directly.
    """
    if equation is SolutionKind.NEW:
        return q_plane_wave_field(spec).pow(spec.q)
    return product_solution_field(SolutionKind.NRT, spec)


def sample_field(field, grid: GridSpec, t: float) -> WaveField:
    """Evaluate a closed-form field on a grid at one time."""
    xs = grid.x_values()
    vals = np.array([field(float(x), t) for x in xs], dtype=np.complex128)
    return WaveField(grid=grid, t=t, values=vals)


def interior_linf_error(frame: WaveField, exact_field) -> float:
    """Max interior-point distance between a frame and a closed form."""
    xs = frame.grid.x_values()
    errs = [
        abs(frame.values[j] - exact_field(float(xs[j]), frame.t))
        for j in range(1, frame.grid.n_points - 1)
    ]
    return float(max(errs))


# ---------------------------------------------------------------------------
# convergence studies
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OdeTimeCase:
    """Separated time factor vs its closed form at t_end."""

    kind: SolutionKind
    spec: FreeParticleSpec
    t_end: float = 1.0
    dt0: float = 0.05


@dataclass(frozen=True)
class OdeSpaceCase:
    """Separated space factor vs its closed form at x_end."""

    kind: SolutionKind
    spec: FreeParticleSpec
    x_end: float = 1.0
    dx0: float = 0.05


@dataclass(frozen=True)
class PdeCase:
    """Manufactured-solution propagation, refined in space.

    dt stays fixed (choose it small enough that the fourth-order time
    error is subdominant) while dx halves per level.
    """

    equation: SolutionKind
    spec: FreeParticleSpec
    x_min: float = -5.0
    x_max: float = 5.0
    dx0: float = 0.1
    dt: float = 1e-4
    t_final: float = 0.1


def _ode_error(case, dt_or_dx: float) -> float:
    spec = case.spec
    lam = spec.energy
    if isinstance(case, OdeTimeCase):
        traj = integrate_separated_time(case.kind, spec.q, lam, spec.hbar,
                                        case.t_end, dt_or_dx)
        exact = separated_time_curve(case.kind, spec)(case.t_end)
    else:
        traj = integrate_separated_space(case.kind, spec.q, lam, spec.m,
                                         spec.hbar, case.x_end, dt_or_dx)
        exact = separated_space_curve(case.kind, spec)(case.x_end)
    return abs(traj[-1][1] - exact)


def _pde_error(case: PdeCase, dx: float, backend: Optional[str]) -> float:
    span = case.x_max - case.x_min
    n_points = max(3, round(span / dx) + 1)
    n_steps = max(1, round(case.t_final / case.dt))
    grid = GridSpec(case.x_min, case.x_max, n_points, case.dt, n_steps)
    exact = manufactured_field(case.equation, case.spec)
    initial = sample_field(exact, grid, 0.0)
    frames = propagate(case.equation, initial, case.spec.q, case.spec.m,
                       case.spec.hbar, boundary=exact, backend=backend)
    return interior_linf_error(frames[-1], exact)


def convergence_study(case, refinement_levels: int = 3,
                      backend: Optional[str] = None) -> ConvergenceReport:
    """Halve the discretization per level and fit the observed order."""
    if refinement_levels < 2:
        raise DegenerateStudyError("a convergence study needs at least two levels")
    resolutions: list[float] = []
    errors: list[float] = []
    for level in range(refinement_levels):
        if isinstance(case, OdeTimeCase):
            h = case.dt0 / 2.0**level
            err = _ode_error(case, h)
        elif isinstance(case, OdeSpaceCase):
            h = case.dx0 / 2.0**level
            err = _ode_error(case, h)
        elif isinstance(case, PdeCase):
            h = case.dx0 / 2.0**level
            err = _pde_error(case, h, backend)
        else:
            raise DomainError(f"unknown study case {type(case).__name__}")
        resolutions.append(h)
        errors.append(err)
    order = fit_observed_order(resolutions, errors)
    monotone = all(errors[i + 1] < errors[i] for i in range(len(errors) - 1))
    return ConvergenceReport(
        resolutions=tuple(resolutions),
        errors=tuple(errors),
        observed_order=order,
        monotone=monotone,
    )
