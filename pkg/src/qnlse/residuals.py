"""Scaled residual checkers for every equation handled by the package.

Each checker evaluates |LHS - RHS| / max(1, |field|) of one equation at
one point, given any sampler.  Derivatives come either from the sampler
itself (``Analytic``: exact closed-form partials) or from central
finite differences with Richardson extrapolation.

Fractional powers of field values use the sampler's continuous
logarithm when it carries one (see ``fields``); a bare callable falls
back to the principal branch, which limits its validity to the region
where the accumulated phase stays inside (-pi, pi].
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .errors import DomainError
from .fields import value_power
from .qmath import HypParams, hyp2f1, hyp2f1_deriv
from .solutions import SolutionKind

_EPS = np.finfo(float).eps

Potential = Optional[Callable[[float], float]]


@dataclass(frozen=True)
class Analytic:
    """Derivatives read straight off the sampler's exact partials."""


@dataclass(frozen=True)
class FiniteDifference:
    """Central differences with Richardson extrapolation.

    ``h_base=None`` picks the classic optimal steps eps^(1/3) (first
    derivative) and eps^(1/4) (second derivative), scaled by
    max(1, |coordinate|).  ``richardson_levels=1`` is the plain stencil.
    """

    h_base: Optional[float] = None
    richardson_levels: int = 2

    def __post_init__(self) -> None:
        if self.h_base is not None and self.h_base <= 0:
            raise DomainError("h_base must be positive")
        if self.richardson_levels < 1:
            raise DomainError("richardson_levels must be >= 1")

    def step(self, order: int, coordinate: float) -> float:
        if self.h_base is not None:
            return self.h_base
        exponent = 1.0 / 3.0 if order == 1 else 0.25
        return _EPS**exponent * max(1.0, abs(coordinate))


DerivativeMethod = Union[Analytic, FiniteDifference]


@dataclass(frozen=True)
class ResidualReport:
    """Aggregate of a residual scan over a sample set."""

    equation: str
    max_abs: float
    l2: float
    worst_point: tuple[float, float]
    n_samples: int

    def as_dict(self) -> dict:
        return {
            "equation": self.equation,
            "max_abs": self.max_abs,
            "l2": self.l2,
            "worst_x": self.worst_point[0],
            "worst_t": self.worst_point[1],
            "n_samples": self.n_samples,
        }


# ---------------------------------------------------------------------------
# derivatives
# ---------------------------------------------------------------------------


def _richardson(samples: Sequence[complex]) -> complex:
    # samples[i] = stencil at h / 2^i; error expansion in h^2
    table = list(samples)
    for k in range(1, len(table)):
        factor = 4.0**k
        for i in range(len(table) - 1, k - 1, -1):
            table[i] = (factor * table[i] - table[i - 1]) / (factor - 1.0)
    return table[-1]


def _fd_1d(func: Callable[[float], complex], u: float, order: int,
           method: FiniteDifference) -> complex:
    h = method.step(order, u)
    rows = []
    for level in range(method.richardson_levels):
        hh = h / 2.0**level
        if order == 1:
            rows.append((func(u + hh) - func(u - hh)) / (2.0 * hh))
        else:
            rows.append((func(u + hh) - 2.0 * func(u) + func(u - hh)) / (hh * hh))
    return _richardson(rows)


def fd_partial(sampler, point: tuple[float, float], axis: str, order: int,
               method: Optional[FiniteDifference] = None) -> complex:
    """Central-difference partial of a field along x or t."""
    if method is None:
        method = FiniteDifference()
    x, t = point
    if axis == "x":
        return _fd_1d(lambda u: sampler(u, t), x, order, method)
    if axis == "t":
        return _fd_1d(lambda u: sampler(x, u), t, order, method)
    raise DomainError(f"axis must be 'x' or 't', got {axis!r}")


def _field_partial(sampler, x: float, t: float, axis: str, order: int,
                   method: DerivativeMethod) -> complex:
    if isinstance(method, Analytic):
        try:
            if axis == "t":
                return sampler.d_t(x, t)
            if order == 1:
                return sampler.d_x(x, t)
            return sampler.d_xx(x, t)
        except AttributeError as err:
            raise DomainError(
                "Analytic derivatives need a sampler with exact partials "
                "(d_t / d_x / d_xx)"
            ) from err
    return fd_partial(sampler, (x, t), axis, order, method)


def _curve_deriv(curve, u: float, order: int, method: DerivativeMethod) -> complex:
    if isinstance(method, Analytic):
        try:
            return curve.deriv(u, order)
        except AttributeError as err:
            raise DomainError(
                "Analytic derivatives need a curve with an exact deriv()"
            ) from err
    return _fd_1d(curve, u, order, method)


def _powered_field_dxx(sampler, x: float, t: float, s: float,
                       method: DerivativeMethod) -> complex:
    """d2/dx2 of sampler(x,t)**s, on the sampler's branch."""
    if isinstance(method, Analytic):
        v = sampler(x, t)
        if v == 0:
            raise DomainError(f"field vanished at (x={x}, t={t})")
        w = value_power(sampler, v, s, x, t)
        vx = _field_partial(sampler, x, t, "x", 1, method)
        vxx = _field_partial(sampler, x, t, "x", 2, method)
        return s * w * (vxx / v) + s * (s - 1.0) * w * (vx / v) ** 2

    def powered(xx: float, tt: float) -> complex:
        return value_power(sampler, sampler(xx, tt), s, xx, tt)

    return fd_partial(powered, (x, t), "x", 2, method)


def _powered_curve_deriv(curve, u: float, s: float, order: int,
                         method: DerivativeMethod) -> complex:
    """d/du or d2/du2 of curve(u)**s, on the curve's branch."""
    if isinstance(method, Analytic):
        v = curve(u)
        if v == 0:
            raise DomainError(f"curve vanished at {u}")
        w = value_power(curve, v, s, u)
        d1 = _curve_deriv(curve, u, 1, method)
        if order == 1:
            return s * w * (d1 / v)
        d2 = _curve_deriv(curve, u, 2, method)
        return s * w * (d2 / v) + s * (s - 1.0) * w * (d1 / v) ** 2

    def powered(uu: float) -> complex:
        return value_power(curve, curve(uu), s, uu)

    return _fd_1d(powered, u, order, method)


# ---------------------------------------------------------------------------
# point residuals
# ---------------------------------------------------------------------------


def hypergeom_ode_residual(params: HypParams) -> float:
    """Scaled residual of z(1-z)F'' + [gamma-(alpha+beta+1)z]F' - alpha*beta*F."""
    f = hyp2f1(params)
    f1 = hyp2f1_deriv(params, 1)
    f2 = hyp2f1_deriv(params, 2)
    z = params.z
    resid = (
        z * (1.0 - z) * f2
        + (params.gamma - (params.alpha + params.beta + 1.0) * z) * f1
        - params.alpha * params.beta * f
    )
    return abs(resid) / max(1.0, abs(f))


def new_nlse_residual(sampler, q: float, m: float, hbar: float,
                      point: tuple[float, float],
                      method: DerivativeMethod) -> complex:
    """i*hbar*q dF/dt - F^(1-q) * (-hbar^2/2m) d2F/dx2, scaled."""
    x, t = point
    value = sampler(x, t)
    if value == 0:
        raise DomainError(f"field vanished at (x={x}, t={t})")
    ft = _field_partial(sampler, x, t, "t", 1, method)
    fxx = _field_partial(sampler, x, t, "x", 2, method)
    powered = value_power(sampler, value, 1.0 - q, x, t)
    resid = 1j * hbar * q * ft - powered * (-hbar * hbar / (2.0 * m)) * fxx
    return resid / max(1.0, abs(value))


def _normalized_power(sampler, x: float, t: float, s: float) -> complex:
    """(sampler(x,t)/sampler(0,0))**s on the sampler's branch."""
    log = getattr(sampler, "log_value", None)
    if log is not None:
        return cmath.exp(s * (log(x, t) - log(0.0, 0.0)))
    v0 = sampler(0.0, 0.0)
    if v0 == 0:
        raise DomainError("field vanishes at the origin; cannot normalize")
    return value_power(sampler, sampler(x, t) / v0, s)


def new_nlse_phi_residual(sampler_phi, q: float, m: float, hbar: float,
                          potential: Potential, point: tuple[float, float],
                          method: DerivativeMethod) -> complex:
    """i*hbar d/dt[phi_n] - H[(phi_n)^(1/q)], phi_n = phi/phi(0,0), scaled."""
    if abs(q) < 1e-300:
        raise DomainError("the phi form requires q != 0")
    x, t = point
    value = sampler_phi(x, t)
    if value == 0:
        raise DomainError(f"field vanished at (x={x}, t={t})")
    v0 = sampler_phi(0.0, 0.0)
    if v0 == 0:
        raise DomainError("field vanishes at the origin; cannot normalize")
    s = 1.0 / q
    phi_t = _field_partial(sampler_phi, x, t, "t", 1, method) / v0
    chi = _normalized_power(sampler_phi, x, t, s)
    chi_xx = _powered_field_dxx(sampler_phi, x, t, s, method) / value_power(
        sampler_phi, v0, s, 0.0, 0.0
    )
    v = potential(x) if potential is not None else 0.0
    h_chi = -hbar * hbar / (2.0 * m) * chi_xx + v * chi
    resid = 1j * hbar * phi_t - h_chi
    return resid / max(1.0, abs(value))


def nrt_residual(sampler_psi, q: float, m: float, hbar: float,
                 potential: Potential, point: tuple[float, float],
                 method: DerivativeMethod) -> complex:
    """i*hbar(2-q) d/dt[psi_n] - H[(psi_n)^(2-q)], psi_n = psi/psi(0,0), scaled."""
    if abs(q - 2.0) < 1e-300:
        raise DomainError("the NRT equation requires q != 2")
    x, t = point
    value = sampler_psi(x, t)
    if value == 0:
        raise DomainError(f"field vanished at (x={x}, t={t})")
    v0 = sampler_psi(0.0, 0.0)
    if v0 == 0:
        raise DomainError("field vanishes at the origin; cannot normalize")
    s = 2.0 - q
    psi_t = _field_partial(sampler_psi, x, t, "t", 1, method) / v0
    chi = _normalized_power(sampler_psi, x, t, s)
    chi_xx = _powered_field_dxx(sampler_psi, x, t, s, method) / value_power(
        sampler_psi, v0, s, 0.0, 0.0
    )
    v = potential(x) if potential is not None else 0.0
    h_chi = -hbar * hbar / (2.0 * m) * chi_xx + v * chi
    resid = 1j * hbar * (2.0 - q) * psi_t - h_chi
    return resid / max(1.0, abs(value))


def separated_time_residual(kind: SolutionKind, f, q: float, lam: float,
                            hbar: float, t: float,
                            method: DerivativeMethod) -> complex:
    """Residual of the separated time equation at one time.

    q-power form: i*hbar d/dt[f^q] - lam*f.
    NRT form:     i*hbar(2-q) f' - lam*f^(2-q).
    """
    value = f(t)
    if value == 0:
        raise DomainError(f"time factor vanished at t={t}")
    if kind is SolutionKind.NEW:
        dfq = _powered_curve_deriv(f, t, q, 1, method)
        resid = 1j * hbar * dfq - lam * value
    else:
        if abs(q - 2.0) < 1e-300:
            raise DomainError("the NRT time equation requires q != 2")
        d1 = _curve_deriv(f, t, 1, method)
        powered = value_power(f, value, 2.0 - q, t)
        resid = 1j * hbar * (2.0 - q) * d1 - lam * powered
    return resid / max(1.0, abs(value))


def separated_space_residual(kind: SolutionKind, g, q: float, lam: float,
                             m: float, hbar: float, x: float,
                             method: DerivativeMethod) -> complex:
    """Residual of the separated space equation at one position.

    q-power form: -(hbar^2/2m) g'' - lam*g^q.
    NRT form:     -(hbar^2/2m) (g^(2-q))'' - lam*g.
    """
    value = g(x)
    if value == 0:
        raise DomainError(f"space factor vanished at x={x}")
    kinetic = -hbar * hbar / (2.0 * m)
    if kind is SolutionKind.NEW:
        d2 = _curve_deriv(g, x, 2, method)
        powered = value_power(g, value, q, x)
        resid = kinetic * d2 - lam * powered
    else:
        if abs(q - 2.0) < 1e-300:
            raise DomainError("the NRT space equation requires q != 2")
        d2 = _powered_curve_deriv(g, x, 2.0 - q, 2, method)
        resid = kinetic * d2 - lam * value
    return resid / max(1.0, abs(value))


# ---------------------------------------------------------------------------
# grid scans
# ---------------------------------------------------------------------------

FIELD_EQUATIONS = ("new-field", "new-phi", "nrt-field")
CURVE_EQUATIONS = ("new-time", "nrt-time", "new-space", "nrt-space")
EQUATION_TAGS = FIELD_EQUATIONS + CURVE_EQUATIONS


def _point_residual(equation: str, sampler, x: float, t: float, *, q, m, hbar,
                    potential, lam, method) -> complex:
    if equation == "new-field":
        return new_nlse_residual(sampler, q, m, hbar, (x, t), method)
    if equation == "new-phi":
        return new_nlse_phi_residual(sampler, q, m, hbar, potential, (x, t), method)
    if equation == "nrt-field":
        return nrt_residual(sampler, q, m, hbar, potential, (x, t), method)
    if equation == "new-time":
        return separated_time_residual(SolutionKind.NEW, sampler, q, lam, hbar, t, method)
    if equation == "nrt-time":
        return separated_time_residual(SolutionKind.NRT, sampler, q, lam, hbar, t, method)
    if equation == "new-space":
        return separated_space_residual(SolutionKind.NEW, sampler, q, lam, m, hbar, x, method)
    if equation == "nrt-space":
        return separated_space_residual(SolutionKind.NRT, sampler, q, lam, m, hbar, x, method)
    raise DomainError(f"unknown equation tag {equation!r}; expected one of {EQUATION_TAGS}")


def scan_residual(equation: str, sampler, grid, method: DerivativeMethod, *,
                  q: float, m: float = 0.5, hbar: float = 1.0,
                  potential: Potential = None,
                  lam: Optional[float] = None) -> ResidualReport:
    """Evaluate one equation's residual over a grid and aggregate.

    Field equations scan the full (x, t) grid; separated time equations
    scan the time axis and separated space ones the x axis.  ``lam`` is
    required for the separated tags.  A domain error at any sample
    aborts the scan with the offending location attached.
    """
    if equation not in EQUATION_TAGS:
        raise DomainError(
            f"unknown equation tag {equation!r}; expected one of {EQUATION_TAGS}"
        )
    if equation in CURVE_EQUATIONS and lam is None:
        raise DomainError(f"equation {equation!r} needs the separation constant lam")

    xs = grid.x_values()
    ts = grid.t_values()
    if equation in ("new-time", "nrt-time"):
        points = [(0.0, float(t)) for t in ts]
    elif equation in ("new-space", "nrt-space"):
        points = [(float(x), 0.0) for x in xs]
    else:
        points = [(float(x), float(t)) for t in ts for x in xs]
    if not points:
        raise DomainError("empty scan grid")

    max_abs = -1.0
    worst = points[0]
    sumsq = 0.0
    for x, t in points:
        try:
            r = abs(
                _point_residual(
                    equation, sampler, x, t,
                    q=q, m=m, hbar=hbar, potential=potential, lam=lam, method=method,
                )
            )
        except DomainError as err:
            raise DomainError(f"{err} [while scanning {equation} at (x={x}, t={t})]") from err
        sumsq += r * r
        if r > max_abs:
            max_abs = r
            worst = (x, t)
    return ResidualReport(
        equation=equation,
        max_abs=max_abs,
        l2=math.sqrt(sumsq),
        worst_point=worst,
        n_samples=len(points),
    )
