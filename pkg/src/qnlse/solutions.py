"""Closed-form free-particle solutions of the two deformed equations.

The traveling q-plane wave ``[1 + i(1-q)(px - Et)/hbar]^(1/(1-q))``,
its evaluation through the degenerate hypergeometric route, and the
separated time/space factors for

* the q-power equation ("new" on the CLI): i*hbar d/dt [f^q] = lam*f and
  -(hbar^2/2m) g'' = lam*g^q, and
* the NRT equation: i*hbar(2-q) f' = lam*f^(2-q) and
  -(hbar^2/2m) (g^(2-q))'' = lam*g.

All factors are normalized to 1 at the origin, E is always derived from
p and m, and q = 1 (within ``EPS_Q_ONE``) dispatches to the exact plane
wave limits.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError
from .fields import AffineFactor, ExpCurve, ExponentialField, PowerCurve, PowerProductField
from .qmath import EPS_Q_ONE, HypParams, hyp2f1


@dataclass(frozen=True)
class FreeParticleSpec:
    """Physical parameters of a free particle: deformation q, momentum p,
    mass m and action scale hbar.  The energy is always p^2 / (2m)."""

    q: float
    p: float = 1.0
    m: float = 0.5
    hbar: float = 1.0

    def __post_init__(self) -> None:
        for name in ("q", "p", "m", "hbar"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"non-finite particle parameter {name}")
        if self.m <= 0:
            raise DomainError(f"mass must be positive, got {self.m}")
        if self.hbar <= 0:
            raise DomainError(f"hbar must be positive, got {self.hbar}")

    @property
    def energy(self) -> float:
        return self.p * self.p / (2.0 * self.m)


class SolutionKind(enum.Enum):
    """Which deformed equation a separated solution belongs to."""

    NEW = "new"
    NRT = "nrt"


def is_classical(q: float) -> bool:
    """True where the deformation is indistinguishable from q = 1."""
    return abs(q - 1.0) < EPS_Q_ONE


def _require_new_time(q: float) -> None:
    if abs(q) < EPS_Q_ONE:
        raise DomainError("the q-power time factor requires q != 0")


def _require_nrt(q: float) -> None:
    if abs(q - 2.0) < EPS_Q_ONE:
        raise DomainError("NRT factors require q != 2 (the power 2-q vanishes)")


def _require_new_space(q: float) -> None:
    if q <= -1.0:
        raise DomainError("the q-power space factor requires q > -1")


def _require_nrt_space(q: float) -> None:
    _require_nrt(q)
    if (2.0 - q) * (3.0 - q) <= 0.0:
        raise DomainError(
            "the NRT space factor requires (2-q)(3-q) > 0, violated for "
            f"q={q}"
        )


# ---------------------------------------------------------------------------
# field / curve factories
# ---------------------------------------------------------------------------


def classical_plane_wave_field(spec: FreeParticleSpec, amplitude: complex = 1.0 + 0j):
    """exp(i(px - Et)/hbar), the q -> 1 limit of everything below."""
    return ExponentialField(
        kx=1j * spec.p / spec.hbar,
        kt=-1j * spec.energy / spec.hbar,
        amplitude=amplitude,
    )


def q_plane_wave_field(spec: FreeParticleSpec, amplitude: complex = 1.0 + 0j):
    """The traveling wave [1 + i(1-q)(px - Et)/hbar]^(1/(1-q)) as a field."""
    if is_classical(spec.q):
        return classical_plane_wave_field(spec, amplitude)
    coeff = 1j * (1.0 - spec.q) / spec.hbar
    return PowerProductField(
        [AffineFactor(cx=coeff * spec.p, ct=-coeff * spec.energy, s=1.0 / (1.0 - spec.q))],
        amplitude=amplitude,
    )


def separated_time_curve(kind: SolutionKind, spec: FreeParticleSpec):
    """The separated time factor f(t) with f(0) = 1."""
    q, E, hbar = spec.q, spec.energy, spec.hbar
    if is_classical(q):
        return ExpCurve(-1j * E / hbar)
    if kind is SolutionKind.NEW:
        _require_new_time(q)
        denom = q
    else:
        _require_nrt(q)
        denom = 2.0 - q
    return PowerCurve(c=1j * (1.0 - q) * E / (denom * hbar), s=1.0 / (q - 1.0))


def separated_space_curve(kind: SolutionKind, spec: FreeParticleSpec):
    """The separated space factor g(x) with g(0) = 1."""
    q, p, hbar = spec.q, spec.p, spec.hbar
    if is_classical(q):
        return ExpCurve(1j * p / hbar)
    if kind is SolutionKind.NEW:
        _require_new_space(q)
        root = math.sqrt(2.0 * (q + 1.0))
    else:
        _require_nrt_space(q)
        root = math.sqrt(2.0 * (2.0 - q) * (3.0 - q))
    return PowerCurve(c=1j * (1.0 - q) * p / (root * hbar), s=2.0 / (1.0 - q))


def product_solution_field(kind: SolutionKind, spec: FreeParticleSpec):
    """The separated product f(t) * g(x) as a two-factor field."""
    if is_classical(spec.q):
        return classical_plane_wave_field(spec)
    f = separated_time_curve(kind, spec)
    g = separated_space_curve(kind, spec)
    return PowerProductField(
        [
            AffineFactor(cx=0j, ct=f.c, s=f.s),
            AffineFactor(cx=g.c, ct=0j, s=g.s),
        ]
    )


# ---------------------------------------------------------------------------
# point evaluations
# ---------------------------------------------------------------------------


def q_plane_wave(spec: FreeParticleSpec, x: float, t: float) -> complex:
    """Evaluate the traveling q-plane wave at one point."""
    return q_plane_wave_field(spec)(x, t)


def q_plane_wave_hypergeometric(
    spec: FreeParticleSpec, gamma: float, x: float, t: float
) -> complex:
    """The same traveling wave through its hypergeometric representation.

    Evaluates 2F1(1/(q-1), gamma; gamma; i(q-1)(px - Et)/hbar); the free
    parameter gamma cancels and the value must agree with
    ``q_plane_wave`` for any admissible gamma.
    """
    if is_classical(spec.q):
        return classical_plane_wave_field(spec)(x, t)
    q = spec.q
    z = 1j / spec.hbar * (q - 1.0) * (spec.p * x - spec.energy * t)
    return hyp2f1(HypParams(alpha=1.0 / (q - 1.0), beta=gamma, gamma=gamma, z=z))


def amplitude_wave(
    spec: FreeParticleSpec, amplitude: complex, x: float, t: float
) -> complex:
    """A * q_plane_wave; exactly A at the origin.  A must be nonzero
    (the normalized forms of the equations divide by the origin value)."""
    if amplitude == 0:
        raise DomainError("amplitude_wave requires a nonzero amplitude")
    return q_plane_wave_field(spec, amplitude=complex(amplitude))(x, t)


def separated_f(kind: SolutionKind, spec: FreeParticleSpec, t: float) -> complex:
    """Evaluate the separated time factor at one time."""
    return separated_time_curve(kind, spec)(t)


def separated_g(kind: SolutionKind, spec: FreeParticleSpec, x: float) -> complex:
    """Evaluate the separated space factor at one position."""
    return separated_space_curve(kind, spec)(x)


def product_solution(
    kind: SolutionKind, spec: FreeParticleSpec, x: float, t: float
) -> complex:
    """Evaluate f(t) * g(x); both factors are 1 at the origin."""
    return product_solution_field(kind, spec)(x, t)
