"""Closed-form complex fields of (x, t) and curves of one variable.

Every closed-form free-particle solution handled by this package is a
product of powers of affine bases, ``A * prod_j (1 + cx_j x + ct_j t) ** s_j``,
or a plain exponential.  Both shapes carry

* exact partial derivatives (power rule, no discretization error), and
* a globally continuous logarithm.

The continuous logarithm is what makes fractional powers of field
*values* well defined far from the origin: the solutions wind around
zero once |arg| passes pi, where the principal branch of ``value ** s``
stops agreeing with the analytic continuation along the solution.  For
the affine bases used here the real part is pinned at 1, so the
principal log of each *base* is itself continuous and their weighted
sum is the continuation anchored at log 1 = 0.

A "sampler" in the rest of the package is any callable (x, t) -> complex.
Objects of this module additionally expose ``log_value``, ``d_t``,
``d_x``, ``d_xx`` and ``pow``; residual checkers use those when present
and fall back to principal-branch arithmetic otherwise.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Protocol, runtime_checkable

from .errors import DomainError
from .qmath import cpow_principal

FieldSampler = Callable[[float, float], complex]
CurveSampler = Callable[[float], complex]


@runtime_checkable
class AnalyticField(Protocol):
    """Field with exact partials and a continuous logarithm."""

    def __call__(self, x: float, t: float) -> complex: ...

    def log_value(self, x: float, t: float) -> complex: ...

    def d_t(self, x: float, t: float) -> complex: ...

    def d_x(self, x: float, t: float) -> complex: ...

    def d_xx(self, x: float, t: float) -> complex: ...


@runtime_checkable
class AnalyticCurve(Protocol):
    """One-variable curve with exact derivatives and a continuous logarithm."""

    def __call__(self, u: float) -> complex: ...

    def log_value(self, u: float) -> complex: ...

    def deriv(self, u: float, order: int) -> complex: ...


def _finite(value: complex, what: str) -> complex:
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise DomainError(f"{what} produced a non-finite value")
    return value


@dataclass(frozen=True)
class AffineFactor:
    """One factor (1 + cx*x + ct*t) ** s of a power-product field."""

    cx: complex
    ct: complex
    s: float

    def base(self, x: float, t: float) -> complex:
        return 1.0 + self.cx * x + self.ct * t


class PowerProductField:
    """A * prod_j (1 + cx_j x + ct_j t) ** s_j with exact calculus.

    The continuous-log construction assumes every base stays off the
    branch cut of the principal logarithm; for the solution families in
    this package the coefficients are purely imaginary, so Re(base) = 1
    everywhere and the assumption holds on the whole plane.
    """

    def __init__(self, factors, amplitude: complex = 1.0 + 0j):
        self.factors = tuple(factors)
        self.amplitude = complex(amplitude)
        if self.amplitude == 0:
            raise DomainError("field amplitude must be nonzero")
        self._log_amp = cmath.log(self.amplitude)

    def log_value(self, x: float, t: float) -> complex:
        total = self._log_amp
        for f in self.factors:
            b = f.base(x, t)
            if b == 0:
                raise DomainError(f"field base vanished at (x={x}, t={t})")
            total += f.s * cmath.log(b)
        return total

    def __call__(self, x: float, t: float) -> complex:
        return _finite(cmath.exp(self.log_value(x, t)), "field value")

    def _log_grads(self, x: float, t: float):
        # d/dx log, d/dt log, d2/dx2 log
        lx = 0j
        lt = 0j
        lxx = 0j
        for f in self.factors:
            b = f.base(x, t)
            if b == 0:
                raise DomainError(f"field base vanished at (x={x}, t={t})")
            lx += f.s * f.cx / b
            lt += f.s * f.ct / b
            lxx -= f.s * (f.cx / b) ** 2
        return lx, lt, lxx

    def d_t(self, x: float, t: float) -> complex:
        _, lt, _ = self._log_grads(x, t)
        return self(x, t) * lt

    def d_x(self, x: float, t: float) -> complex:
        lx, _, _ = self._log_grads(x, t)
        return self(x, t) * lx

    def d_xx(self, x: float, t: float) -> complex:
        lx, _, lxx = self._log_grads(x, t)
        return self(x, t) * (lx * lx + lxx)

    def pow(self, s: float) -> "PowerProductField":
        """The field raised to a real power, on its own continuous branch."""
        return PowerProductField(
            (AffineFactor(f.cx, f.ct, f.s * s) for f in self.factors),
            amplitude=cpow_principal(self.amplitude, s),
        )


class ExponentialField:
    """A * exp(kx*x + kt*t); the q -> 1 limit of the power products."""

    def __init__(self, kx: complex, kt: complex, amplitude: complex = 1.0 + 0j):
        self.kx = complex(kx)
        self.kt = complex(kt)
        self.amplitude = complex(amplitude)
        if self.amplitude == 0:
            raise DomainError("field amplitude must be nonzero")
        self._log_amp = cmath.log(self.amplitude)

    def log_value(self, x: float, t: float) -> complex:
        return self._log_amp + self.kx * x + self.kt * t

    def __call__(self, x: float, t: float) -> complex:
        return _finite(cmath.exp(self.log_value(x, t)), "field value")

    def d_t(self, x: float, t: float) -> complex:
        return self.kt * self(x, t)

    def d_x(self, x: float, t: float) -> complex:
        return self.kx * self(x, t)

    def d_xx(self, x: float, t: float) -> complex:
        return self.kx * self.kx * self(x, t)

    def pow(self, s: float) -> "ExponentialField":
        return ExponentialField(
            self.kx * s, self.kt * s, amplitude=cpow_principal(self.amplitude, s)
        )


class PowerCurve:
    """A * (1 + c*u) ** s, one-variable analogue of the power product."""

    def __init__(self, c: complex, s: float, amplitude: complex = 1.0 + 0j):
        self.c = complex(c)
        self.s = float(s)
        self.amplitude = complex(amplitude)
        if self.amplitude == 0:
            raise DomainError("curve amplitude must be nonzero")
        self._log_amp = cmath.log(self.amplitude)

    def log_value(self, u: float) -> complex:
        b = 1.0 + self.c * u
        if b == 0:
            raise DomainError(f"curve base vanished at u={u}")
        return self._log_amp + self.s * cmath.log(b)

    def __call__(self, u: float) -> complex:
        return _finite(cmath.exp(self.log_value(u)), "curve value")

    def deriv(self, u: float, order: int) -> complex:
        b = 1.0 + self.c * u
        if b == 0:
            raise DomainError(f"curve base vanished at u={u}")
        v = self(u)
        if order == 1:
            return v * self.s * self.c / b
        if order == 2:
            return v * self.s * (self.s - 1.0) * (self.c / b) ** 2
        raise DomainError(f"derivative order must be 1 or 2, got {order}")

    def pow(self, s: float) -> "PowerCurve":
        return PowerCurve(
            self.c, self.s * s, amplitude=cpow_principal(self.amplitude, s)
        )


class ExpCurve:
    """A * exp(k*u), the q -> 1 limit of the power curves."""

    def __init__(self, k: complex, amplitude: complex = 1.0 + 0j):
        self.k = complex(k)
        self.amplitude = complex(amplitude)
        if self.amplitude == 0:
            raise DomainError("curve amplitude must be nonzero")
        self._log_amp = cmath.log(self.amplitude)

    def log_value(self, u: float) -> complex:
        return self._log_amp + self.k * u

    def __call__(self, u: float) -> complex:
        return _finite(cmath.exp(self.log_value(u)), "curve value")

    def deriv(self, u: float, order: int) -> complex:
        if order == 1:
            return self.k * self(u)
        if order == 2:
            return self.k * self.k * self(u)
        raise DomainError(f"derivative order must be 1 or 2, got {order}")

    def pow(self, s: float) -> "ExpCurve":
        return ExpCurve(self.k * s, amplitude=cpow_principal(self.amplitude, s))


def value_power(sampler, value: complex, s: float, *point) -> complex:
    """Raise a sampled field/curve value to a real power.

    Uses the sampler's continuous logarithm when it has one (the branch
    on which the closed forms satisfy their equations); otherwise the
    principal branch, which is only valid while the accumulated phase
    stays within (-pi, pi].
    """
    if s == 1.0:
        return value
    log = getattr(sampler, "log_value", None)
    if log is not None:
        return cmath.exp(s * log(*point))
    if value == 0:
        raise DomainError("cannot raise a vanishing field value to a fractional power")
    return cpow_principal(value, s)
