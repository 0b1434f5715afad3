"""Complex elementary and special functions.

Principal-branch complex powers, the deformed exponential
``[1 + (q-1)z]^(1/(1-q))``, and the Gauss hypergeometric function 2F1
with its first two derivatives.  Everything here is a pure function of
its inputs; valid results never contain NaN or infinity (operations
that would produce one raise instead).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError

# Below this |q - 1| the fractional-power form of the deformed
# exponential has lost all precision (exponent 1/(1-q) -> inf) and the
# exact q -> 1 limit is used instead.
EPS_Q_ONE = 1e-12

# Series truncation: stop once |term| <= SERIES_RTOL * |partial sum| for
# three consecutive terms; give up past SERIES_MAX_TERMS.
SERIES_RTOL = 2.0 ** -52
SERIES_MAX_TERMS = 10_000


def _require_finite(value: complex, what: str) -> complex:
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise DomainError(f"{what} produced a non-finite value")
    return value


def cpow_principal(base: complex, exponent: complex) -> complex:
    """Principal-branch complex power exp(exponent * Log(base)).

    The logarithm's argument lies in (-pi, pi]; a negative-zero
    imaginary part on the base is normalized so that negative real
    bases sit on the upper side of the cut.  ``0 ** w`` is 0 when
    Re(w) > 0 and a domain error otherwise.
    """
    b = complex(base)
    e = complex(exponent)
    if b == 0:
        if e.real > 0:
            return 0j
        raise DomainError(
            "0 cannot be raised to an exponent with non-positive real part"
        )
    if b.imag == 0.0:
        b = complex(b.real, 0.0)
    try:
        out = cmath.exp(e * cmath.log(b))
    except OverflowError as err:
        raise DomainError(f"complex power overflowed ({b!r} ** {e!r})") from err
    return _require_finite(out, "complex power")


def q_exp(q: float, z: complex) -> complex:
    """Deformed exponential [1 + (q-1)z]^(1/(1-q)) on the principal branch.

    For |q - 1| below ``EPS_Q_ONE`` the exact limit exp(-z) is returned:
    the deformed form tends to exp(-z) as q -> 1 (its base carries q-1
    while its exponent carries 1/(1-q)).
    """
    zc = complex(z)
    if abs(q - 1.0) < EPS_Q_ONE:
        return _require_finite(cmath.exp(-zc), "q_exp")
    base = 1.0 + (q - 1.0) * zc
    if base == 0:
        raise DomainError(f"q_exp pole: 1 + (q-1)z vanished for q={q}, z={zc}")
    return cpow_principal(base, 1.0 / (1.0 - q))


def q_exp_real_cutoff(q: float, x: float) -> float:
    """Real deformed exponential with the standard cutoff.

    Returns [1 + (q-1)x]^(1/(1-q)) where the bracket is positive and 0
    otherwise; total on the reals.
    """
    if abs(q - 1.0) < EPS_Q_ONE:
        return math.exp(-x)
    base = 1.0 + (q - 1.0) * x
    if base <= 0.0:
        return 0.0
    try:
        return base ** (1.0 / (1.0 - q))
    except OverflowError as err:
        raise DomainError(
            f"deformed exponential overflowed (q={q}, x={x})"
        ) from err


def _gamma_is_polar(gamma: float) -> bool:
    return gamma == math.floor(gamma) and gamma <= 0.0


@dataclass(frozen=True)
class HypParams:
    """Parameter quadruple (alpha, beta, gamma, z) for a 2F1 evaluation.

    gamma must avoid the poles of the function (zero and the negative
    integers).  The general series path additionally requires |z| < 1;
    the degenerate beta == gamma closed form is valid for any z off the
    cut [1, inf).
    """

    alpha: float
    beta: float
    gamma: float
    z: complex

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "gamma"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"non-finite hypergeometric parameter {name}")
        zc = complex(self.z)
        if not (math.isfinite(zc.real) and math.isfinite(zc.imag)):
            raise DomainError("non-finite hypergeometric argument z")
        if _gamma_is_polar(self.gamma):
            raise DomainError(
                f"gamma={self.gamma} is a pole of the hypergeometric function"
            )
        object.__setattr__(self, "z", zc)


def hyp2f1_series(alpha: float, beta: float, gamma: float, z: complex) -> complex:
    """Truncated power series sum of (a)_n (b)_n / ((c)_n n!) z^n.

    Requires |z| < 1.  Terms are accumulated until three consecutive
    ones fall below the floating-point noise floor of the partial sum.
    """
    zc = complex(z)
    if abs(zc) >= 1.0:
        raise DomainError(
            f"series evaluation requires |z| < 1, got |z| = {abs(zc):.6g}"
        )
    if _gamma_is_polar(gamma):
        raise DomainError(f"gamma={gamma} is a pole of the hypergeometric function")
    term = 1.0 + 0j
    total = 1.0 + 0j
    quiet = 0
    for n in range(SERIES_MAX_TERMS):
        term *= (alpha + n) * (beta + n) / ((gamma + n) * (n + 1)) * zc
        total += term
        if abs(term) <= SERIES_RTOL * abs(total):
            quiet += 1
            if quiet == 3:
                return _require_finite(total, "hypergeometric series")
        else:
            quiet = 0
    raise ConvergenceError(
        f"hypergeometric series did not settle within {SERIES_MAX_TERMS} terms "
        f"(|z| = {abs(zc):.6g})"
    )


def hyp2f1(params: HypParams) -> complex:
    """Gauss hypergeometric function 2F1(alpha, beta; gamma; z).

    beta == gamma (compared exactly: callers that want this route build
    the two fields from the same value) dispatches to the closed form
    (1 - z)^(-alpha), valid off the cut [1, inf).  Otherwise the power
    series is summed, which requires |z| < 1; no analytic continuation
    is attempted.
    """
    if params.beta == params.gamma:
        return cpow_principal(1.0 - params.z, -params.alpha)
    return hyp2f1_series(params.alpha, params.beta, params.gamma, params.z)


def hyp2f1_deriv(params: HypParams, order: int) -> complex:
    """First or second z-derivative of 2F1 via the contiguous shift.

    d/dz F(a,b;c;z) = (ab/c) F(a+1,b+1;c+1;z), applied twice for the
    second derivative.
    """
    a, b, c = params.alpha, params.beta, params.gamma
    if order == 1:
        coeff = a * b / c
        shifted = HypParams(a + 1.0, b + 1.0, c + 1.0, params.z)
    elif order == 2:
        coeff = a * (a + 1.0) * b * (b + 1.0) / (c * (c + 1.0))
        shifted = HypParams(a + 2.0, b + 2.0, c + 2.0, params.z)
    else:
        raise DomainError(f"derivative order must be 1 or 2, got {order}")
    return coeff * hyp2f1(shifted)


def check_binomial_identity(alpha: float, gamma: float, z: complex) -> float:
    """Scaled defect of F(-alpha, gamma; gamma; -z) = (1+z)^alpha.

    The hypergeometric side is summed with the raw series (the
    degenerate closed-form dispatch would make the comparison vacuous:
    both sides would evaluate the identical power).  Requires |z| < 1,
    which also keeps 1 + z off the negative real axis.
    """
    zc = complex(z)
    if abs(zc) >= 1.0:
        raise DomainError("binomial identity check requires |z| < 1")
    lhs = hyp2f1_series(-alpha, gamma, gamma, -zc)
    rhs = cpow_principal(1.0 + zc, alpha)
    return abs(lhs - rhs) / max(1.0, abs(rhs))
