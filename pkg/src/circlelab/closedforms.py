"""Closed-form right-hand sides for the phase-cosine partial sums.

Each check pairs a direct partial sum (the LHS, exact up to float
accumulation) with a closed form (the RHS) obtained by replacing the
coefficient staircase floor(t^2) with t^2 inside the partial-summation
integral and evaluating that integral exactly.  The replacement commits an
O(1) boundary error, so the residual LHS - RHS is a structured, stable
quantity: it is measured, frozen as a golden, and tracked for drift rather
than asserted to be zero.

Three families, by decay exponent of the sum:

  3/4        Fresnel form: two Fresnel-C/S differences plus a constant;
  1/2+eps/2  exponential-integral form: nine literal terms with E_eps on
             the imaginary axis (three of them cancel identically);
  1/2        elementary form: sines/cosines only, the bounded
             non-convergent edge case, with a scaled explicit variant at
             x = 2 for cross-checking.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .errors import DomainError, KernelError
from .expint import expint
from .fresnel import fresnel
from .series import phase_cosine_sum

TWO_PI = 2.0 * math.pi
QUARTER_PI = 0.25 * math.pi
_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class ClosedFormReport:
    """Left-hand partial sum, closed-form right side, and their residual."""

    params: dict = field(repr=True)
    lhs: float = 0.0
    rhs: float = 0.0

    @property
    def residual(self) -> float:
        return self.lhs - self.rhs

    def __post_init__(self):
        if not (math.isfinite(self.lhs) and math.isfinite(self.rhs)):
            raise KernelError("closed-form comparison produced non-finite values")


def fresnel_closed_form(a, m_terms) -> ClosedFormReport:
    """Exponent-3/4 sum versus its Fresnel closed form.

    RHS = (1/(sqrt(2) a^(1/4))) (-2 Fc(2 a^(1/4)) + 2 Fc(2 (aM)^(1/4))
          + 2 Fs(2 a^(1/4)) - 2 Fs(2 (aM)^(1/4)))
          + (cos(2 pi sqrt(a)) - sin(2 pi sqrt(a))) / sqrt(2).
    """
    a = float(a)
    if not (a > 0) or not math.isfinite(a):
        raise DomainError(f"a must be positive and finite, got {a}")
    m_terms = int(m_terms)
    if m_terms < 1:
        raise DomainError(f"m_terms must be >= 1, got {m_terms}")
    lhs = phase_cosine_sum(a, m_terms, 0.75)
    qa = a ** 0.25
    qam = (a * m_terms) ** 0.25
    c_lo, s_lo = fresnel(2.0 * qa)
    c_hi, s_hi = fresnel(2.0 * qam)
    rhs = ((-2.0 * c_lo + 2.0 * c_hi + 2.0 * s_lo - 2.0 * s_hi) / (_SQRT2 * qa)
           + (math.cos(TWO_PI * math.sqrt(a)) - math.sin(TWO_PI * math.sqrt(a))) / _SQRT2)
    return ClosedFormReport(params={"a": a, "m_terms": m_terms}, lhs=lhs, rhs=rhs)


def _real_part_checked(z: complex, context: str) -> float:
    scale = max(1.0, abs(z))
    if abs(z.imag) > 1e-8 * scale:
        raise KernelError(
            f"{context}: imaginary part {z.imag} exceeds tolerance "
            "(conjugate symmetry violated upstream)")
    return z.real


def expint_closed_form(eps, x, y) -> ClosedFormReport:
    """Exponent-(1/2 + eps/2) sum over n <= y^2 versus its nine-term form.

    The nine terms are kept literal; the three y^(1-eps) sine/cosine terms
    cancel identically and serve as a transcription check.  E_eps is
    evaluated on the imaginary axis at 2 pi sqrt(x) y and 2 pi sqrt(x).
    """
    eps = float(eps)
    x = float(x)
    y = float(y)
    if not (eps > 0) or not math.isfinite(eps):
        raise DomainError(f"eps must be positive, got {eps}")
    if not (x >= 1) or not math.isfinite(x):
        raise DomainError(f"x must be >= 1, got {x}")
    if not (y >= 1) or not math.isfinite(y):
        raise DomainError(f"y must be >= 1, got {y}")
    m_terms = int(math.floor(y * y + 1e-9))
    lhs = phase_cosine_sum(x, m_terms, 0.5 + 0.5 * eps)
    sx = math.sqrt(x)
    arg_big = TWO_PI * sx * y
    arg_small = TWO_PI * sx
    e_big_minus = expint(eps, complex(0.0, -arg_big))
    e_big_plus = expint(eps, complex(0.0, arg_big))
    e_small_minus = expint(eps, complex(0.0, -arg_small))
    e_small_plus = expint(eps, complex(0.0, arg_small))
    y_pow = y ** (1.0 - eps)
    one_plus_i = complex(1.0, 1.0)
    one_minus_i = complex(1.0, -1.0)
    total = (
        -(one_plus_i * y_pow * e_big_minus) / _SQRT2
        - (one_minus_i * y_pow * e_big_plus) / _SQRT2
        + (one_plus_i * e_small_minus) / _SQRT2
        + (one_minus_i * e_small_plus) / _SQRT2
        + y_pow * math.sin(arg_big) / _SQRT2
        + y_pow * math.cos(arg_big + QUARTER_PI)
        - y_pow * math.cos(arg_big) / _SQRT2
        - math.sin(arg_small) / _SQRT2
        + math.cos(arg_small) / _SQRT2
    )
    rhs = _real_part_checked(total, "exponential-integral closed form")
    return ClosedFormReport(params={"eps": eps, "x": x, "y": y, "m_terms": m_terms},
                            lhs=lhs, rhs=rhs)


def sqrt_closed_form(x, m_terms) -> ClosedFormReport:
    """Exponent-1/2 sum versus its elementary closed form.

    RHS = sin(2 pi sqrt(x M) + pi/4)/(pi sqrt(x))
          - sin(2 pi sqrt(x) + pi/4)/(pi sqrt(x)) + cos(2 pi sqrt(x) + pi/4);
    the M-dependent first term is why the sum stays bounded without
    converging.
    """
    x = float(x)
    if not (x > 0) or not math.isfinite(x):
        raise DomainError(f"x must be positive and finite, got {x}")
    m_terms = int(m_terms)
    if m_terms < 1:
        raise DomainError(f"m_terms must be >= 1, got {m_terms}")
    lhs = phase_cosine_sum(x, m_terms, 0.5)
    sx = math.sqrt(x)
    rhs = (math.sin(TWO_PI * math.sqrt(x * m_terms) + QUARTER_PI) / (math.pi * sx)
           - math.sin(TWO_PI * sx + QUARTER_PI) / (math.pi * sx)
           + math.cos(TWO_PI * sx + QUARTER_PI))
    return ClosedFormReport(params={"x": x, "m_terms": m_terms}, lhs=lhs, rhs=rhs)


def sqrt_closed_form_x2_variant(m_terms) -> tuple[float, float]:
    """The x = 2 scaled form two ways: 2 pi times the general RHS, and the
    explicit sin + cos + constant version.  The two must agree to float
    accuracy; tests pin them together at 1e-8."""
    m_terms = int(m_terms)
    if m_terms < 1:
        raise DomainError(f"m_terms must be >= 1, got {m_terms}")
    general = TWO_PI * sqrt_closed_form(2.0, m_terms).rhs
    theta = TWO_PI * math.sqrt(2.0)  # = 2 sqrt(2) pi
    const = (-(1.0 + _SQRT2 * math.pi) * math.sin(theta)
             + (_SQRT2 * math.pi - 1.0) * math.cos(theta))
    arg = TWO_PI * math.sqrt(2.0 * m_terms)
    explicit = math.sin(arg) + math.cos(arg) + const
    return general, explicit


def cosine_sum_limit(eps, x) -> float:
    """Limit value of the exponent-(1/2 + eps/2) sum as the cut tends to
    infinity: a four-term expression in E_eps at 2 pi i sqrt(x).

    Bounded in x >= 1 for each eps > 0; returns the (checked) real part.
    """
    eps = float(eps)
    x = float(x)
    if not (eps > 0) or not math.isfinite(eps):
        raise DomainError(f"eps must be positive, got {eps}")
    if not (x >= 1) or not math.isfinite(x):
        raise DomainError(f"x must be >= 1, got {x}")
    arg = TWO_PI * math.sqrt(x)
    total = (
        (complex(1.0, 1.0) * expint(eps, complex(0.0, -arg))) / _SQRT2
        + (complex(1.0, -1.0) * expint(eps, complex(0.0, arg))) / _SQRT2
        - math.sin(arg) / _SQRT2
        + math.cos(arg) / _SQRT2
    )
    return _real_part_checked(total, "cosine sum limit")
