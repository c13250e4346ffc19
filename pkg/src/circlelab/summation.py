"""Abel partial summation and the degree-four endpoint summation formula.

abel_summation evaluates sum c_n f(lambda_n) through the identity

    sum_{lambda_n <= x} c_n f(lambda_n) = C(x) f(x) - int_{lambda_1}^x C(t) f'(t) dt

with C the coefficient staircase; the 'exact' method telescopes the
integral exactly (C is piecewise constant), the 'quadrature' method
integrates C(t) f'(t) panel by panel as an independent route.

euler_maclaurin estimates sum_{k=a}^M F(k) for the damped phase cosine
F(t) = cos(2 pi sqrt(t x) + pi/4) / t^(3/4 - delta) as

    int_a^(M+1) F + (F(M+a) + F(a))/2 + (F'(M+a) - F'(a))/12

with the remainder budget (1/120) sum_{k=0}^{M-1} sup |F''''| taken over
unit intervals; the sup is bounded by a monotone amplitude envelope with
exact rational coefficients in beta = 3/4 - delta and c = 2 pi sqrt(x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(12)
_GL_NODES.setflags(write=False)
_GL_WEIGHTS.setflags(write=False)

QUARTER_PI = 0.25 * math.pi


@dataclass(frozen=True)
class CosinePhaseOverPower:
    """f(t) = cos(scale * t + pi/4) / t^power with its exact derivative.

    scale is the linear phase rate (2 pi sqrt(a) in the boundedness
    experiments), power the algebraic decay (3/2 there).  Vectorized over
    numpy arrays.
    """

    scale: float
    power: float

    def __post_init__(self):
        if not math.isfinite(self.scale):
            raise DomainError("scale must be finite")
        if not (self.power > 0) or not math.isfinite(self.power):
            raise DomainError("power must be positive and finite")

    def value(self, t):
        t = np.asarray(t, dtype=float)
        return np.cos(self.scale * t + QUARTER_PI) * t ** (-self.power)

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        phase = self.scale * t + QUARTER_PI
        return (-self.scale * np.sin(phase) * t ** (-self.power)
                - self.power * np.cos(phase) * t ** (-self.power - 1.0))


@dataclass(frozen=True)
class CosinePowerIntegrand:
    """F(t) = cos(2 pi sqrt(t x) + pi/4) / t^(3/4 - delta).

    The summand of the damped phase-cosine series as a function of a
    continuous variable, with first derivative and a pointwise bound on the
    fourth derivative.  Requires x > 0 and 0 < delta < 1/4.
    """

    x: float
    delta: float

    def __post_init__(self):
        if not (self.x > 0) or not math.isfinite(self.x):
            raise DomainError(f"x must be positive and finite, got {self.x}")
        if not (0.0 < self.delta < 0.25):
            raise DomainError(f"delta must lie in (0, 1/4), got {self.delta}")

    @property
    def beta(self) -> float:
        return 0.75 - self.delta

    @property
    def phase_rate(self) -> float:
        return 2.0 * math.pi * math.sqrt(self.x)

    def value(self, t):
        t = np.asarray(t, dtype=float)
        return np.cos(self.phase_rate * np.sqrt(t) + QUARTER_PI) * t ** (-self.beta)

    def derivative(self, t):
        # F' = (delta - 3/4) cos(g)/t^(7/4-delta) - pi sqrt(x) sin(g)/t^(5/4-delta)
        t = np.asarray(t, dtype=float)
        g = self.phase_rate * np.sqrt(t) + QUARTER_PI
        return ((self.delta - 0.75) * np.cos(g) * t ** (-self.beta - 1.0)
                - math.pi * math.sqrt(self.x) * np.sin(g) * t ** (-self.beta - 0.5))

    def fourth_derivative_envelope(self, t):
        """Pointwise bound on |F''''|, decreasing in t.

        Collecting the fourth derivative by powers of t gives
          cos: c^4/16 t^(-b-2) - (3b^2/2 + 3b + 15/16) c^2 t^(-b-3)
               + (b^4 + 6b^3 + 11b^2 + 6b) t^(-b-4)
          sin: -(b/2 + 3/8) c^3 t^(-b-5/2)
               + (2b^3 + 15b^2/2 + 7b + 15/16) c t^(-b-7/2)
        with b = 3/4 - delta and c = 2 pi sqrt(x); the envelope sums the
        absolute coefficients.
        """
        t = np.asarray(t, dtype=float)
        b = self.beta
        c = self.phase_rate
        a2 = c ** 4 / 16.0
        a25 = (0.5 * b + 0.375) * c ** 3
        a3 = (1.5 * b * b + 3.0 * b + 15.0 / 16.0) * c * c
        a35 = (2.0 * b ** 3 + 7.5 * b * b + 7.0 * b + 15.0 / 16.0) * c
        a4 = b ** 4 + 6.0 * b ** 3 + 11.0 * b * b + 6.0 * b
        tb = t ** (-b)
        return tb * (a2 * t ** -2.0 + a25 * t ** -2.5 + a3 * t ** -3.0
                     + a35 * t ** -3.5 + a4 * t ** -4.0)


def oscillatory_cosine_integral(rate, mu, u_lo, u_hi) -> float:
    """int_{u_lo}^{u_hi} cos(rate * u + pi/4) u^mu du by panelled quadrature.

    Panels advance the phase by at most pi/2 each, with 12-node
    Gauss-Legendre inside; the partition depends only on the arguments, so
    results are bit-reproducible.
    """
    if u_hi <= u_lo:
        return 0.0
    width = 0.5 * math.pi / max(rate, 1e-12)
    n_panels = max(1, math.ceil((u_hi - u_lo) / width))
    edges = np.linspace(u_lo, u_hi, n_panels + 1)
    mids = 0.5 * (edges[1:] + edges[:-1])
    halves = 0.5 * (edges[1:] - edges[:-1])
    u = mids[:, None] + halves[:, None] * _GL_NODES[None, :]
    vals = np.cos(rate * u + QUARTER_PI) * u ** mu
    return float(np.sum(halves * (vals @ _GL_WEIGHTS)))


class SummationEstimate(NamedTuple):
    """Endpoint-formula estimate of a damped cosine sum with its pieces."""

    value: float
    remainder_bound: float
    integral: float
    boundary: float
    derivative_correction: float


def euler_maclaurin(fn: CosinePowerIntegrand, a, m_terms) -> SummationEstimate:
    """Estimate sum_{k=a}^{M} F(k) by the degree-four endpoint formula.

    The integral int_a^(M+1) F dt is computed under u = sqrt(t), which makes
    the phase linear; the remainder budget sums the fourth-derivative
    envelope at unit-interval left endpoints (the envelope is decreasing).
    """
    if not isinstance(fn, CosinePowerIntegrand):
        raise DomainError("fn must be a CosinePowerIntegrand")
    if not isinstance(a, (int, np.integer)) or a < 1:
        raise DomainError(f"a must be an integer >= 1, got {a}")
    m_terms = int(m_terms)
    if m_terms < 2:
        raise DomainError(f"m_terms must be >= 2, got {m_terms}")
    a = int(a)
    c = fn.phase_rate
    # int_a^(M+1) cos(c sqrt(t) + pi/4) t^(-beta) dt
    #   = 2 int_{sqrt(a)}^{sqrt(M+1)} cos(c u + pi/4) u^(1 - 2 beta) du
    integral = 2.0 * oscillatory_cosine_integral(
        c, 1.0 - 2.0 * fn.beta, math.sqrt(a), math.sqrt(m_terms + 1))
    f_hi = float(fn.value(m_terms + a))
    f_lo = float(fn.value(a))
    boundary = 0.5 * (f_hi + f_lo)
    d_hi = float(fn.derivative(m_terms + a))
    d_lo = float(fn.derivative(a))
    derivative_correction = (d_hi - d_lo) / 12.0
    lefts = a + np.arange(m_terms, dtype=float)
    remainder = float(np.sum(fn.fourth_derivative_envelope(lefts))) / 120.0
    return SummationEstimate(
        value=integral + boundary + derivative_correction,
        remainder_bound=remainder,
        integral=integral,
        boundary=boundary,
        derivative_correction=derivative_correction,
    )


_ABEL_METHODS = ("exact", "quadrature")


def abel_summation(coeffs, lambdas, fn, x, method: str = "exact") -> float:
    """Evaluate sum_{lambda_n <= x} c_n f(lambda_n) via partial summation.

    coeffs and lambdas are equal-length sequences, lambdas nondecreasing
    with lambdas[0] <= x.  fn provides value(t) (and derivative(t) for the
    quadrature route).  The exact route telescopes the staircase integral
    and reproduces the direct sum to float accuracy; the quadrature route
    integrates C(t) f'(t) with Gauss-Legendre panels per step interval and
    carries the usual quadrature error.
    """
    if method not in _ABEL_METHODS:
        raise DomainError(f"unknown method {method!r}; expected one of {_ABEL_METHODS}")
    lam = np.asarray(lambdas, dtype=float)
    cs = np.asarray(coeffs, dtype=float)
    if lam.ndim != 1 or lam.shape != cs.shape or lam.size == 0:
        raise DomainError("coeffs and lambdas must be equal-length nonempty 1-d")
    if np.any(np.diff(lam) < 0):
        raise DomainError("lambdas must be nondecreasing")
    x = float(x)
    if x < lam[0]:
        raise DomainError(f"x = {x} lies before the first node {lam[0]}")
    idx = int(np.searchsorted(lam, x, side="right"))
    lam = lam[:idx]
    cs = cs[:idx]
    csum = np.cumsum(cs)
    f_at = np.asarray(fn.value(lam), dtype=float)
    f_x = float(fn.value(x))
    if method == "exact":
        # int = sum_j C_j (f(lam_{j+1}) - f(lam_j)) + C_last (f(x) - f(lam_last))
        pieces = [csum[-1] * f_x, -csum[-1] * (f_x - f_at[-1])]
        pieces.extend((-csum[j] * (f_at[j + 1] - f_at[j]) for j in range(idx - 1)))
        return math.fsum(pieces)
    # quadrature route; cap panel width so the phase (if fn exposes its
    # rate through a scale attribute) advances at most pi/2 per panel
    rate = abs(float(getattr(fn, "scale", 0.0)))
    width_cap = 0.5 * math.pi / rate if rate > 0 else math.inf
    total = csum[-1] * f_x
    integral = 0.0
    uppers = np.append(lam[1:], x)
    for j in range(idx):
        lo, hi = lam[j], uppers[j]
        if hi <= lo:
            continue
        n_sub = max(1, math.ceil((hi - lo) / width_cap))
        edges = np.linspace(lo, hi, n_sub + 1)
        mids = 0.5 * (edges[1:] + edges[:-1])
        halves = 0.5 * (edges[1:] - edges[:-1])
        u = mids[:, None] + halves[:, None] * _GL_NODES[None, :]
        panel_vals = np.asarray(fn.derivative(u.ravel())).reshape(u.shape)
        integral += csum[j] * float(np.sum(halves * (panel_vals @ _GL_WEIGHTS)))
    return total - integral
