"""Oscillatory series built on the two-squares counts.

Core objects, all partial sums with explicit truncation bookkeeping:

  * the Bessel resummation of the lattice error,
        count(x) ~ pi x + sqrt(x) sum_n r2(n)/sqrt(n) J1(2 pi sqrt(n x));
  * the alternating odd-index pair
        M_s(a,b) = sum_{k odd} (-1)^((k+1)/2) cos(a + b sqrt(k)) / k^s
    and its sine companion, plus the nested pair
        P_s(a,b) = sum_n M_s(a, b sqrt(n)) / n^s      (Q_s with sines);
  * phase-cosine sums sum_{n<=M} cos(2 pi sqrt(n x) + pi/4) / n^p for the
    exponents p = 3/4 (r2-weighted and bare), 3/4 - delta, and 1/2 + eps/2
    that the closed-form checks target.

Everything returns plain floats/arrays; NaN or overflow in a result is a
KernelError, never a stored value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import arith
from .bessel import BesselPolicy, bessel_j1_many
from .errors import DomainError, KernelError

QUARTER_PI = 0.25 * math.pi
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SeriesEval:
    """A partial-sum value with its truncation depths and tail reading.

    inner_terms is None for single sums; tail_estimate is the magnitude of
    the last structurally nonzero term (None when not meaningful).
    """

    value: float
    outer_terms: int
    inner_terms: int | None = None
    tail_estimate: float | None = None

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise KernelError(f"series evaluated to non-finite value {self.value}")
        if self.outer_terms < 1:
            raise DomainError("outer_terms must be >= 1")


def _check_positive_x(x) -> float:
    x = float(x)
    if not math.isfinite(x) or x <= 0:
        raise DomainError(f"x must be positive and finite, got {x}")
    return x


def _check_terms(n, name="terms") -> int:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise DomainError(f"{name} must be a positive integer, got {n}")
    return int(n)


# -- Bessel resummation -----------------------------------------------------

def _voronoi_terms(x, n_terms, table, policy):
    x = _check_positive_x(x)
    if x == math.floor(x):
        raise DomainError(f"x must be non-integer (jump point), got {x}")
    n_terms = _check_terms(n_terms, "n_terms")
    if table is None:
        table = arith.r2_sieve(n_terms)
    elif table.limit < n_terms:
        raise DomainError(f"table limit {table.limit} below n_terms {n_terms}")
    n = np.arange(1, n_terms + 1, dtype=np.int64)
    r2 = table.values[1 : n_terms + 1].astype(float)
    z = TWO_PI * np.sqrt(n * x)
    j1 = bessel_j1_many(z, policy)
    return x, math.sqrt(x) * r2 / np.sqrt(n) * j1


def voronoi_partial(x, n_terms, table=None, policy: BesselPolicy | None = None) -> SeriesEval:
    """Truncated Bessel resummation of count(x); x must be non-integer.

    value approaches the exact lattice count as n_terms grows; convergence
    is slow and oscillatory, so windowed means (see analysis) are the right
    way to read it.
    """
    x, terms = _voronoi_terms(x, n_terms, table, policy)
    value = math.pi * x + float(np.sum(terms))
    nz = np.flatnonzero(terms)
    tail = float(abs(terms[nz[-1]])) if nz.size else None
    return SeriesEval(value=value, outer_terms=int(n_terms), tail_estimate=tail)


def voronoi_cumulative(x, n_terms, table=None, policy: BesselPolicy | None = None) -> np.ndarray:
    """All partial values of the Bessel resummation, index k = 1..n_terms."""
    x, terms = _voronoi_terms(x, n_terms, table, policy)
    return math.pi * x + np.cumsum(terms)


# -- alternating odd-index pairs --------------------------------------------

def _odd_k_arrays(k_terms, s):
    k = np.arange(1, 2 * k_terms, 2, dtype=float)
    signs = np.empty(k_terms)
    signs[0::2] = -1.0
    signs[1::2] = 1.0
    weights = signs * k ** (-s)
    return k, weights


def odd_alternating_pair(a, b, s, k_terms) -> tuple[float, float]:
    """(cosine, sine) partial sums over odd k with alternating signs.

    sum_{k odd, k < 2*k_terms} (-1)^((k+1)/2) {cos,sin}(a + b sqrt(k)) / k^s.
    The k = 1 term carries sign -1.  Needs s > 0.
    """
    a, b = float(a), float(b)
    s = float(s)
    if not (s > 0):
        raise DomainError(f"s must be > 0, got {s}")
    k_terms = _check_terms(k_terms, "k_terms")
    k, w = _odd_k_arrays(k_terms, s)
    phase = a + b * np.sqrt(k)
    return float(np.dot(w, np.cos(phase))), float(np.dot(w, np.sin(phase)))


def _nested_family_values(a, b, s_values, n_terms, k_terms,
                          kinds) -> dict[tuple[str, float], float]:
    """One pass over the outer index evaluating several nested sums.

    kinds[i] selects 'cos' (M-type inner) or 'sin' (N-type inner) for
    s_values[i]; phases are shared across families, so adding a family
    costs only one weighted dot product per outer step.
    """
    k = np.arange(1, 2 * k_terms, 2, dtype=float)
    signs = np.empty(k_terms)
    signs[0::2] = -1.0
    signs[1::2] = 1.0
    sqrt_k = np.sqrt(k)
    inner_w = {s: signs * k ** (-s) for s in set(s_values)}
    acc = {key: 0.0 for key in zip(kinds, s_values)}
    for n in range(1, n_terms + 1):
        phase = a + (b * math.sqrt(n)) * sqrt_k
        cos_p = np.cos(phase)
        sin_p = None
        for kind, s in zip(kinds, s_values):
            outer = n ** (-s)
            if kind == "cos":
                acc[(kind, s)] += outer * float(np.dot(inner_w[s], cos_p))
            else:
                if sin_p is None:
                    sin_p = np.sin(phase)
                acc[(kind, s)] += outer * float(np.dot(inner_w[s], sin_p))
    return acc


def nested_alternating_pair(a, b, s, n_terms, k_terms) -> tuple[SeriesEval, SeriesEval]:
    """Nested (cosine, sine) partial sums: outer n^-s over inner odd pairs.

    Needs s > 1/2 so the outer sum has decay to work with; both members are
    evaluated on the same rectangular (n_terms, k_terms) truncation.
    """
    s = float(s)
    if not (s > 0.5):
        raise DomainError(f"nested sums need s > 1/2, got {s}")
    n_terms = _check_terms(n_terms, "n_terms")
    k_terms = _check_terms(k_terms, "k_terms")
    vals = _nested_family_values(float(a), float(b), [s, s], n_terms, k_terms,
                                 ["cos", "sin"])
    tail = (n_terms ** (-s)) * (2 * k_terms - 1) ** (-s)
    p = SeriesEval(value=vals[("cos", s)], outer_terms=n_terms,
                   inner_terms=k_terms, tail_estimate=tail)
    q = SeriesEval(value=vals[("sin", s)], outer_terms=n_terms,
                   inner_terms=k_terms, tail_estimate=tail)
    return p, q


def nested_cumulative(a, b, s, n_terms, k_terms) -> tuple[np.ndarray, np.ndarray]:
    """Partial values of both nested sums after each outer term.

    Same truncation convention as nested_alternating_pair; entry j holds
    the (cosine, sine) partials with outer index running to j + 1.
    """
    s = float(s)
    if not (s > 0.5):
        raise DomainError(f"nested sums need s > 1/2, got {s}")
    n_terms = _check_terms(n_terms, "n_terms")
    k_terms = _check_terms(k_terms, "k_terms")
    a, b = float(a), float(b)
    k = np.arange(1, 2 * k_terms, 2, dtype=float)
    signs = np.empty(k_terms)
    signs[0::2] = -1.0
    signs[1::2] = 1.0
    sqrt_k = np.sqrt(k)
    inner_w = signs * k ** (-s)
    p_cum = np.empty(n_terms)
    q_cum = np.empty(n_terms)
    p_acc = q_acc = 0.0
    for n in range(1, n_terms + 1):
        phase = a + (b * math.sqrt(n)) * sqrt_k
        outer = n ** (-s)
        p_acc += outer * float(np.dot(inner_w, np.cos(phase)))
        q_acc += outer * float(np.dot(inner_w, np.sin(phase)))
        p_cum[n - 1] = p_acc
        q_cum[n - 1] = q_acc
    return p_cum, q_cum


# -- truncated expansions of the lattice error ------------------------------

def _hankel_c1(m: int) -> float:
    from .bessel import _C1
    return float(_C1[m])


def _expansion_families(x, big_n):
    """(kind, inner order, coefficient) for the compact expansion.

    Cosine families carry P-type sums at order s + 3/4 with coefficient
    (-1)^s c1(2s) / (2^(4s) pi^(2s+1) x^(s-1/4)); sine families carry
    Q-type sums at order s + 5/4 with coefficient
    -(-1)^s c1(2s+1) / (2^(4s+2) pi^(2s+2) x^(s+1/4)).
    """
    fams = []
    for s in range(big_n + 1):
        coeff = ((-1) ** s) * _hankel_c1(2 * s) / (
            2.0 ** (4 * s) * math.pi ** (2 * s + 1) * x ** (s - 0.25))
        fams.append(("cos", s + 0.75, coeff))
    for s in range(big_n + 1):
        coeff = -((-1) ** s) * _hankel_c1(2 * s + 1) / (
            2.0 ** (4 * s + 2) * math.pi ** (2 * s + 2) * x ** (s + 0.25))
        fams.append(("sin", s + 1.25, coeff))
    return fams


def error_term_expansion_families(x, big_n, n_terms, k_terms) -> list[dict]:
    """Per-family breakdown of the compact expansion.

    Returns dicts with kind ('cos'/'sin'), order (inner decay exponent),
    coefficient, series (the nested partial sum) and term (their product).
    """
    x = _check_positive_x(x)
    if x < 1:
        raise DomainError(f"expansion needs x >= 1, got {x}")
    if not isinstance(big_n, (int, np.integer)) or not 0 <= big_n <= 10:
        raise DomainError(f"big_n must be an integer in [0, 10], got {big_n}")
    n_terms = _check_terms(n_terms, "n_terms")
    k_terms = _check_terms(k_terms, "k_terms")
    fams = _expansion_families(x, int(big_n))
    kinds = [f[0] for f in fams]
    orders = [f[1] for f in fams]
    b = TWO_PI * math.sqrt(x)
    vals = _nested_family_values(QUARTER_PI, b, orders, n_terms, k_terms, kinds)
    out = []
    for kind, order, coeff in fams:
        series_val = vals[(kind, order)]
        out.append({
            "kind": kind,
            "order": order,
            "coefficient": coeff,
            "series": series_val,
            "term": coeff * series_val,
        })
    return out


def error_term_expansion(x, big_n, n_terms, k_terms) -> SeriesEval:
    """Compact truncated expansion of the normalized lattice error.

    Sum of the family terms up to depth big_n; the tail estimate is the
    magnitude of the first omitted order, c1(2 big_n) 4^(-big_n)
    x^(-big_n - 1/2).  Comparisons against the measured lattice error are
    reported by the analysis layer, not asserted here.
    """
    fams = error_term_expansion_families(x, big_n, n_terms, k_terms)
    value = math.fsum(f["term"] for f in fams)
    tail = abs(_hankel_c1(2 * int(big_n))) * 4.0 ** (-int(big_n)) * float(x) ** (
        -int(big_n) - 0.5)
    return SeriesEval(value=value, outer_terms=int(n_terms),
                      inner_terms=int(k_terms), tail_estimate=tail)


_FIRST_ORDER_COEFFS = (
    # (kind, inner order, coefficient builder); the explicit depth-one form
    ("cos", 0.75, lambda x: 2.0 * x ** 0.25),
    ("sin", 1.25, lambda x: -3.0 / (8.0 * math.pi * x ** 0.25)),
    ("cos", 1.75, lambda x: 15.0 / (256.0 * math.pi ** 2 * x ** 0.75)),
    ("sin", 2.25, lambda x: -105.0 / (4096.0 * math.pi ** 3 * x ** 1.25)),
)


def error_term_first_order(x, n_terms, k_terms) -> dict:
    """Explicit depth-one expansion variant with its published coefficients.

    Returns {'value': total, 'families': {label: term}} where labels name
    the inner decay ('cos_3_4', 'sin_5_4', 'cos_7_4', 'sin_9_4').  This
    variant scales each family of the compact form by 2*pi, except the
    deepest sine family which flips sign as well; the relation is measured
    by tests rather than reconciled here.
    """
    x = _check_positive_x(x)
    if x < 1:
        raise DomainError(f"expansion needs x >= 1, got {x}")
    n_terms = _check_terms(n_terms, "n_terms")
    k_terms = _check_terms(k_terms, "k_terms")
    kinds = [f[0] for f in _FIRST_ORDER_COEFFS]
    orders = [f[1] for f in _FIRST_ORDER_COEFFS]
    b = TWO_PI * math.sqrt(x)
    vals = _nested_family_values(QUARTER_PI, b, orders, n_terms, k_terms, kinds)
    families = {}
    for kind, order, cf in _FIRST_ORDER_COEFFS:
        label = f"{kind}_{int(order * 4)}_4"
        families[label] = cf(x) * vals[(kind, order)]
    total = math.fsum(families.values())
    if not math.isfinite(total):
        raise KernelError("first-order expansion evaluated to non-finite value")
    return {"value": total, "families": families}


# -- phase-cosine partial sums ----------------------------------------------

def phase_cosine_cumsum(x, m_max, exponent) -> np.ndarray:
    """Cumulative sums of cos(2 pi sqrt(n x) + pi/4) / n^exponent, n <= m_max.

    The shared kernel behind the r2-weighted, damped, shifted and
    closed-form left-hand sides; index k of the result is the partial sum
    through n = k + 1.
    """
    x = _check_positive_x(x)
    m_max = _check_terms(m_max, "m_max")
    exponent = float(exponent)
    n = np.arange(1, m_max + 1, dtype=float)
    terms = np.cos(TWO_PI * np.sqrt(n * x) + QUARTER_PI) * n ** (-exponent)
    return np.cumsum(terms)


def phase_cosine_sum(x, m_max, exponent) -> float:
    """Final value of phase_cosine_cumsum (single float)."""
    return float(phase_cosine_cumsum(x, m_max, exponent)[-1])


def r2_cosine_sum(x, m_terms, table=None) -> SeriesEval:
    """r2-weighted phase-cosine sum at exponent 3/4.

    sum_{n<=M} r2(n) cos(2 pi sqrt(n x) + pi/4) / n^(3/4); the series whose
    boundedness in M is the object of study.
    """
    x = _check_positive_x(x)
    m_terms = _check_terms(m_terms, "m_terms")
    if table is None:
        table = arith.r2_sieve(m_terms)
    elif table.limit < m_terms:
        raise DomainError(f"table limit {table.limit} below m_terms {m_terms}")
    n = np.arange(1, m_terms + 1, dtype=float)
    r2 = table.values[1 : m_terms + 1].astype(float)
    terms = r2 * np.cos(TWO_PI * np.sqrt(n * x) + QUARTER_PI) * n ** (-0.75)
    nz = np.flatnonzero(r2)
    tail = float(abs(terms[nz[-1]])) if nz.size else None
    return SeriesEval(value=float(np.sum(terms)), outer_terms=m_terms,
                      tail_estimate=tail)


def damped_cosine_sum(x, m_terms, delta) -> SeriesEval:
    """Phase-cosine sum at exponent 3/4 - delta, 0 < delta < 1/4 strict."""
    delta = float(delta)
    if not (0.0 < delta < 0.25):
        raise DomainError(f"delta must lie strictly in (0, 1/4), got {delta}")
    x = _check_positive_x(x)
    m_terms = _check_terms(m_terms, "m_terms")
    cum = phase_cosine_cumsum(x, m_terms, 0.75 - delta)
    tail = float(m_terms) ** (delta - 0.75)
    return SeriesEval(value=float(cum[-1]), outer_terms=m_terms,
                      tail_estimate=tail)


def shifted_cosine_sum(shift, x, m_terms) -> float:
    """Phase-cosine sum at exponent 3/4 - shift for shift in [0, 1/4)."""
    shift = float(shift)
    if not (0.0 <= shift < 0.25):
        raise DomainError(f"shift must lie in [0, 1/4), got {shift}")
    return phase_cosine_sum(x, m_terms, 0.75 - shift)


def log_weighted_cosine_sum(x, m_terms, shift=0.0) -> float:
    """d/d(shift) of shifted_cosine_sum: the log(n)-weighted variant."""
    shift = float(shift)
    if not (0.0 <= shift < 0.25):
        raise DomainError(f"shift must lie in [0, 1/4), got {shift}")
    x = _check_positive_x(x)
    m_terms = _check_terms(m_terms, "m_terms")
    n = np.arange(1, m_terms + 1, dtype=float)
    terms = (np.cos(TWO_PI * np.sqrt(n * x) + QUARTER_PI) * np.log(n)
             * n ** (shift - 0.75))
    return float(np.sum(terms))
