"""Generalized exponential integral E_nu(z) = int_1^inf e^(-z t) t^(-nu) dt.

Validated domain: real order nu >= 0 and complex z with Re(z) > 0, or pure
imaginary z != 0 (then nu > 0).  E_nu(z) = z^(nu-1) Gamma(1-nu, z).

Two branches:

  |z| >= 2   modified-Lentz continued fraction
                 E_nu(z) = e^(-z) / (z+nu - 1*nu/(z+nu+2 - 2(nu+1)/(...)))
             (every imaginary-axis use in this package has |z| >= 2*pi)

  |z| < 2    power series E_nu(z) = Gamma(1-nu) z^(nu-1)
                                    - sum_k (-z)^k / (k! (1-nu+k)),
             replaced at exact positive integer orders n by the log form
                 E_n(z) = (-z)^(n-1)/(n-1)! * (psi(n) - log z)
                          - sum_{k != n-1} (-z)^k / (k! (1-n+k)).

Precision degrades in a small neighborhood of positive integer orders with
|z| < 2 (the two huge terms cancel); exact integers are fine, and the
package's own call sites stay clear of that corner.
"""

from __future__ import annotations

import cmath
import math

from .errors import DomainError, KernelError

_EULER_GAMMA = 0.5772156649015328606

_CF_TOL = 1e-15
_CF_MAX_ITER = 100000
_SERIES_MAX_TERMS = 300


def _validate(order, z) -> tuple[float, complex]:
    try:
        order = float(order)
    except (TypeError, ValueError):
        raise DomainError(f"order must be real, got {order!r}") from None
    if not math.isfinite(order) or order < 0:
        raise DomainError(f"order must be finite and >= 0, got {order}")
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"z must be finite, got {z}")
    if z == 0:
        raise DomainError("z = 0 is outside the domain")
    if z.real < 0:
        raise DomainError(f"Re(z) must be >= 0, got {z}")
    if z.real == 0 and order == 0:
        raise DomainError("order 0 on the imaginary axis is not validated")
    return order, z


def _expint_cf(order: float, z: complex) -> complex:
    # Modified Lentz on the standard continued fraction.
    tiny = 1e-300
    b = z + order
    c = 1.0 / tiny
    d = 1.0 / b if b != 0 else 1.0 / tiny
    h = d
    for i in range(1, _CF_MAX_ITER + 1):
        a = -i * (order + i - 1)
        b = b + 2.0
        d = b + a * d
        if d == 0:
            d = tiny
        c = b + a / c
        if c == 0:
            c = tiny
        d = 1.0 / d
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < _CF_TOL:
            return cmath.exp(-z) * h
    raise KernelError(f"continued fraction failed to converge at order={order}, z={z}")


def _psi_int(n: int) -> float:
    return -_EULER_GAMMA + math.fsum(1.0 / m for m in range(1, n))


def _expint_series(order: float, z: complex) -> complex:
    n = int(round(order))
    if order == n and n >= 1:
        # Log branch at exact positive integer order.
        lead = (-z) ** (n - 1) / math.factorial(n - 1) * (_psi_int(n) - cmath.log(z))
        acc = 0j
        term = 1.0 + 0j  # (-z)^k / k!
        for k in range(_SERIES_MAX_TERMS):
            if k != n - 1:
                acc += term / (1 - n + k)
            if abs(term) < 1e-18 * (1.0 + abs(acc)) and k > abs(z):
                break
            term *= -z / (k + 1)
        return lead - acc
    lead = math.gamma(1.0 - order) * cmath.exp((order - 1.0) * cmath.log(z))
    acc = 0j
    term = 1.0 + 0j
    for k in range(_SERIES_MAX_TERMS):
        acc += term / (1.0 - order + k)
        if abs(term) < 1e-18 * (1.0 + abs(acc)) and k > abs(z):
            break
        term *= -z / (k + 1)
    return lead - acc


def expint(order, z) -> complex:
    """E_order(z) on the validated domain; always returns complex."""
    order, z = _validate(order, z)
    if order == 0.0:
        return cmath.exp(-z) / z
    if abs(z) >= 2.0:
        return _expint_cf(order, z)
    return _expint_series(order, z)


def expint_imag_axis(order, t) -> complex:
    """E_order(i*t) for real t != 0, the oscillatory boundary values."""
    return expint(order, complex(0.0, float(t)))
