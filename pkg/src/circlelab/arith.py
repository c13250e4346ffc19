"""Exact integer arithmetic for sums of two squares.

r2(n) counts ordered pairs (a, b) of integers with a^2 + b^2 = n, signs and
order included, so r2(0) = 1, r2(1) = 4, r2(25) = 12.  Jacobi's formula

    r2(n) = 4 * sum_{d | n, d odd} (-1)^((d-1)/2)      (n >= 1)

is equivalent to r2(n) = 4*(d_1(n) - d_3(n)) where d_j counts divisors
congruent to j mod 4.  Summing over 0 <= n <= x gives the lattice-point
count of the closed disk of radius sqrt(x),

    N(x) = sum_{0 <= n <= x} r2(n) = pi*x + Delta(x),

and the object of study is the error Delta(x), usually normalized by
x^(1/4).  Everything in this module is exact integer arithmetic; floats
appear only in the final pi*x subtraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ResourceLimitError

# Hard cap on x for the summatory functions.  Counts stay below 2^53 here so
# the float delta = count - pi*x is still meaningful.
X_CAP = 10**12

# Largest sieve table allocated as one int64 block (8 bytes/entry).
DEFAULT_MEMORY_LIMIT_ENTRIES = 2 * 10**8

# Divisors d <= _SMALL_DIVISOR cut through a sieve block as strided slices;
# larger d are handled by the multiplier loop (few multiples each).
_SMALL_DIVISOR = 4096


def _check_n(n) -> int:
    if not isinstance(n, (int, np.integer)):
        raise DomainError(f"n must be an integer, got {type(n).__name__}")
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    return int(n)


def r2_enumerate(n) -> int:
    """Count representations n = a^2 + b^2 by direct enumeration over a.

    For each a with a^2 <= n, checks whether n - a^2 is a perfect square.
    Slow but assumption-free; this is the geometric oracle for the two
    divisor-based routes.
    """
    n = _check_n(n)
    if n == 0:
        return 1
    count = 0
    for a in range(math.isqrt(n) + 1):
        rest = n - a * a
        b = math.isqrt(rest)
        if b * b == rest:
            # (a, b) with a, b >= 0; reflect into the other quadrants.
            if a == 0 or b == 0:
                count += 2  # (0, +-b) or (+-a, 0)
            else:
                count += 4
    return count


def _odd_divisors(n: int):
    # Yield the odd divisors of n via trial division up to sqrt(n).
    while n % 2 == 0:
        n //= 2
    d = 1
    while d * d <= n:
        if n % d == 0:
            yield d
            q = n // d
            if q != d:
                yield q
        d += 2


def r2_divisor(n) -> int:
    """r2(n) via Jacobi's alternating sum over odd divisors."""
    n = _check_n(n)
    if n == 0:
        return 1
    acc = 0
    for d in _odd_divisors(n):
        acc += -1 if ((d - 1) // 2) % 2 else 1
    return 4 * acc


def r2_residue(n) -> int:
    """r2(n) = 4*(d_1(n) - d_3(n)) by counting divisor residues mod 4."""
    n = _check_n(n)
    if n == 0:
        return 1
    d1 = 0
    d3 = 0
    for d in _odd_divisors(n):
        if d % 4 == 1:
            d1 += 1
        else:
            d3 += 1
    return 4 * (d1 - d3)


@dataclass(frozen=True)
class R2Table:
    """Sieved table of r2(n) for 0 <= n <= limit.

    values has dtype int64 and length limit + 1; values[0] == 1.  The array
    is frozen read-only so a table can be shared between evaluators.
    """

    limit: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.limit < 0:
            raise DomainError(f"limit must be nonnegative, got {self.limit}")
        if self.values.shape != (self.limit + 1,):
            raise DomainError(
                f"values length {self.values.shape} does not match limit {self.limit}"
            )
        self.values.setflags(write=False)

    def __len__(self) -> int:
        return self.limit + 1

    def __getitem__(self, n: int) -> int:
        return int(self.values[n])


def _r2_block(lo: int, hi: int) -> np.ndarray:
    """r2(n) for lo <= n < hi as an int64 array (lo >= 1).

    Two regimes: odd divisors d <= _SMALL_DIVISOR are applied as strided
    slice updates, larger d through the multiplier loop m*d in [lo, hi) with
    m < hi/_SMALL_DIVISOR.  Both contribute the character (-1)^((d-1)/2);
    the trailing factor 4 is applied once at the end.  Exact int64
    throughout, so the result is independent of how a range is split into
    blocks.
    """
    out = np.zeros(hi - lo, dtype=np.int64)
    top = hi - 1
    small = min(_SMALL_DIVISOR, top)
    for d in range(1, small + 1, 2):
        start = ((lo + d - 1) // d) * d
        if start > top:
            continue
        sign = -1 if (d & 3) == 3 else 1
        out[start - lo :: d] += sign
    if top > _SMALL_DIVISOR:
        m = 1
        while True:
            d_hi = top // m
            if d_hi <= _SMALL_DIVISOR:
                break
            d_lo = max(_SMALL_DIVISOR + 1, -(-lo // m))
            if d_lo <= d_hi:
                first1 = d_lo + ((1 - d_lo) % 4)
                first3 = d_lo + ((3 - d_lo) % 4)
                if first1 <= d_hi:
                    idx = np.arange(first1, d_hi + 1, 4, dtype=np.int64) * m
                    out[idx - lo] += 1
                if first3 <= d_hi:
                    idx = np.arange(first3, d_hi + 1, 4, dtype=np.int64) * m
                    out[idx - lo] -= 1
            m += 1
    out *= 4
    return out


def r2_sieve(limit, memory_limit: int = DEFAULT_MEMORY_LIMIT_ENTRIES) -> R2Table:
    """Sieve r2(n) for all 0 <= n <= limit.

    Raises ResourceLimitError when the table would exceed memory_limit
    entries.  Cost is O(limit log limit) element updates.
    """
    limit = _check_n(limit)
    if limit + 1 > memory_limit:
        raise ResourceLimitError(
            f"sieve of {limit + 1} entries exceeds the limit of {memory_limit}"
        )
    values = np.zeros(limit + 1, dtype=np.int64)
    values[0] = 1
    if limit >= 1:
        # Fill in cache-sized blocks; block boundaries do not affect values.
        step = 1 << 22
        for lo in range(1, limit + 1, step):
            hi = min(lo + step, limit + 1)
            values[lo:hi] = _r2_block(lo, hi)
    return R2Table(limit=limit, values=values)


@dataclass(frozen=True)
class LatticeRecord:
    """One summatory sample: N(x), pi*x, Delta(x) and Delta(x)/x^(1/4)."""

    x: float
    count: int
    pi_x: float
    delta: float
    normalized: float

    @classmethod
    def from_count(cls, x: float, count: int) -> "LatticeRecord":
        pi_x = math.pi * x
        delta = count - pi_x
        if x > 0:
            normalized = delta / x**0.25
        else:
            # One-sided limit at x = 0 (delta = 1 there).
            normalized = math.inf
        return cls(x=float(x), count=int(count), pi_x=pi_x, delta=delta,
                   normalized=normalized)


def _check_x(x) -> float:
    try:
        x = float(x)
    except (TypeError, ValueError):
        raise DomainError(f"x must be a real number, got {x!r}") from None
    if math.isnan(x) or x < 0:
        raise DomainError(f"x must be nonnegative, got {x}")
    if x > X_CAP:
        raise ResourceLimitError(f"x = {x} exceeds the supported cap {X_CAP}")
    return x


def count_enumerate(n_floor: int) -> int:
    """Lattice points in the closed disk of radius sqrt(n_floor), by columns.

    sum over |a| <= sqrt(N) of (2*floor(sqrt(N - a^2)) + 1), folded to a >= 0.
    """
    if n_floor < 0:
        return 0
    count = 2 * math.isqrt(n_floor) + 1  # a = 0 column
    for a in range(1, math.isqrt(n_floor) + 1):
        count += 2 * (2 * math.isqrt(n_floor - a * a) + 1)
    return count


def count_floor_identity_naive(n_floor: int) -> int:
    """N(x) = 1 + 4*sum_{j>=0} (floor(N/(4j+1)) - floor(N/(4j+3))), term by term.

    Direct transcription of the divisor-character identity; O(N) additions.
    Kept as the cross-check for the blocked version below.
    """
    if n_floor < 0:
        return 0
    acc = 0
    j = 0
    while 4 * j + 1 <= n_floor:
        acc += n_floor // (4 * j + 1)
        if 4 * j + 3 <= n_floor:
            acc -= n_floor // (4 * j + 3)
        j += 1
    return 1 + 4 * acc


def _quarter_count(m: int) -> int:
    # Number of integers in [1, m] congruent to 1 mod 4, minus those 3 mod 4.
    if m <= 0:
        return 0
    return (m + 3) // 4 - (m + 1) // 4


def count_floor_identity(n_floor: int) -> int:
    """Blocked evaluation of the floor-sum identity in O(sqrt(N)) steps.

    Splits divisors at sqrt(N): small d summed directly, large d grouped by
    the shared quotient q = floor(N/d), whose d-range contributes
    q * (#d = 1 mod 4 - #d = 3 mod 4) via a closed count.
    """
    if n_floor < 0:
        return 0
    if n_floor == 0:
        return 1
    n = n_floor
    root = math.isqrt(n)
    acc = 0
    for d in range(1, root + 1, 2):
        sign = -1 if (d & 3) == 3 else 1
        acc += sign * (n // d)
    # Large divisors share quotients q = n // d < sqrt(n).
    for q in range(1, root + 1):
        d_hi = n // q
        d_lo = max(root, n // (q + 1))
        if d_hi <= d_lo:
            continue
        acc += q * (_quarter_count(d_hi) - _quarter_count(d_lo))
    # Both halves counted d = root if odd? No: small loop covers d <= root,
    # quotient loop covers d > root via d_lo = max(root, ...). Disjoint.
    return 1 + 4 * acc


_SUM_METHODS = ("enumerate", "sieve", "floor_identity")


def sum_r2(x, method: str = "floor_identity", table: R2Table | None = None,
           memory_limit: int = DEFAULT_MEMORY_LIMIT_ENTRIES) -> LatticeRecord:
    """Summatory count N(x) = sum_{0 <= n <= x} r2(n) as a LatticeRecord.

    method is one of 'enumerate' (column enumeration, O(sqrt x)), 'sieve'
    (prefix-sum of an r2 table, O(x) memory) or 'floor_identity' (blocked
    floor sums, O(sqrt x), the default).  All three agree exactly.  A
    prebuilt table may be passed to amortize sieving across calls.
    """
    x = _check_x(x)
    if method not in _SUM_METHODS:
        raise DomainError(f"unknown method {method!r}; expected one of {_SUM_METHODS}")
    n_floor = math.floor(x)
    if method == "enumerate":
        count = count_enumerate(n_floor)
    elif method == "floor_identity":
        count = count_floor_identity(n_floor)
    else:
        if table is None:
            table = r2_sieve(n_floor, memory_limit=memory_limit)
        elif table.limit < n_floor:
            raise DomainError(
                f"table limit {table.limit} is below floor(x) = {n_floor}"
            )
        count = int(np.sum(table.values[: n_floor + 1], dtype=np.int64))
    return LatticeRecord.from_count(x, count)


def delta_normalized(x, method: str = "floor_identity") -> float:
    """Delta(x)/x^(1/4); requires x > 0."""
    x = _check_x(x)
    if x <= 0:
        raise DomainError("normalized error needs x > 0")
    return sum_r2(x, method=method).normalized
