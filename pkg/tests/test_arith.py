"""Tests for exact two-squares arithmetic.

Oracle layout: r2_enumerate is the geometric oracle (pure lattice
enumeration); the two divisor-character routes must reproduce it exactly.
Summatory counts are checked four ways (enumerate columns, blocked floor
identity, naive floor identity, sieve prefix) against each other.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from circlelab import arith
from circlelab.errors import DomainError, ResourceLimitError

# First values of r2(n), n = 0..20, from direct lattice enumeration.
R2_FIRST = [1, 4, 4, 0, 4, 8, 0, 0, 4, 4, 8, 0, 0, 8, 0, 0, 4, 8, 4, 0, 8]


def test_r2_first_values():
    for n, want in enumerate(R2_FIRST):
        assert arith.r2_enumerate(n) == want
        assert arith.r2_divisor(n) == want
        assert arith.r2_residue(n) == want


def test_r2_spot_values():
    # 25 = 25+0 = 16+9: (+-5,0),(0,+-5),(+-4,+-3),(+-3,+-4)
    assert arith.r2_enumerate(25) == 12
    assert arith.r2_divisor(25) == 12
    # 3 mod 4 prime to an odd power kills the count
    assert arith.r2_divisor(3 * 49 * 2) == 0
    # 10^6 = 2^6 * 5^6: powers of 2 are inert, 5 = 1 mod 4 contributes 6+1
    assert arith.r2_enumerate(10**6) == 4 * 7
    assert arith.r2_divisor(10**6) == 4 * 7


def test_r2_multiple_of_four():
    for n in range(1, 500):
        assert arith.r2_divisor(n) % 4 == 0


def test_oracle_triangle_dense():
    for n in range(0, 2001):
        e = arith.r2_enumerate(n)
        assert arith.r2_divisor(n) == e
        assert arith.r2_residue(n) == e


@settings(deadline=None, max_examples=60)
@given(st.integers(min_value=0, max_value=10**9))
def test_oracle_triangle_random(n):
    e = arith.r2_enumerate(n)
    assert arith.r2_divisor(n) == e
    assert arith.r2_residue(n) == e


@settings(deadline=None, max_examples=40)
@given(st.integers(min_value=1, max_value=2000), st.integers(min_value=1, max_value=2000))
def test_r2_quarter_is_multiplicative(m, n):
    if math.gcd(m, n) != 1:
        return
    assert arith.r2_divisor(m * n) * 4 == arith.r2_divisor(m) * arith.r2_divisor(n)


def test_sieve_matches_divisor():
    table = arith.r2_sieve(5000)
    assert table[0] == 1
    for n in range(5001):
        assert table[n] == arith.r2_divisor(n)


def test_sieve_block_boundary_independence():
    whole = arith._r2_block(1, 1501)
    for cut in (2, 500, 750, 1024, 1500):
        parts = np.concatenate([arith._r2_block(1, cut), arith._r2_block(cut, 1501)])
        assert np.array_equal(whole, parts)


def test_sieve_respects_memory_limit():
    with pytest.raises(ResourceLimitError):
        arith.r2_sieve(10**9, memory_limit=10**6)


def test_r2_rejects_bad_input():
    with pytest.raises(DomainError):
        arith.r2_divisor(-1)
    with pytest.raises(DomainError):
        arith.r2_enumerate(2.5)
    with pytest.raises(DomainError):
        arith.r2_residue("7")


COUNT_KNOWN = {
    # (floor(x), lattice count) checked by hand/enumeration for small x
    0: 1,
    1: 5,
    2: 9,
    3: 9,
    4: 13,
    10: 37,
    25: 81,
    100: 317,
}


def test_count_known_values():
    for n, want in COUNT_KNOWN.items():
        assert arith.count_enumerate(n) == want
        assert arith.count_floor_identity(n) == want
        assert arith.count_floor_identity_naive(n) == want


def test_count_four_way_agreement():
    for n in [0, 1, 2, 3, 17, 64, 999, 1000, 4095, 12345, 10**5 + 7]:
        a = arith.count_enumerate(n)
        b = arith.count_floor_identity(n)
        c = arith.count_floor_identity_naive(n)
        s = int(np.sum(arith.r2_sieve(n).values, dtype=np.int64))
        assert a == b == c == s


@settings(deadline=None, max_examples=40)
@given(st.integers(min_value=0, max_value=10**7))
def test_count_identity_vs_enumerate_random(n):
    assert arith.count_floor_identity(n) == arith.count_enumerate(n)


def test_count_large_cross_method():
    n = 10**9
    assert arith.count_floor_identity(n) == arith.count_enumerate(n)


def test_sum_r2_methods_agree():
    for x in [0, 0.5, 1, 2.25, 10.5, 1000, 99999.9]:
        recs = [arith.sum_r2(x, method=m) for m in ("enumerate", "floor_identity", "sieve")]
        assert recs[0].count == recs[1].count == recs[2].count
        assert recs[0].delta == recs[1].delta


def test_sum_r2_at_zero():
    rec = arith.sum_r2(0)
    assert rec.count == 1
    assert rec.pi_x == 0.0
    assert rec.delta == 1.0
    assert math.isinf(rec.normalized)


def test_record_self_consistency():
    rec = arith.sum_r2(12345.5)
    assert rec.pi_x == math.pi * 12345.5
    assert rec.delta == rec.count - rec.pi_x
    assert rec.normalized == rec.delta / 12345.5**0.25


def test_count_is_a_step_function_of_floor():
    for x in [3.0, 3.1, 3.9999]:
        assert arith.sum_r2(x).count == arith.sum_r2(3).count


def test_count_monotone():
    prev = -1
    for n in range(0, 400):
        cur = arith.count_floor_identity(n)
        assert cur >= prev
        prev = cur


def test_gauss_envelope():
    # |N(x) - pi*x| <= 8*sqrt(x) holds with room to spare at these scales.
    for x in [10, 100, 10**4, 10**6]:
        rec = arith.sum_r2(x)
        assert abs(rec.delta) <= 8 * math.sqrt(x)


def test_sum_r2_prebuilt_table():
    table = arith.r2_sieve(1000)
    rec = arith.sum_r2(1000, method="sieve", table=table)
    assert rec.count == arith.count_floor_identity(1000)
    with pytest.raises(DomainError):
        arith.sum_r2(2000, method="sieve", table=table)


def test_sum_r2_rejects_bad_method_and_x():
    with pytest.raises(DomainError):
        arith.sum_r2(10, method="divisor")
    with pytest.raises(DomainError):
        arith.sum_r2(-1)
    with pytest.raises(ResourceLimitError):
        arith.sum_r2(2e12)
    with pytest.raises(DomainError):
        arith.delta_normalized(0)


def test_delta_normalized_known_sign():
    # Delta(10^6) is negative and of modest size; measured in dev and stable.
    v = arith.delta_normalized(10**6)
    assert -2.0 < v < 0.0
