"""Series evaluators against brute-force oracles and frozen spots.

The alternating-pair oracles are plain Python loops (different summation
order from the numpy path); the k = 1 sign convention (-1) and the
classical alternating-odd-reciprocal limit pin the sign conventions.
Expansion-family ratios are checked against the 2 pi rescaling that
relates the explicit depth-one form to the compact one.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from circlelab import arith, series
from circlelab.errors import DomainError, KernelError
from circlelab.goldens import golden


def brute_odd_pair(a, b, s, k_terms):
    cos_acc, sin_acc = 0.0, 0.0
    sign = -1.0
    for j in range(k_terms):
        k = 2 * j + 1
        w = sign / k ** s
        cos_acc += w * math.cos(a + b * math.sqrt(k))
        sin_acc += w * math.sin(a + b * math.sqrt(k))
        sign = -sign
    return cos_acc, sin_acc


def brute_nested_pair(a, b, s, n_terms, k_terms):
    cos_acc, sin_acc = 0.0, 0.0
    for n in range(1, n_terms + 1):
        c, sn = brute_odd_pair(a, b * math.sqrt(n), s, k_terms)
        cos_acc += c / n ** s
        sin_acc += sn / n ** s
    return cos_acc, sin_acc


class TestOddPair:
    def test_matches_brute_loop(self):
        for a, b, s, k in [(0.0, 1.0, 0.75, 500), (0.7, 6.1, 1.25, 300),
                           (math.pi / 4, 2 * math.pi, 0.75, 1000),
                           (-1.2, 0.0, 2.0, 200)]:
            got = series.odd_alternating_pair(a, b, s, k)
            want = brute_odd_pair(a, b, s, k)
            assert got[0] == pytest.approx(want[0], rel=1e-12, abs=1e-12)
            assert got[1] == pytest.approx(want[1], rel=1e-12, abs=1e-12)

    def test_alternating_reciprocal_limit(self):
        # at a = b = 0, s = 1 the cosine member is -(1 - 1/3 + 1/5 - ...),
        # so it approaches -pi/4 with a Leibniz tail below the next term
        k_terms = 10 ** 4
        c, sn = series.odd_alternating_pair(0.0, 0.0, 1.0, k_terms)
        assert abs(c + math.pi / 4) <= 1.0 / (2 * k_terms + 1)
        assert sn == 0.0

    def test_first_term_sign_is_negative(self):
        c, _ = series.odd_alternating_pair(0.0, 0.0, 5.0, 1)
        assert c == -1.0

    @given(a=st.floats(-3, 3), b=st.floats(0, 10), s=st.floats(0.3, 2.5))
    @settings(deadline=None, max_examples=40)
    def test_phase_shift_flips_sign(self, a, b, s):
        c0, s0 = series.odd_alternating_pair(a, b, s, 64)
        c1, s1 = series.odd_alternating_pair(a + math.pi, b, s, 64)
        assert c1 == pytest.approx(-c0, rel=1e-10, abs=1e-10)
        assert s1 == pytest.approx(-s0, rel=1e-10, abs=1e-10)

    def test_rejects_bad_s_and_terms(self):
        with pytest.raises(DomainError):
            series.odd_alternating_pair(0.0, 1.0, 0.0, 10)
        with pytest.raises(DomainError):
            series.odd_alternating_pair(0.0, 1.0, 1.0, 0)


class TestNestedPair:
    def test_matches_brute_double_loop(self):
        p, q = series.nested_alternating_pair(0.3, 2.0, 0.75, 60, 60)
        want = brute_nested_pair(0.3, 2.0, 0.75, 60, 60)
        assert p.value == pytest.approx(want[0], rel=1e-11, abs=1e-11)
        assert q.value == pytest.approx(want[1], rel=1e-11, abs=1e-11)

    def test_tail_estimate_is_corner_weight(self):
        p, q = series.nested_alternating_pair(0.0, 1.0, 0.8, 50, 40)
        corner = 50.0 ** -0.8 * 79.0 ** -0.8
        assert p.tail_estimate == pytest.approx(corner, rel=1e-12)
        assert q.tail_estimate == p.tail_estimate
        assert p.outer_terms == 50 and p.inner_terms == 40

    def test_cumulative_last_matches_pair(self):
        p, q = series.nested_alternating_pair(0.5, 3.0, 0.9, 30, 25)
        p_cum, q_cum = series.nested_cumulative(0.5, 3.0, 0.9, 30, 25)
        assert p_cum[-1] == p.value
        assert q_cum[-1] == q.value
        assert p_cum.shape == (30,)

    def test_golden_spot(self):
        p, q = series.nested_alternating_pair(math.pi / 4, 2 * math.pi,
                                              0.75, 400, 400)
        assert p.value == pytest.approx(
            golden("series_spots", "nested_p_s0p75_n400_k400"), abs=1e-9)
        assert q.value == pytest.approx(
            golden("series_spots", "nested_q_s0p75_n400_k400"), abs=1e-9)

    def test_rejects_outer_decay_at_half(self):
        with pytest.raises(DomainError):
            series.nested_alternating_pair(0.0, 1.0, 0.5, 10, 10)


class TestExpansion:
    def test_family_layout(self):
        fams = series.error_term_expansion_families(10.5, 2, 50, 50)
        assert [f["kind"] for f in fams] == ["cos"] * 3 + ["sin"] * 3
        assert [f["order"] for f in fams] == [0.75, 1.75, 2.75, 1.25, 2.25, 3.25]
        for f in fams:
            assert f["term"] == f["coefficient"] * f["series"]

    def test_leading_coefficient_values(self):
        fams = series.error_term_expansion_families(16.0, 1, 5, 5)
        by = {(f["kind"], f["order"]): f["coefficient"] for f in fams}
        # c1 values 1, 3/4, -15/32, 105/128 drive the four leading weights
        assert by[("cos", 0.75)] == pytest.approx(16.0 ** 0.25 / math.pi, rel=1e-14)
        assert by[("cos", 1.75)] == pytest.approx(
            (15.0 / 32.0) / (16.0 * math.pi ** 3 * 16.0 ** 0.75), rel=1e-14)
        assert by[("sin", 1.25)] == pytest.approx(
            -(3.0 / 4.0) / (4.0 * math.pi ** 2 * 16.0 ** 0.25), rel=1e-14)
        assert by[("sin", 2.25)] == pytest.approx(
            (105.0 / 128.0) / (64.0 * math.pi ** 4 * 16.0 ** 1.25), rel=1e-14)

    def test_explicit_form_is_two_pi_rescaling(self):
        # family-by-family the explicit depth-one variant is 2 pi times the
        # compact one, except the deepest sine family which also flips sign
        x = 10.5
        compact = series.error_term_expansion_families(x, 1, 300, 300)
        explicit = series.error_term_first_order(x, 300, 300)["families"]
        by = {(f["kind"], f["order"]): f["term"] for f in compact}
        two_pi = 2 * math.pi
        assert explicit["cos_3_4"] == pytest.approx(
            two_pi * by[("cos", 0.75)], rel=1e-9)
        assert explicit["sin_5_4"] == pytest.approx(
            two_pi * by[("sin", 1.25)], rel=1e-9)
        assert explicit["cos_7_4"] == pytest.approx(
            two_pi * by[("cos", 1.75)], rel=1e-9)
        assert explicit["sin_9_4"] == pytest.approx(
            -two_pi * by[("sin", 2.25)], rel=1e-9)

    def test_total_is_family_sum(self):
        x = 4.5
        ev = series.error_term_expansion(x, 1, 80, 80)
        fams = series.error_term_expansion_families(x, 1, 80, 80)
        assert ev.value == pytest.approx(sum(f["term"] for f in fams), rel=1e-13)
        assert ev.tail_estimate == pytest.approx(
            (15.0 / 32.0) / 4.0 * x ** -1.5, rel=1e-12)

    def test_scaled_expansions_track_lattice_error(self):
        # loose regression only: the normalization question itself is
        # reported through the claims table, not asserted
        x = 10.5
        delta = arith.sum_r2(x).delta
        compact = series.error_term_expansion(x, 1, 2000, 2000).value
        explicit = series.error_term_first_order(x, 2000, 2000)["value"]
        assert 4.0 * compact == pytest.approx(delta, abs=0.05)
        assert (2.0 / math.pi) * explicit == pytest.approx(delta, abs=0.05)

    def test_domain_checks(self):
        with pytest.raises(DomainError):
            series.error_term_expansion(0.5, 1, 10, 10)  # x below 1
        with pytest.raises(DomainError):
            series.error_term_expansion(2.0, 11, 10, 10)  # depth out of range
        with pytest.raises(DomainError):
            series.error_term_first_order(2.0, 0, 10)


class TestVoronoi:
    def test_rejects_integer_x(self):
        with pytest.raises(DomainError):
            series.voronoi_partial(7.0, 100)

    def test_small_table_rejected(self):
        table = arith.r2_sieve(50)
        with pytest.raises(DomainError):
            series.voronoi_partial(2.5, 100, table=table)

    def test_cumulative_endpoint_matches_partial(self):
        table = arith.r2_sieve(2000)
        ev = series.voronoi_partial(10.5, 2000, table=table)
        cum = series.voronoi_cumulative(10.5, 2000, table=table)
        assert cum[-1] == pytest.approx(ev.value, rel=1e-15)

    def test_windowed_residual_golden(self):
        table = arith.r2_sieve(10 ** 5)
        for x, tag in ((10.5, "x10p5"), (100.5, "x100p5")):
            count = arith.sum_r2(x).count
            cum = series.voronoi_cumulative(x, 10 ** 5, table=table)
            window = cum[-10 ** 4 :]
            raw = float(cum[-1]) - count
            windowed = float(np.mean(window)) - count
            assert raw == pytest.approx(
                golden("series_spots", f"voronoi_raw_residual_{tag}_n1e5"),
                abs=1e-6)
            assert windowed == pytest.approx(
                golden("series_spots", f"voronoi_window_residual_{tag}_n1e5"),
                abs=1e-6)
            # the windowed reading is an order closer than the raw tail
            assert abs(windowed) < abs(raw)

    def test_partial_approaches_count(self):
        # modest depth, loose band: the series oscillates around the count
        count = arith.sum_r2(10.5).count
        ev = series.voronoi_partial(10.5, 10 ** 4)
        assert ev.value == pytest.approx(count, abs=0.2)


class TestPhaseKernels:
    def test_cumsum_matches_loop(self):
        x, m, p = 3.7, 200, 0.6
        cum = series.phase_cosine_cumsum(x, m, p)
        acc = 0.0
        for n in range(1, m + 1):
            acc += math.cos(2 * math.pi * math.sqrt(n * x) + math.pi / 4) / n ** p
            assert cum[n - 1] == pytest.approx(acc, rel=1e-12, abs=1e-12)

    def test_cumsum_prefix_stability(self):
        a = series.phase_cosine_cumsum(5.5, 300, 0.75)
        b = series.phase_cosine_cumsum(5.5, 120, 0.75)
        assert np.array_equal(a[:120], b)

    def test_shifted_zero_is_base_exponent(self):
        assert series.shifted_cosine_sum(0.0, 2.0, 500) == \
            series.phase_cosine_sum(2.0, 500, 0.75)

    def test_shifted_matches_damped(self):
        val = series.shifted_cosine_sum(0.125, 2.0, 400)
        ev = series.damped_cosine_sum(2.0, 400, 0.125)
        assert val == ev.value

    def test_log_weighted_is_shift_derivative(self):
        # central difference of the shifted sum in the shift variable
        x, m, h0, e = 2.0, 2000, 0.1, 1e-6
        up = series.shifted_cosine_sum(h0 + e, x, m)
        dn = series.shifted_cosine_sum(h0 - e, x, m)
        fd = (up - dn) / (2 * e)
        exact = series.log_weighted_cosine_sum(x, m, shift=h0)
        assert fd == pytest.approx(exact, rel=1e-6, abs=1e-8)

    def test_r2_weighted_golden_and_delta_relation(self):
        table = arith.r2_sieve(10 ** 5)
        ev = series.r2_cosine_sum(10.5, 10 ** 5, table=table)
        assert ev.value == pytest.approx(
            golden("series_spots", "r2_cosine_x10p5_m1e5"), abs=1e-6)
        # -x^(1/4) S / pi tracks the lattice error (loose band)
        delta = arith.sum_r2(10.5).delta
        assert -(10.5 ** 0.25) * ev.value / math.pi == pytest.approx(
            delta, abs=0.05)

    def test_damped_golden_spot(self):
        ev = series.damped_cosine_sum(2.0, 10 ** 6, 0.125)
        assert ev.value == pytest.approx(
            golden("series_spots", "damped_x2_delta0p125_m1e6"), abs=1e-6)
        assert ev.tail_estimate == pytest.approx(1e6 ** -0.625, rel=1e-12)

    def test_exponent_windows_enforced(self):
        for bad in (0.0, 0.25, -0.1, 0.3):
            with pytest.raises(DomainError):
                series.damped_cosine_sum(1.0, 10, bad)
        for bad in (-0.01, 0.25, 0.4):
            with pytest.raises(DomainError):
                series.shifted_cosine_sum(bad, 1.0, 10)
            with pytest.raises(DomainError):
                series.log_weighted_cosine_sum(1.0, 10, shift=bad)

    def test_nonpositive_x_rejected(self):
        with pytest.raises(DomainError):
            series.phase_cosine_sum(0.0, 10, 0.75)
        with pytest.raises(DomainError):
            series.r2_cosine_sum(-2.0, 10)


class TestSeriesEval:
    def test_non_finite_raises(self):
        with pytest.raises(KernelError):
            series.SeriesEval(value=math.nan, outer_terms=5)
        with pytest.raises(KernelError):
            series.SeriesEval(value=math.inf, outer_terms=5)

    def test_depth_must_be_positive(self):
        with pytest.raises(DomainError):
            series.SeriesEval(value=1.0, outer_terms=0)
