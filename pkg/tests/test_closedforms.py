"""Closed-form comparisons: frozen residuals and structural identities.

The equality claims behind these forms do not hold numerically: each
carries an O(1) offset that settles to a constant as the cut grows.  The
offsets are frozen as goldens; the structural content (trivial-cut
collapse, the x = 2 scaled variant, the half-eps route reproducing the
Fresnel route) is asserted tightly.
"""

import math

import pytest

from circlelab import closedforms
from circlelab.closedforms import (
    ClosedFormReport,
    _real_part_checked,
    cosine_sum_limit,
    expint_closed_form,
    fresnel_closed_form,
    sqrt_closed_form,
    sqrt_closed_form_x2_variant,
)
from circlelab.errors import DomainError, KernelError
from circlelab.goldens import (
    EXPINT_RESIDUAL_GRID,
    FRESNEL_RESIDUAL_GRID,
    SQRT_RESIDUAL_GRID,
    golden,
)


class TestGoldenResiduals:
    def test_fresnel_grid(self):
        for entry in golden("closed_form_residuals", "fresnel"):
            rep = fresnel_closed_form(entry["a"], entry["m_terms"])
            assert rep.residual == pytest.approx(entry["residual"], abs=1e-8)

    def test_expint_grid(self):
        for entry in golden("closed_form_residuals", "expint"):
            rep = expint_closed_form(entry["eps"], entry["x"], entry["y"])
            assert rep.residual == pytest.approx(entry["residual"], abs=1e-8)

    def test_sqrt_grid(self):
        for entry in golden("closed_form_residuals", "sqrt"):
            rep = sqrt_closed_form(entry["x"], entry["m_terms"])
            assert rep.residual == pytest.approx(entry["residual"], abs=1e-8)

    def test_grids_cover_goldens(self):
        assert len(golden("closed_form_residuals", "fresnel")) == \
            len(FRESNEL_RESIDUAL_GRID)
        assert len(golden("closed_form_residuals", "expint")) == \
            len(EXPINT_RESIDUAL_GRID)
        assert len(golden("closed_form_residuals", "sqrt")) == \
            len(SQRT_RESIDUAL_GRID)


class TestTrivialCuts:
    def test_sqrt_single_term_collapses_exactly(self):
        # at M = 1 the two sine terms are the same float and cancel
        for x in (1.0, 2.0, 7.3, 100.0):
            assert sqrt_closed_form(x, 1).residual == 0.0

    def test_fresnel_single_term(self):
        for a in (1.0, 2.0, 7.3):
            assert abs(fresnel_closed_form(a, 1).residual) <= 1e-12

    def test_expint_unit_cut(self):
        # y = 1 makes the four E-terms cancel pairwise, leaving the lhs term
        for eps in (0.5, 1.0, 2.0):
            assert abs(expint_closed_form(eps, 1.0, 1.0).residual) <= 1e-13


class TestResidualStructure:
    def test_residual_settles_with_cut(self):
        # the offset is a constant of the pair (x, form), not a drift in M
        f_lo = fresnel_closed_form(2.0, 100).residual
        f_hi = fresnel_closed_form(2.0, 10 ** 4).residual
        assert abs(f_hi - f_lo) <= 0.05
        s_lo = sqrt_closed_form(2.0, 100).residual
        s_hi = sqrt_closed_form(2.0, 10 ** 4).residual
        assert abs(s_hi - s_lo) <= 0.05
        e_lo = expint_closed_form(0.5, 2.0, 10.0).residual
        e_hi = expint_closed_form(0.5, 2.0, 31.62).residual
        assert abs(e_hi - e_lo) <= 0.05

    def test_half_power_lhs_oscillates_without_converging(self):
        marks = [sqrt_closed_form(2.0, 2 ** k).lhs for k in range(1, 17)]
        assert max(marks) - min(marks) >= 0.2
        assert max(abs(v) for v in marks) <= 5.0


class TestX2Variant:
    def test_scaled_and_explicit_agree(self):
        for m in (10, 100, 1000, 31623, 10 ** 5):
            general, explicit = sqrt_closed_form_x2_variant(m)
            assert abs(general - explicit) <= 1e-8

    def test_tracks_scaled_general_form(self):
        general, _ = sqrt_closed_form_x2_variant(500)
        assert general == pytest.approx(
            2 * math.pi * sqrt_closed_form(2.0, 500).rhs, rel=1e-14)


class TestHalfEpsIsFresnelRoute:
    def test_both_sides_coincide(self):
        # eps = 1/2 turns the exponential-integral form into the Fresnel one:
        # same sum on the left, same value on the right, via different
        # special-function kernels
        for a, y in ((2.0, 10.0), (1.0, 100.0), (7.3, 20.0)):
            m = int(y * y)
            f = fresnel_closed_form(a, m)
            e = expint_closed_form(0.5, a, y)
            assert e.lhs == f.lhs  # literally the same truncated sum
            assert e.rhs == pytest.approx(f.rhs, abs=1e-9)


class TestLimitForm:
    def test_limit_is_large_cut_value(self):
        cases = [(2.0, 1.0, 1e-6), (1.0, 1.0, 1e-3), (0.5, 2.0, 1e-2)]
        for eps, x, tol in cases:
            limit = cosine_sum_limit(eps, x)
            at_cut = expint_closed_form(eps, x, 2000.0).rhs
            assert abs(limit - at_cut) <= tol

    def test_bounded_over_grid(self):
        worst = max(abs(cosine_sum_limit(e, x))
                    for e in (0.5, 1.0, 2.0)
                    for x in (1.0, 2.0, 10.0, 50.0, 100.0))
        assert worst <= 5.0


class TestGuards:
    def test_report_rejects_non_finite(self):
        with pytest.raises(KernelError):
            ClosedFormReport(params={}, lhs=math.nan, rhs=0.0)

    def test_imaginary_leak_raises(self):
        with pytest.raises(KernelError):
            _real_part_checked(complex(1.0, 0.5), "test")
        assert _real_part_checked(complex(2.0, 1e-12), "test") == 2.0

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            fresnel_closed_form(0.0, 10)
        with pytest.raises(DomainError):
            fresnel_closed_form(1.0, 0)
        with pytest.raises(DomainError):
            expint_closed_form(0.0, 1.0, 10.0)
        with pytest.raises(DomainError):
            expint_closed_form(1.0, 0.5, 10.0)
        with pytest.raises(DomainError):
            expint_closed_form(1.0, 1.0, 0.5)
        with pytest.raises(DomainError):
            sqrt_closed_form(-1.0, 10)
        with pytest.raises(DomainError):
            sqrt_closed_form_x2_variant(0)
        with pytest.raises(DomainError):
            cosine_sum_limit(1.0, 0.9)

    def test_params_recorded(self):
        rep = expint_closed_form(1.0, 2.0, 10.0)
        assert rep.params == {"eps": 1.0, "x": 2.0, "y": 10.0, "m_terms": 100}
        assert rep.residual == rep.lhs - rep.rhs
