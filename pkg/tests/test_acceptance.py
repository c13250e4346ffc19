"""Acceptance gate: one test and one printed pass/fail line per criterion.

Each test prints its verdict line before asserting, so the summary
survives failures.  Tolerances are pinned inline; frozen reference
values come from the packaged goldens (see circlelab.goldens).

The resummation-identity criterion is evaluated through the windowed
(Cesaro) residual: the raw truncated tail at 1e5 terms oscillates at the
few-percent level by the nature of the series, and the windowed reading
is the defined diagnostic for it.  The raw residual is printed next to
the windowed one.
"""

import math
import pathlib
import time
from fractions import Fraction

import mpmath as mp
import numpy as np

from circlelab import analysis, arith, closedforms, fresnel, series
from circlelab.bessel import bessel_j1_asymptotic, hankel_coefficient
from circlelab.goldens import golden
from circlelab.summation import (
    CosinePhaseOverPower,
    CosinePowerIntegrand,
    abel_summation,
    euler_maclaurin,
)


def report(name: str, ok: bool, detail: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    assert ok, f"{name}: {detail}"


def test_criterion_01_r2_oracle_equivalence():
    start = time.time()
    mismatch = None
    for n in range(1, 10 ** 5 + 1):
        a = arith.r2_enumerate(n)
        if a != arith.r2_divisor(n) or a != arith.r2_residue(n):
            mismatch = n
            break
    elapsed = time.time() - start
    ok = mismatch is None and elapsed < 60.0
    report("criterion-01 r2 oracle equivalence", ok,
           f"enumerate/divisor/residue exact on 1..1e5, {elapsed:.1f}s "
           f"(limit 60s)" if mismatch is None
           else f"first mismatch at n={mismatch}")


def test_criterion_02_summatory_three_way():
    bad = []
    for exp in range(1, 8):
        x = 10 ** exp
        counts = {m: arith.sum_r2(x, method=m).count
                  for m in ("enumerate", "sieve", "floor_identity")}
        if len(set(counts.values())) != 1:
            bad.append((x, counts))
    big = 10 ** 9
    fi = arith.count_floor_identity(big)
    en = arith.count_enumerate(big)
    ok = not bad and fi == en
    report("criterion-02 summatory three-way agreement", ok,
           f"identical counts at 10^1..10^7; floor identity vs column "
           f"enumeration at 1e9: {fi} == {en}" if ok
           else f"disagreements: {bad}, 1e9: {fi} vs {en}")


def test_criterion_03_gauss_mean_value():
    dev = {x: abs(arith.sum_r2(x).count / x - math.pi)
           for x in (10 ** 2, 10 ** 4, 10 ** 6)}
    envelope_ok = all(dev[x] <= 8.0 / math.sqrt(x) for x in (10 ** 4, 10 ** 6))
    decreasing = dev[10 ** 2] > dev[10 ** 4] > dev[10 ** 6]
    ok = envelope_ok and decreasing
    report("criterion-03 Gauss mean value", ok,
           "|count/x - pi| = " + ", ".join(f"{v:.3e}" for v in dev.values())
           + " (envelope 8/sqrt(x), strictly decreasing)")


def test_criterion_04_resummation_identity_windowed():
    table = arith.r2_sieve(10 ** 5)
    details = []
    ok = True
    for x in (10.5, 100.5):
        count = arith.sum_r2(x).count
        cum = series.voronoi_cumulative(x, 10 ** 5, table=table)
        win_hi = float(np.mean(cum[-10 ** 4 :])) - count
        win_lo = float(np.mean(cum[900:1000])) - count
        raw = float(cum[-1]) - count
        ok = ok and abs(win_hi) <= 1e-2 and abs(win_hi) < abs(win_lo)
        details.append(f"x={x}: windowed {win_hi:+.2e} (raw tail {raw:+.2e}, "
                       f"1e3-term window {win_lo:+.2e})")
    report("criterion-04 resummation identity at desk scale", ok,
           "; ".join(details) + "; windowed residual <= 1e-2 and shrinking")


def _j1_power_series_mp(z: float) -> float:
    # Direct power-series summation in extended precision (the alternating
    # terms peak near exp(z), so the working precision scales with z).
    guard = int(0.9 * z) + 40
    with mp.workdps(guard):
        half = mp.mpf(z) / 2
        term = half
        total = term
        k = 1
        while abs(term) > mp.mpf(10) ** (-40) * max(1, abs(total)) or k < 5:
            term *= -half * half / (k * (k + 1))
            total += term
            k += 1
            if k > 10 ** 5:
                raise RuntimeError("series did not settle")
        return float(total)


def test_criterion_05_bessel_kernel():
    worst = 0.0
    for z in (20.0, 50.0, 100.0, 1e3, 1e5):
        if z <= 100.0:
            reference = _j1_power_series_mp(z)
        else:
            # the power series is exact but needs O(z) decimal digits; past
            # z = 100 the reference switches to an arbitrary-precision kernel
            with mp.workdps(50):
                reference = float(mp.besselj(1, z))
        got = bessel_j1_asymptotic(z, 5).value
        worst = max(worst, abs(got - reference))
    c1_ok = True
    for m, want in ((0, Fraction(1)), (1, Fraction(3, 4)),
                    (2, Fraction(-15, 32))):
        poch = Fraction(1)
        for i in range(m):
            poch *= (Fraction(-1, 2) + i) * (Fraction(3, 2) + i)
        frac = (-1) ** m * poch / math.factorial(m)
        c1_ok = c1_ok and frac == want
        c1_ok = c1_ok and abs(hankel_coefficient(m) - float(want)) \
            <= 1e-14 * abs(float(want))
    ok = worst <= 1e-10 and c1_ok
    report("criterion-05 Bessel kernel", ok,
           f"five-term asymptotic vs high-precision series: worst "
           f"{worst:.2e} (<= 1e-10); c1 trio matches Pochhammer to 1e-14")


def test_criterion_06_fresnel_limits():
    c, s = fresnel.fresnel(1e4)
    ok = abs(c - 0.5) <= 1e-4 and abs(s - 0.5) <= 1e-4
    report("criterion-06 Fresnel limits", ok,
           f"|C(1e4) - 1/2| = {abs(c - 0.5):.2e}, "
           f"|S(1e4) - 1/2| = {abs(s - 0.5):.2e} (<= 1e-4)")


def test_criterion_07_abel_exactness():
    worst = 0.0
    for a in (1.0, 2.0, 7.3):
        for m in (10 ** 3, 10 ** 6):
            lam = np.sqrt(np.arange(1, m + 1, dtype=float))
            coeffs = np.ones(m)
            fn = CosinePhaseOverPower(scale=2.0 * math.pi * math.sqrt(a),
                                      power=1.5)
            got = abel_summation(coeffs, lam, fn, math.sqrt(float(m)))
            direct = math.fsum(fn.value(lam))
            rel = abs(got - direct) / max(1e-30, abs(direct))
            worst = max(worst, rel)
    ok = worst <= 1e-10
    report("criterion-07 Abel summation exactness", ok,
           f"worst relative gap vs direct summation {worst:.2e} (<= 1e-10) "
           f"over a in {{1, 2, 7.3}}, M in {{1e3, 1e6}}")


def test_criterion_08_euler_maclaurin_bound():
    gaps = []
    ok = True
    for x in (1.0, 2.0):
        for delta in (0.125, 0.2):
            for m in (10 ** 3, 10 ** 5):
                fn = CosinePowerIntegrand(x, delta)
                est = euler_maclaurin(fn, 1, m)
                direct = float(np.sum(fn.value(np.arange(1, m + 2,
                                                         dtype=float))))
                gap = abs(est.value - direct)
                ok = ok and gap <= est.remainder_bound
                gaps.append(gap / est.remainder_bound)
    report("criterion-08 endpoint formula within its own bound", ok,
           f"8 grid points, gap/bound ratios max {max(gaps):.3f} (<= 1)")


def test_criterion_09_closed_form_residual_regression():
    worst = 0.0
    for entry in golden("closed_form_residuals", "fresnel"):
        rep = closedforms.fresnel_closed_form(entry["a"], entry["m_terms"])
        worst = max(worst, abs(rep.residual - entry["residual"]))
    for entry in golden("closed_form_residuals", "expint"):
        rep = closedforms.expint_closed_form(entry["eps"], entry["x"], entry["y"])
        worst = max(worst, abs(rep.residual - entry["residual"]))
    for entry in golden("closed_form_residuals", "sqrt"):
        rep = closedforms.sqrt_closed_form(entry["x"], entry["m_terms"])
        worst = max(worst, abs(rep.residual - entry["residual"]))
    cross = max(abs(g - e) for g, e in
                (closedforms.sqrt_closed_form_x2_variant(m)
                 for m in (10, 1000, 10 ** 5)))
    ok = worst <= 1e-8 and cross <= 1e-8
    report("criterion-09 closed-form residual regression", ok,
           f"goldens reproduced to {worst:.2e} (<= 1e-8); x=2 scaled-form "
           f"cross-check {cross:.2e} (<= 1e-8)")


def test_criterion_10_boundedness_probes():
    probe = analysis.phase_bound_probe()
    damped = analysis.damped_bound_probe()
    gold = golden("damped_sup")
    drift = abs(damped["overall"]["value"] - gold["value"])
    ok = (probe["value"] <= 3.0 and math.isfinite(damped["overall"]["value"])
          and drift <= 1e-8)
    report("criterion-10 boundedness probes", ok,
           f"exponent-3/4 sup {probe['value']:.4f} (<= 3.0, at a="
           f"{probe['a']}, M={probe['m']}); damped sup "
           f"{damped['overall']['value']:.4f} matches golden to {drift:.1e}")


def test_criterion_11_running_max_reproducibility():
    tables = {w: analysis.dyadic_running_max(10 ** 6, workers=w)
              for w in (1, 4, 8)}
    identical = tables[1] == tables[4] == tables[8]
    matches = tables[1] == golden("running_max_dyadic")
    rerun = analysis.dyadic_running_max(10 ** 6, workers=4)
    stable = rerun == tables[4]
    claims = analysis.claims_report(workers=4)
    growth = next(c for c in claims["claims"] if c["id"] == "error-term-growth")
    in_report = growth["value"]["matches_goldens"] is True \
        and growth["verdict"] == "out-of-reach"
    ok = identical and matches and stable and in_report
    last = tables[1][-1]
    report("criterion-11 running-max table reproducibility", ok,
           f"dyadic table to 1e6 bit-identical for workers {{1,4,8}} and "
           f"across runs, equal to frozen goldens; top block max "
           f"{last['max_normalized']:.4f} at x={last['argmax_x']}; "
           f"asymptotic claims carried as data (verdict out-of-reach)")


def test_criterion_12_secondary_runs_apart():
    # Hygiene from the primary side: nothing in the core package may import
    # or mention the plots component; its build and tests live under plots/
    # and consume only the emitted CSV/JSON files.
    root = pathlib.Path(arith.__file__).parent
    offenders = [p.name for p in sorted(root.glob("*.py"))
                 if "plots" in p.read_text()]
    ok = not offenders
    report("criterion-12 primary package independent of plots component", ok,
           "no core module references the plots component"
           if ok else f"references found in {offenders}")
