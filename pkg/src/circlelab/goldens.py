"""Frozen reference values for regression checks.

The goldens file pins quantities that are measured, not derived: dyadic
running maxima of the normalized lattice error, closed-form residuals,
boundedness probe sups, and a few series spot values.  Tests compare
fresh computations against these to catch drift; the claims report
additionally requires the running-max table to match exactly.

Values are written with shortest round-trip float formatting, so reading
them back reproduces the stored doubles bit for bit.  Regeneration is
deliberate only: call regenerate(write=True) or run
`python -m circlelab.goldens --write`.
"""

from __future__ import annotations

import argparse
import json
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .errors import DomainError

_DATA = "data/goldens.json"

FRESNEL_RESIDUAL_GRID = (
    (2.0, 1), (2.0, 100), (2.0, 10 ** 4), (7.3, 10 ** 3), (1.0, 10 ** 4),
    (0.5, 500), (100.0, 10 ** 4),
)
EXPINT_RESIDUAL_GRID = (
    (1.0, 1.0, 1.0), (1.0, 1.0, 10.0), (1.0, 1.0, 1000.0),
    (0.5, 2.0, 10.0), (2.0, 4.0, 20.0),
)
SQRT_RESIDUAL_GRID = (
    (2.0, 100), (2.0, 10 ** 4), (3.5, 10 ** 4), (1.0, 997),
)


@lru_cache(maxsize=1)
def load_goldens() -> dict:
    ref = resources.files("circlelab").joinpath(_DATA)
    try:
        text = ref.read_text()
    except FileNotFoundError as exc:
        raise DomainError("goldens file missing; run "
                          "`python -m circlelab.goldens --write`") from exc
    return json.loads(text)


def golden(*keys):
    """Walk the goldens dict: golden('series_spots', 'r2_cosine_x10p5_m1e5')."""
    node = load_goldens()
    for key in keys:
        node = node[key]
    return node


def _compute(workers: int = 1) -> dict:
    from . import analysis, arith, closedforms, series

    running_max = analysis.dyadic_running_max(10 ** 6, workers=workers)

    residuals = {
        "fresnel": [
            {"a": a, "m_terms": m,
             "residual": closedforms.fresnel_closed_form(a, m).residual}
            for a, m in FRESNEL_RESIDUAL_GRID],
        "expint": [
            {"eps": e, "x": x, "y": y,
             "residual": closedforms.expint_closed_form(e, x, y).residual}
            for e, x, y in EXPINT_RESIDUAL_GRID],
        "sqrt": [
            {"x": x, "m_terms": m,
             "residual": closedforms.sqrt_closed_form(x, m).residual}
            for x, m in SQRT_RESIDUAL_GRID],
    }

    spots = {}
    spots["r2_cosine_x10p5_m1e5"] = series.r2_cosine_sum(10.5, 10 ** 5).value
    spots["damped_x2_delta0p125_m1e6"] = series.damped_cosine_sum(
        2.0, 10 ** 6, 0.125).value
    for x, tag in ((10.5, "x10p5"), (100.5, "x100p5")):
        rep = analysis.convergence_report("voronoi", {"x": x}, [10 ** 3, 10 ** 5])
        for row in rep["rows"]:
            if row["terms"] == 10 ** 5:
                spots[f"voronoi_raw_residual_{tag}_n1e5"] = row["residual"]
                spots[f"voronoi_window_residual_{tag}_n1e5"] = row["window_residual"]
    p, q = series.nested_alternating_pair(0.25 * 3.141592653589793,
                                          6.283185307179586, 0.75, 400, 400)
    spots["nested_p_s0p75_n400_k400"] = p.value
    spots["nested_q_s0p75_n400_k400"] = q.value

    damped = analysis.damped_bound_probe()
    return {
        "schema": 1,
        "running_max_dyadic": running_max,
        "closed_form_residuals": residuals,
        "phase_bound_probe": analysis.phase_bound_probe(),
        "damped_sup": {**damped["overall"], "cells": damped["cells"]},
        "r2_growth": analysis.r2_growth_statistic(10 ** 6),
        "series_spots": spots,
        "delta_normalized_1e6": arith.delta_normalized(10 ** 6),
    }


def regenerate(write: bool = False, path: str | None = None,
               workers: int = 1) -> dict:
    """Recompute all goldens; write only when asked to, loudly."""
    data = _compute(workers=workers)
    if write:
        if path is None:
            path = Path(__file__).parent / _DATA
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(json.dumps(data, indent=1) + "\n")
        load_goldens.cache_clear()
    return data


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="python -m circlelab.goldens",
        description="regenerate the frozen reference values")
    parser.add_argument("--write", action="store_true",
                        help="overwrite the packaged goldens file")
    parser.add_argument("--out", default=None, help="alternative output path")
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args(argv)
    if not args.write:
        parser.error("refusing to run without --write (this clobbers "
                     "regression baselines)")
    data = regenerate(write=True, path=args.out, workers=args.workers)
    print(f"wrote {len(json.dumps(data))} bytes of goldens")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
