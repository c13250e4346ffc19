"""Command-line surface.

Subcommands mirror the library: r2, sum, delta, voronoi, series
{s,d,g,m,p}, closed-form {fresnel,expint,sqrt}, sweep, report
{claims,convergence}, verify.  Output formats are table (default), csv
and json; --out redirects to a file.  A JSON config file may predefine
any option (keys are the flag names with dashes as underscores);
explicit flags win over the file.

Exit codes: 0 success, 1 domain or numeric-kernel error, 2 resource
limit, 64 usage error.

Set CIRCLELAB_CACHE_DIR to cache sieved r2 tables as .npy files; the
limit is part of the file name, so a mismatched cache is never loaded.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__, analysis, arith, closedforms, series
from . import io as cio
from .analysis import SweepConfig
from .errors import DomainError, KernelError, ResourceLimitError

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_RESOURCE = 2
EXIT_USAGE = 64

_FORMATS = ("table", "csv", "json")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _cached_sieve(limit: int) -> arith.R2Table:
    root = os.environ.get("CIRCLELAB_CACHE_DIR")
    if not root:
        return arith.r2_sieve(limit)
    path = Path(root) / f"r2_{limit}.npy"
    if path.exists():
        values = np.load(path)
        if values.shape == (limit + 1,) and values.dtype == np.int64:
            return arith.R2Table(limit=limit, values=values)
    table = arith.r2_sieve(limit)
    path.parent.mkdir(parents=True, exist_ok=True)
    np.save(path, np.asarray(table.values))
    return table


class _Options:
    """Post-parse option resolution: flag, then config file, then default."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.config = {}
        if getattr(args, "config", None):
            try:
                self.config = json.loads(Path(args.config).read_text())
            except FileNotFoundError:
                raise DomainError(f"config file not found: {args.config}")
            except json.JSONDecodeError as exc:
                raise DomainError(f"config file is not valid JSON: {exc}")
            if not isinstance(self.config, dict):
                raise DomainError("config file must hold a JSON object")

    def get(self, name, default=None):
        value = getattr(self.args, name, None)
        if value is None:
            value = self.config.get(name, default)
        return value


def _fmt(value: float, precision: int) -> str:
    return cio.format_float(value, precision)


def _record_rows(records):
    return [{"x": r.x, "count": r.count, "pi_x": r.pi_x, "delta": r.delta,
             "normalized": r.normalized} for r in records]


def _emit(result: dict, opts: _Options, command: str, params: dict) -> None:
    fmt = opts.get("format", "table")
    if fmt not in _FORMATS:
        raise DomainError(f"unknown format {fmt!r}; expected one of {_FORMATS}")
    precision = opts.get("precision", cio.DEFAULT_PRECISION)
    out = opts.get("out")
    if fmt == "json":
        doc = cio.make_document(result["payload"], command, params)
        if out:
            cio.write_json(doc, out, precision)
        else:
            cio.write_json(doc, sys.stdout, precision)
        return
    if fmt == "csv":
        records = result.get("records")
        rows = result.get("rows")
        if records is not None:
            cio.write_records_csv(records, out or sys.stdout, precision)
        elif rows:
            cio.write_rows_csv(rows, out or sys.stdout, precision)
        else:
            cio.write_rows_csv([result["payload"]], out or sys.stdout, precision)
        return
    text = result["table"]
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


# -- handlers ---------------------------------------------------------------

def _cmd_r2(args, opts):
    n = args.n
    by_enum = arith.r2_enumerate(n)
    by_div = arith.r2_divisor(n)
    by_res = arith.r2_residue(n)
    agree = by_enum == by_div == by_res
    payload = {"n": n, "enumerate": by_enum, "divisor": by_div,
               "residue": by_res, "agree": agree}
    table = f"{by_enum} {by_div} {by_res} agree={'true' if agree else 'false'}"
    return {"payload": payload, "rows": [payload], "table": table}, {"n": n}


def _cmd_sum(args, opts):
    method = opts.get("method", "floor_identity")
    rec = arith.sum_r2(args.x, method=method)
    p = opts.get("precision", cio.DEFAULT_PRECISION)
    table = (f"x={_fmt(rec.x, p)} count={rec.count} pi_x={_fmt(rec.pi_x, p)} "
             f"delta={_fmt(rec.delta, p)} normalized={_fmt(rec.normalized, p)}")
    return ({"payload": {"rows": _record_rows([rec]), "method": method},
             "records": [rec], "table": table},
            {"x": args.x, "method": method})


def _cmd_delta(args, opts):
    rec = arith.sum_r2(args.x)
    p = opts.get("precision", cio.DEFAULT_PRECISION)
    table = (f"delta={_fmt(rec.delta, p)} "
             f"normalized={_fmt(rec.normalized, p)}")
    return ({"payload": {"rows": _record_rows([rec])}, "records": [rec],
             "table": table}, {"x": args.x})


def _cmd_voronoi(args, opts):
    terms = opts.get("terms", 1000)
    x = args.x
    table_r2 = _cached_sieve(terms)
    cum = series.voronoi_cumulative(x, terms, table=table_r2)
    value = float(cum[-1])
    window = max(10, terms // 10)
    window_mean = float(np.mean(cum[-window:]))
    exact = arith.sum_r2(x).count
    payload = {
        "x": x, "terms": terms, "value": value, "window_mean": window_mean,
        "window": window, "exact_count": exact,
        "residual": value - exact, "window_residual": window_mean - exact,
    }
    p = opts.get("precision", cio.DEFAULT_PRECISION)
    table = "\n".join([
        f"value={_fmt(value, p)} (terms={terms})",
        f"window_mean={_fmt(window_mean, p)} (trailing {window})",
        f"exact_count={exact}",
        f"residual={_fmt(payload['residual'], p)} "
        f"window_residual={_fmt(payload['window_residual'], p)}",
    ])
    return ({"payload": payload, "rows": [payload], "table": table},
            {"x": x, "terms": terms})


def _cmd_series(args, opts):
    family = args.family
    p = opts.get("precision", cio.DEFAULT_PRECISION)
    if family == "s":
        terms = opts.get("terms", 1000)
        ev = series.r2_cosine_sum(args.x, terms, table=_cached_sieve(terms))
        payload = {"family": "s", "x": args.x, "terms": terms,
                   "value": ev.value, "tail_estimate": ev.tail_estimate}
        params = {"x": args.x, "terms": terms}
    elif family == "d":
        terms = opts.get("terms", 1000)
        delta = opts.get("delta", 0.125)
        ev = series.damped_cosine_sum(args.x, terms, delta)
        payload = {"family": "d", "x": args.x, "delta": delta, "terms": terms,
                   "value": ev.value, "tail_estimate": ev.tail_estimate}
        params = {"x": args.x, "delta": delta, "terms": terms}
    elif family == "g":
        terms = opts.get("terms", 1000)
        shift = opts.get("shift", 0.0)
        if args.derivative:
            value = series.log_weighted_cosine_sum(args.x, terms, shift=shift)
        else:
            value = series.shifted_cosine_sum(shift, args.x, terms)
        payload = {"family": "g", "x": args.x, "shift": shift, "terms": terms,
                   "derivative": bool(args.derivative), "value": value}
        params = {"x": args.x, "shift": shift, "terms": terms,
                  "derivative": bool(args.derivative)}
    elif family == "m":
        terms = opts.get("terms", 1000)
        a = opts.get("a", 0.0)
        b = opts.get("b", 0.0)
        cos_v, sin_v = series.odd_alternating_pair(a, b, args.s, terms)
        payload = {"family": "m", "a": a, "b": b, "s": args.s, "terms": terms,
                   "cos": cos_v, "sin": sin_v}
        params = {"a": a, "b": b, "s": args.s, "terms": terms}
    else:  # p
        outer = opts.get("outer", 200)
        inner = opts.get("inner", 200)
        a = opts.get("a", 0.0)
        b = opts.get("b", 0.0)
        pv, qv = series.nested_alternating_pair(a, b, args.s, outer, inner)
        payload = {"family": "p", "a": a, "b": b, "s": args.s,
                   "outer": outer, "inner": inner,
                   "cos": pv.value, "sin": qv.value,
                   "tail_estimate": pv.tail_estimate}
        params = {"a": a, "b": b, "s": args.s, "outer": outer, "inner": inner}
    table = " ".join(f"{k}={_fmt(v, p) if isinstance(v, float) else v}"
                     for k, v in payload.items())
    return {"payload": payload, "rows": [payload], "table": table}, params


def _cmd_closed_form(args, opts):
    family = args.family
    p = opts.get("precision", cio.DEFAULT_PRECISION)
    rows = []
    if family == "fresnel":
        cuts = opts.get("m") or [1000]
        for m in cuts:
            rep = closedforms.fresnel_closed_form(args.a, m)
            rows.append({"a": args.a, "m_terms": m, "lhs": rep.lhs,
                         "rhs": rep.rhs, "residual": rep.residual})
        params = {"a": args.a, "m": list(cuts)}
    elif family == "expint":
        cuts = opts.get("y") or [10.0]
        for y in cuts:
            rep = closedforms.expint_closed_form(args.eps, args.x, y)
            rows.append({"eps": args.eps, "x": args.x, "y": y,
                         "m_terms": rep.params["m_terms"], "lhs": rep.lhs,
                         "rhs": rep.rhs, "residual": rep.residual})
        params = {"eps": args.eps, "x": args.x, "y": list(cuts)}
    else:  # sqrt
        cuts = opts.get("m") or [1000]
        for m in cuts:
            rep = closedforms.sqrt_closed_form(args.x, m)
            rows.append({"x": args.x, "m_terms": m, "lhs": rep.lhs,
                         "rhs": rep.rhs, "residual": rep.residual})
        params = {"x": args.x, "m": list(cuts)}
    lines = []
    for row in rows:
        lines.append(" ".join(
            f"{k}={_fmt(v, p) if isinstance(v, float) else v}"
            for k, v in row.items()))
    return ({"payload": {"family": family, "rows": rows}, "rows": rows,
             "table": "\n".join(lines)}, params)


def _cmd_sweep(args, opts):
    sampling = opts.get("sampling", "integers")
    workers = opts.get("workers", 1)
    config = SweepConfig(x_start=args.x_from, x_end=args.x_to,
                         sampling=sampling, step=opts.get("step"),
                         workers=workers)
    records, summary = analysis.sweep_delta(config)
    summary_dict = {
        "n_samples": summary.n_samples,
        "x_start": summary.x_start, "x_end": summary.x_end,
        "sampling": summary.sampling,
        "max_abs_normalized": summary.max_abs_normalized,
        "argmax_x": summary.argmax_x,
        "mean_count_over_x": summary.mean_count_over_x,
        "pre_jump_max_abs_normalized": summary.pre_jump_max_abs_normalized,
        "pre_jump_argmax_x": summary.pre_jump_argmax_x,
    }
    p = opts.get("precision", cio.DEFAULT_PRECISION)
    table = "\n".join(
        f"{k}={_fmt(v, p) if isinstance(v, float) else v}"
        for k, v in summary_dict.items())
    params = {"from": args.x_from, "to": args.x_to, "sampling": sampling,
              "step": opts.get("step"), "workers": workers}
    return ({"payload": {"rows": _record_rows(records),
                         "summary": summary_dict},
             "records": records, "table": table}, params)


def _cmd_report(args, opts):
    p = opts.get("precision", cio.DEFAULT_PRECISION)
    if args.kind == "claims":
        workers = opts.get("workers", 1)
        report = analysis.claims_report(workers=workers)
        rows = [{"id": c["id"], "verdict": c["verdict"],
                 "paper_anchor": c["paper_anchor"]} for c in report["claims"]]
        width = max(len(r["id"]) for r in rows)
        table = "\n".join(f"{r['id']:<{width}}  {r['verdict']:<12} "
                          f"{r['paper_anchor']}" for r in rows)
        return ({"payload": report, "rows": rows, "table": table},
                {"workers": workers})
    # convergence ladder
    target = opts.get("target", "voronoi")
    ladder = [int(v) for v in str(opts.get("ladder", "100,1000,10000")).split(",")]
    params: dict = {"x": opts.get("x", 10.5)}
    if target == "damped_cosine":
        params["delta"] = opts.get("delta", 0.125)
    if target == "nested":
        params = {"a": opts.get("a", math.pi / 4), "b": opts.get("b", 2 * math.pi),
                  "s": opts.get("s", 0.75), "k_terms": opts.get("inner", 256),
                  "member": opts.get("member", "cos")}
    report = analysis.convergence_report(target, params, ladder)
    rows = report["rows"]
    lines = []
    for row in rows:
        lines.append(" ".join(
            f"{k}={_fmt(v, p) if isinstance(v, float) else v}"
            for k, v in row.items()))
    return ({"payload": report, "rows": rows, "table": "\n".join(lines)},
            {"target": target, "ladder": ladder, **params})


def _verify_checks():
    from .goldens import golden

    def r2_triple():
        table = arith.r2_sieve(2000)
        for n in range(0, 2001):
            if not (arith.r2_divisor(n) == arith.r2_residue(n)
                    == int(table[n])):
                return False, f"divisor/residue/sieve disagree at n={n}"
        for n in range(0, 300):
            if arith.r2_enumerate(n) != int(table[n]):
                return False, f"enumeration disagrees at n={n}"
        return True, "r2 routes agree through n=2000"

    def count_methods():
        for x in (10, 100, 1000, 10 ** 4, 123456):
            a = arith.sum_r2(x, method="enumerate").count
            b = arith.sum_r2(x, method="sieve").count
            c = arith.sum_r2(x, method="floor_identity").count
            if not (a == b == c):
                return False, f"count methods disagree at x={x}: {a} {b} {c}"
        return True, "count methods agree on the probe set"

    def record_consistency():
        records, _ = analysis.sweep_delta(SweepConfig(1, 1000))
        for r in records:
            if r.delta != r.count - r.pi_x:
                return False, f"delta identity broken at x={r.x}"
            if abs(r.normalized * r.x ** 0.25 - r.delta) > 1e-12 * max(1.0, abs(r.delta)):
                return False, f"normalization broken at x={r.x}"
        return True, "record identities hold on 1..1000"

    def voronoi_window():
        cum = series.voronoi_cumulative(10.5, 10 ** 4,
                                        table=_cached_sieve(10 ** 4))
        resid = float(np.mean(cum[-10 ** 3 :])) - arith.sum_r2(10.5).count
        if abs(resid) > 0.05:
            return False, f"windowed residual {resid} too large"
        return True, f"windowed residual {resid:.2e} at x=10.5"

    def closed_form_goldens():
        entry = golden("closed_form_residuals", "fresnel")[1]
        rep = closedforms.fresnel_closed_form(entry["a"], entry["m_terms"])
        if abs(rep.residual - entry["residual"]) > 1e-8:
            return False, "fresnel residual drifted from goldens"
        return True, "fresnel residual matches goldens"

    def running_max_prefix():
        table = analysis.dyadic_running_max(1023)
        want = golden("running_max_dyadic")[: len(table)]
        if table != want:
            return False, "dyadic running-max prefix disagrees with goldens"
        return True, "dyadic running-max prefix matches goldens"

    return [("r2-triple", r2_triple),
            ("count-methods", count_methods),
            ("record-consistency", record_consistency),
            ("voronoi-window", voronoi_window),
            ("closed-form-goldens", closed_form_goldens),
            ("running-max-goldens", running_max_prefix)]


def _cmd_verify(args, opts):
    failures = 0
    for name, check in _verify_checks():
        ok, detail = check()
        status = "ok" if ok else "FAIL"
        print(f"{status:4s} {name}: {detail}")
        if not ok:
            failures += 1
    if failures:
        print(f"{failures} check(s) failed", file=sys.stderr)
        return EXIT_DOMAIN
    print("all checks passed")
    return EXIT_OK


# -- parser -----------------------------------------------------------------

def _add_common(parser):
    parser.add_argument("--format", choices=_FORMATS, default=None,
                        help="output format (default table)")
    parser.add_argument("--out", default=None, help="write output to a file")
    parser.add_argument("--precision", type=int, default=None,
                        help="significant digits for floats (default 12)")
    parser.add_argument("--config", default=None,
                        help="JSON file with default option values")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="circlelab",
                     description="numerical laboratory for lattice points "
                                 "in disks and the series around them")
    parser.add_argument("--version", action="version",
                        version=f"circlelab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("r2", help="representation count by three methods")
    p.add_argument("n", type=int)
    _add_common(p)
    p.set_defaults(handler=_cmd_r2)

    p = sub.add_parser("sum", help="summatory count N(x)")
    p.add_argument("x", type=float)
    p.add_argument("--method", choices=arith._SUM_METHODS, default=None)
    _add_common(p)
    p.set_defaults(handler=_cmd_sum)

    p = sub.add_parser("delta", help="lattice error and its normalization")
    p.add_argument("x", type=float)
    _add_common(p)
    p.set_defaults(handler=_cmd_delta)

    p = sub.add_parser("voronoi", help="Bessel resummation of the count")
    p.add_argument("x", type=float)
    p.add_argument("--terms", type=int, default=None)
    _add_common(p)
    p.set_defaults(handler=_cmd_voronoi)

    p = sub.add_parser("series", help="series evaluators")
    fam = p.add_subparsers(dest="family", required=True)
    f = fam.add_parser("s", help="r2-weighted phase-cosine sum")
    f.add_argument("x", type=float)
    f.add_argument("--terms", type=int, default=None)
    _add_common(f)
    f = fam.add_parser("d", help="damped phase-cosine sum")
    f.add_argument("x", type=float)
    f.add_argument("--terms", type=int, default=None)
    f.add_argument("--delta", type=float, default=None)
    _add_common(f)
    f = fam.add_parser("g", help="shifted phase-cosine sum")
    f.add_argument("x", type=float)
    f.add_argument("--terms", type=int, default=None)
    f.add_argument("--shift", type=float, default=None)
    f.add_argument("--derivative", action="store_true",
                   help="emit the log-weighted shift derivative instead")
    _add_common(f)
    f = fam.add_parser("m", help="alternating odd-index pair")
    f.add_argument("--a", type=float, default=None)
    f.add_argument("--b", type=float, default=None)
    f.add_argument("--s", type=float, required=True)
    f.add_argument("--terms", type=int, default=None)
    _add_common(f)
    f = fam.add_parser("p", help="nested alternating pair")
    f.add_argument("--a", type=float, default=None)
    f.add_argument("--b", type=float, default=None)
    f.add_argument("--s", type=float, required=True)
    f.add_argument("--outer", type=int, default=None)
    f.add_argument("--inner", type=int, default=None)
    _add_common(f)
    p.set_defaults(handler=_cmd_series)

    p = sub.add_parser("closed-form", help="closed-form comparisons")
    fam = p.add_subparsers(dest="family", required=True)
    f = fam.add_parser("fresnel", help="exponent-3/4 sum vs Fresnel form")
    f.add_argument("--a", type=float, required=True)
    f.add_argument("--m", type=int, action="append", default=None,
                   help="cut; repeatable for one row per cut")
    _add_common(f)
    f = fam.add_parser("expint", help="half-power sum vs exponential-integral form")
    f.add_argument("--eps", type=float, required=True)
    f.add_argument("--x", type=float, required=True)
    f.add_argument("--y", type=float, action="append", default=None,
                   help="cut parameter (terms = y^2); repeatable")
    _add_common(f)
    f = fam.add_parser("sqrt", help="exponent-1/2 sum vs elementary form")
    f.add_argument("--x", type=float, required=True)
    f.add_argument("--m", type=int, action="append", default=None,
                   help="cut; repeatable for one row per cut")
    _add_common(f)
    p.set_defaults(handler=_cmd_closed_form)

    p = sub.add_parser("sweep", help="sample the lattice error over a range")
    p.add_argument("--from", dest="x_from", type=float, required=True)
    p.add_argument("--to", dest="x_to", type=float, required=True)
    p.add_argument("--sampling", choices=analysis._SAMPLINGS, default=None)
    p.add_argument("--step", type=float, default=None)
    p.add_argument("--workers", type=int, default=None)
    _add_common(p)
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("report", help="consolidated reports")
    kind = p.add_subparsers(dest="kind", required=True)
    k = kind.add_parser("claims", help="claims vs measured statistics")
    k.add_argument("--workers", type=int, default=None)
    _add_common(k)
    k = kind.add_parser("convergence", help="term-ladder convergence study")
    k.add_argument("--target", choices=analysis._CONVERGENCE_TARGETS,
                   default=None)
    k.add_argument("--ladder", default=None,
                   help="comma-separated truncation depths")
    k.add_argument("--x", type=float, default=None)
    k.add_argument("--delta", type=float, default=None)
    k.add_argument("--a", type=float, default=None)
    k.add_argument("--b", type=float, default=None)
    k.add_argument("--s", type=float, default=None)
    k.add_argument("--member", choices=("cos", "sin"), default=None)
    k.add_argument("--inner", type=int, default=None)
    _add_common(k)
    p.set_defaults(handler=_cmd_report)

    p = sub.add_parser("verify", help="run the oracle-equivalence checks")
    _add_common(p)
    p.set_defaults(handler=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        opts = _Options(args)
        outcome = args.handler(args, opts)
        if isinstance(outcome, int):
            return outcome
        result, params = outcome
        _emit(result, opts, args.command, params)
    except DomainError as exc:
        print(f"circlelab: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except KernelError as exc:
        print(f"circlelab: numeric failure: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ResourceLimitError as exc:
        print(f"circlelab: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except BrokenPipeError:
        return EXIT_OK
    return EXIT_OK
