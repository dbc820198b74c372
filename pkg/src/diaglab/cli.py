"""Command-line front end: diagonal-system files in, CSV or JSON
reports out.

Every report embeds the tool version, the full run configuration, the
seed, and the system digest, so a rerun with identical inputs produces
byte-identical output at any worker count.  Wall-clock timings are
omitted unless requested (they would break that guarantee).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from . import __version__
from .analysis import conjecture_ratio, established_ranges, fit_exponent
from .circle import (
    A_count,
    A_exp,
    chi_infinity_quadrature,
    chi_infinity_schmidt,
    chi_p,
    compare,
    local_solubility_p,
    local_solubility_real,
    predict,
    singular_integral_abs,
    singular_integral_Q,
    singular_series_truncated,
)
from .counting import (
    CountingError,
    count_aux_quadratic,
    count_difference,
    count_homogeneous,
)
from .expsums import eval_f, eval_g, eval_K, eval_S, eval_v, QuadratureError
from .systems import DiagonalSystem, load_system, SystemError_, validate_system

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


# ----------------------------------------------------------------------
# Argument parsing helpers
# ----------------------------------------------------------------------

def parse_X_spec(spec: str) -> list[int]:
    """Either a comma list "16,32,64" or a geometric range "16:256:2"."""
    try:
        if ":" in spec:
            parts = spec.split(":")
            if len(parts) != 3:
                raise ValueError
            start, stop = int(parts[0]), int(parts[1])
            factor = float(parts[2])
            if start < 1 or stop < start or factor <= 1.0:
                raise ValueError
            out = []
            x = float(start)
            while round(x) <= stop:
                if not out or round(x) != out[-1]:
                    out.append(int(round(x)))
                x *= factor
            return out
        values = [int(tok) for tok in spec.split(",") if tok != ""]
        if not values or any(v < 0 for v in values):
            raise ValueError
        return values
    except ValueError:
        raise UsageError(f"bad X specification {spec!r}") from None


def _float_list(spec: str) -> list[float]:
    try:
        return [float(tok) for tok in spec.split(",") if tok != ""]
    except ValueError:
        raise UsageError(f"bad numeric list {spec!r}") from None


def _int_list(spec: str) -> list[int]:
    try:
        return [int(tok) for tok in spec.split(",") if tok != ""]
    except ValueError:
        raise UsageError(f"bad integer list {spec!r}") from None


def _load(args) -> DiagonalSystem:
    if not args.system:
        raise UsageError("--system is required for this subcommand")
    try:
        return load_system(args.system)
    except OSError as exc:
        raise UsageError(f"cannot read system file: {exc}") from None
    except SystemError_ as exc:
        raise UsageError(f"bad system file: {exc}") from None


# ----------------------------------------------------------------------
# Output plumbing
# ----------------------------------------------------------------------

def _metadata(args, sys_: Optional[DiagonalSystem]) -> dict:
    config = {
        k: v for k, v in sorted(vars(args).items())
        if k not in ("func", "out") and v is not None
    }
    meta = {"version": __version__, "config": config, "seed": args.seed}
    if sys_ is not None:
        meta["system_digest"] = sys_.digest()
    return meta


def _emit_json(args, sys_, payload: dict) -> None:
    doc = {"meta": _metadata(args, sys_), "report": payload}
    _write(args.out, json.dumps(doc, sort_keys=True, separators=(",", ":"),
                                default=str) + "\n")


def _emit_csv(args, sys_, header: list[str], rows: list[list]) -> None:
    meta = _metadata(args, sys_)
    lines = [f"# version={meta['version']}"]
    if sys_ is not None:
        lines.append(f"# system_digest={meta['system_digest']}")
    lines.append("# config=" + json.dumps(meta["config"], sort_keys=True,
                                          separators=(",", ":"), default=str))
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join("" if v is None else str(v) for v in row))
    _write(args.out, "\n".join(lines) + "\n")


def _write(out: Optional[str], text: str) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit(args, sys_, payload: dict, header: list[str], rows: list[list]) -> None:
    if args.format == "csv":
        _emit_csv(args, sys_, header, rows)
    else:
        _emit_json(args, sys_, payload)


# ----------------------------------------------------------------------
# Subcommands
# ----------------------------------------------------------------------

def cmd_validate(args) -> int:
    sys_ = _load(args)
    report = validate_system(sys_)
    verdict_rows = []
    for degree, rep in sorted(report.block_verdicts.items()):
        verdict_rows.append({
            "degree": degree, "pass": rep.verdict, "exhaustive": rep.exhaustive,
            "subsets_checked": rep.subsets_checked,
            "bad_columns": list(rep.bad_columns) if rep.bad_columns else None,
        })
        if not rep.verdict and rep.bad_columns:
            cols = ",".join(str(c) for c in rep.bad_columns)
            print(f"degree {degree}: columns {{{cols}}} singular", file=sys.stderr)
    ranges = established_ranges(sys_)
    payload = {
        "blocks": verdict_rows,
        "all_blocks_pass": report.all_blocks_pass,
        "degrees_ok_for_circle": report.degrees_ok_for_circle,
        "ranges": {
            "applicable": ranges.applicable,
            "s_threshold": ranges.s_threshold,
            "s_actual": ranges.s_actual,
            "optimal_range": ranges.optimal_range,
            "asymptotic_expected": ranges.asymptotic_expected,
            "notes": list(ranges.notes),
        },
    }
    rows = [[v["degree"], v["pass"], v["exhaustive"], v["subsets_checked"],
             ";".join(str(c) for c in (v["bad_columns"] or []))]
            for v in verdict_rows]
    _emit(args, sys_, payload,
          ["degree", "pass", "exhaustive", "subsets_checked", "bad_columns"], rows)
    return EXIT_OK if report.all_blocks_pass else EXIT_DOMAIN


def _count_one(task):
    sys_, mode, X = task
    if mode == "homogeneous":
        return count_homogeneous(sys_, X)
    if mode == "difference":
        return count_difference(sys_, X)
    raise AssertionError(mode)


def cmd_count(args) -> int:
    if args.mode == "aux":
        if args.H is None:
            raise UsageError("--H is required for mode aux")
        reports = [(f"{X}", count_aux_quadratic(X, args.H))
                   for X in parse_X_spec(args.X)]
    else:
        if args.mode not in ("homogeneous", "difference"):
            raise UsageError(f"unknown mode {args.mode!r}")
        sys_ = _load(args)
        xs = sorted(set(parse_X_spec(args.X)))
        tasks = [(sys_, args.mode, X) for X in xs]
        if args.workers > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=args.workers) as pool:
                results = list(pool.map(_count_one, tasks))
        else:
            results = [_count_one(t) for t in tasks]
        reports = [(str(X), rep) for X, rep in zip(xs, results)]
    sys_out = None if args.mode == "aux" else sys_
    rows = [[x, rep.count, rep.method,
             f"{rep.seconds:.3f}" if args.timing else None]
            for x, rep in reports]
    payload = {"rows": [{"X": x, "count": str(rep.count), "method": rep.method}
                        for x, rep in reports]}
    _emit(args, sys_out, payload, ["X", "count", "method", "seconds"], rows)
    return EXIT_OK


def cmd_expsum(args) -> int:
    kind = args.kind
    if kind == "S":
        if args.q is None:
            raise UsageError("S requires --q")
        a = tuple(_int_list(args.a)) if args.a else (1,)
        val = eval_S(args.q, a)
        payload = {"kind": "S", "q": args.q, "a": list(a),
                   "re": val.real, "im": val.imag}
    elif kind in ("f", "g"):
        if args.phases is None or args.X is None:
            raise UsageError(f"{kind} requires --phases and --X")
        phases = _float_list(args.phases)
        xs = parse_X_spec(args.X)
        fn = eval_f if kind == "f" else eval_g
        sample = fn(phases, xs[0])
        payload = {"kind": kind, "phases": phases, "X": xs[0],
                   "re": sample.value.real, "im": sample.value.imag,
                   "error": sample.error}
    elif kind == "K":
        if args.phases is None or args.X is None or args.H is None:
            raise UsageError("K requires --phases, --X and --H")
        phases = _float_list(args.phases)
        xs = parse_X_spec(args.X)
        sample = eval_K(phases, xs[0], args.H)
        payload = {"kind": "K", "phases": phases, "X": xs[0], "H": args.H,
                   "re": sample.value.real, "im": sample.value.imag,
                   "error": sample.error}
    elif kind == "v":
        if args.beta is None:
            raise UsageError("v requires --beta")
        betas = _float_list(args.beta)
        X = float(parse_X_spec(args.X)[0]) if args.X else 1.0
        sample = eval_v(betas, X, tol=args.tol)
        payload = {"kind": "v", "beta": betas, "X": X,
                   "re": sample.value.real, "im": sample.value.imag,
                   "error": sample.error}
    else:
        raise UsageError(f"unknown sum kind {args.kind!r}")
    _emit(args, None, payload,
          list(payload.keys()), [[payload[k] for k in payload]])
    return EXIT_OK


def cmd_sseries(args) -> int:
    sys_ = _load(args)
    rep = singular_series_truncated(sys_, int(args.Q), method=args.method)
    payload = {
        "Q": rep.Q, "partial": rep.partial, "cauchy_gap": rep.cauchy_gap,
        "method": rep.method,
        "terms": [{"q": q, "A": float(a)} for q, a in rep.terms],
    }
    rows = [[q, repr(float(a))] for q, a in rep.terms]
    rows.append(["partial", repr(rep.partial)])
    _emit(args, sys_, payload, ["q", "A"], rows)
    return EXIT_OK


def cmd_sintegral(args) -> int:
    sys_ = _load(args)
    if args.method == "quadrature":
        rep = chi_infinity_quadrature(sys_, Q=args.Q, tol=args.tol)
    elif args.method == "schmidt":
        rep = chi_infinity_schmidt(sys_, T=args.T, samples=args.samples,
                                   seed=args.seed)
    elif args.method == "box":
        rep = singular_integral_Q(sys_, args.Q, tol=args.tol)
    elif args.method == "abs":
        val = singular_integral_abs(sys_, args.Q, tol=args.tol)
        rep = None
        payload = {"method": "abs", "W": args.Q, "value": val}
    else:
        raise UsageError(f"unknown method {args.method!r}")
    if rep is not None:
        payload = {"method": rep.method, "value": rep.value,
                   "error": rep.error, "parameters": rep.parameters}
    rows = [[payload["method"], repr(payload["value"]),
             repr(payload.get("error", 0.0))]]
    _emit(args, sys_, payload, ["method", "value", "error"], rows)
    return EXIT_OK


def cmd_localsolve(args) -> int:
    sys_ = _load(args)
    if args.p is not None:
        wit = local_solubility_p(sys_, args.p, depth=args.depth, seed=args.seed)
        payload = {"place": f"p={args.p}", "found": wit.found,
                   "witness": list(wit.witness) if wit.witness else None,
                   "modulus_exponent": wit.modulus_exponent, "detail": wit.detail}
    else:
        wit = local_solubility_real(sys_, seed=args.seed)
        payload = {"place": "real", "found": wit.found,
                   "witness": list(wit.witness) if wit.witness else None,
                   "detail": wit.detail}
    rows = [[payload["place"], payload["found"], payload["detail"]]]
    _emit(args, sys_, payload, ["place", "found", "detail"], rows)
    return EXIT_OK


def cmd_predict(args) -> int:
    sys_ = _load(args)
    rep = predict(sys_, P0=args.P0, i_max=args.imax, tol=args.tol,
                  chi_inf_method=args.chi_method, quad_Q=args.Q,
                  T=args.T, samples=args.samples, seed=args.seed)
    payload = {
        "constant": rep.constant,
        "exponent": rep.exponent,
        "chi_infinity": {"method": rep.chi_infinity.method,
                         "value": rep.chi_infinity.value,
                         "error": rep.chi_infinity.error,
                         "parameters": rep.chi_infinity.parameters},
        "chi_p": [{"p": r.p, "value": r.chi_p, "stabilized": r.stabilized,
                   "i_used": r.i_used} for r in rep.chi_p_reports],
        "prime_cutoff": rep.prime_cutoff,
        "caveats": rep.caveats,
    }
    rows = [["constant", repr(rep.constant)], ["exponent", rep.exponent]]
    if args.X:
        table = compare(sys_, parse_X_spec(args.X), rep)
        payload["compare"] = [
            {"X": row.X, "count": str(row.count), "predicted": row.predicted,
             "ratio": row.ratio} for row in table
        ]
        rows = [[row.X, row.count, repr(row.predicted),
                 "degenerate" if row.ratio is None else repr(row.ratio)]
                for row in table]
        _emit(args, sys_, payload, ["X", "count", "predicted", "ratio"], rows)
    else:
        _emit(args, sys_, payload, ["key", "value"], rows)
    return EXIT_OK


def cmd_fit(args) -> int:
    if args.counts:
        xs = parse_X_spec(args.X)
        counts = _int_list(args.counts)
        sys_ = _load(args) if args.system else None
    else:
        sys_ = _load(args)
        xs = sorted(set(parse_X_spec(args.X)))
        if args.mode == "difference":
            counts = [count_difference(sys_, X).count for X in xs]
        elif args.mode == "homogeneous":
            counts = [count_homogeneous(sys_, X).count for X in xs]
        else:
            raise UsageError(f"unknown mode {args.mode!r}")
    fit = fit_exponent(xs, counts)
    payload = {
        "X": list(fit.X_values), "counts": [str(c) for c in fit.counts],
        "slope": fit.slope, "intercept": fit.intercept,
        "rms_residual": fit.rms_residual,
        "heuristic": "finite-X slope fit; the limiting exponent is asymptotic",
    }
    rows = [["slope", repr(fit.slope)], ["intercept", repr(fit.intercept)],
            ["rms_residual", repr(fit.rms_residual)]]
    _emit(args, sys_, payload, ["key", "value"], rows)
    return EXIT_OK


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diaglab",
        description="Counting and circle-method reports for diagonal systems.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, system_required=True):
        p.add_argument("--system", help="path to a system JSON file",
                       required=False)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="json")
        p.add_argument("--tol", type=float, default=1e-6)

    p = sub.add_parser("validate", help="check block non-singularity and ranges")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("count", help="exact solution counts over an X range")
    common(p)
    p.add_argument("--X", required=True)
    p.add_argument("--mode", default="difference",
                   help="homogeneous | difference | aux")
    p.add_argument("--H", type=int, help="shift bound for mode aux")
    p.add_argument("--timing", action="store_true",
                   help="include wall-clock seconds (breaks byte-identical reruns)")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("expsum", help="evaluate one exponential sum or integral")
    common(p)
    p.add_argument("kind", choices=("f", "g", "K", "S", "v"))
    p.add_argument("--q", type=int)
    p.add_argument("--a", help="comma list of numerators (degrees 2..k)")
    p.add_argument("--phases", help="comma list of phases (degrees 1..k)")
    p.add_argument("--beta", help="comma list of offsets (degrees 2..k)")
    p.add_argument("--X")
    p.add_argument("--H", type=int)
    p.set_defaults(func=cmd_expsum)

    p = sub.add_parser("sseries", help="truncated singular series")
    common(p)
    p.add_argument("--Q", type=float, default=50.0)
    p.add_argument("--method", choices=("exact", "float"), default="exact")
    p.set_defaults(func=cmd_sseries)

    p = sub.add_parser("sintegral", help="archimedean density estimates")
    common(p)
    p.add_argument("--method", choices=("quadrature", "schmidt", "box", "abs"),
                   default="quadrature")
    p.add_argument("--Q", type=float, default=256.0)
    p.add_argument("--T", type=float, default=32.0)
    p.add_argument("--samples", type=int, default=10**6)
    p.set_defaults(func=cmd_sintegral)

    p = sub.add_parser("localsolve", help="p-adic or real solubility witness")
    common(p)
    p.add_argument("--p", type=int, help="prime (omit for the real place)")
    p.add_argument("--depth", type=int, default=3)
    p.set_defaults(func=cmd_localsolve)

    p = sub.add_parser("predict", help="end-to-end asymptotic prediction")
    common(p)
    p.add_argument("--X", help="optional X list for a compare table")
    p.add_argument("--P0", type=int, default=100)
    p.add_argument("--imax", type=int, default=6)
    p.add_argument("--Q", type=float, default=256.0)
    p.add_argument("--T", type=float, default=32.0)
    p.add_argument("--samples", type=int, default=10**6)
    p.add_argument("--chi-method", dest="chi_method", default="auto",
                   choices=("auto", "quadrature", "schmidt"))
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("fit", help="log-log exponent fit over an X range")
    common(p)
    p.add_argument("--X", required=True)
    p.add_argument("--mode", default="difference")
    p.add_argument("--counts", help="fit the given counts instead of counting")
    p.set_defaults(func=cmd_fit)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0,) else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CountingError, QuadratureError, SystemError_, ValueError,
            ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    raise SystemExit(main())
