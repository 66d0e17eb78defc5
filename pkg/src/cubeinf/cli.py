"""Command-line front end.

Exit codes: 0 when every applicable check passes, 1 when any check fails or
flags a counterexample candidate, 2 on input or parameter errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bounds, constructs, experiments, extremal
from .cube import MAX_N, CubeFunction, classify, from_json_dict, load_json, to_json_dict
from .errors import CertificationFailed, CubeError, LPError, ParamError, SchemaError
from .influence import first_level_sum, max_sensitivity, total_influence_p, variance_p
from .report import BoundReport
from .symmetric import LevelProfile, symmetric_bound_report, symmetric_total_influence, to_univariate

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
BAD_STATUSES = ("fail", "counterexample-candidate")
DEFAULT_SEED = 0


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _load_input(path: str) -> CubeFunction | LevelProfile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SchemaError(f"{path}: {exc.strerror}") from exc
    doc = load_json(text)
    if isinstance(doc, dict) and "levels" in doc:
        try:
            return LevelProfile.from_json_dict(doc)
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"level profile: {exc}") from exc
    return from_json_dict(doc)


def _as_cube(obj) -> CubeFunction | None:
    if isinstance(obj, CubeFunction):
        return obj
    return obj.to_cube() if obj.n <= MAX_N else None


# -- analyze ------------------------------------------------------------------

def analyze(obj, tol: float) -> dict:
    f = _as_cube(obj)
    if f is None:
        p = to_univariate(obj)
        return {
            "n": obj.n,
            "symmetric": True,
            "degree": p.degree,
            "sup_norm": obj.sup_norm(),
            "inf_1": symmetric_total_influence(obj),
            "first_level_sum": obj.first_level_sum(),
        }
    flags = classify(f, tol)
    return {
        "n": f.n,
        "boolean": flags.boolean_valued,
        "bounded": flags.bounded_by_one,
        "homogeneous": flags.homogeneous,
        "symmetric": flags.symmetric,
        "monotone": flags.monotone,
        "degree": flags.degree,
        "sup_norm": flags.sup_norm,
        "inf_1": total_influence_p(f, 1.0),
        "inf_1.5": total_influence_p(f, 1.5),
        "inf_2": total_influence_p(f, 2.0),
        "max_sensitivity": max_sensitivity(f),
        "variance": variance_p(f, 2.0),
        "first_level_sum": first_level_sum(f),
    }


def cmd_analyze(args) -> int:
    result = analyze(_load_input(args.input), args.tol)
    if args.json:
        print(json.dumps(result, indent=2))
    else:
        for k, v in result.items():
            print(f"{k}: {_fmt(v)}")
    return EXIT_OK


# -- check ----------------------------------------------------------------------

def _emit_reports(reports: list[BoundReport], args) -> None:
    if args.json:
        print(json.dumps([r.to_dict() for r in reports], indent=2))
    elif args.csv:
        print("name,measured,bound,slack,status")
        for r in reports:
            print(",".join([r.name, _fmt(r.measured), _fmt(r.bound), _fmt(r.slack), r.status]))
    else:
        for r in reports:
            print(f"{r.name}: {r.status}  measured={_fmt(r.measured)} bound={_fmt(r.bound)}")


def cmd_check(args) -> int:
    which = [w.strip() for w in args.which.split(",") if w.strip()]
    if args.corpus:
        result = bounds.sweep_corpus(count=args.corpus, seed=args.seed, dump_dir=args.dump)
        if args.csv:
            sys.stdout.write(result.to_csv())
        else:
            print(f"functions: {args.corpus}  rows: {len(result.rows)}  candidates: {len(result.candidates)}")
        return EXIT_FAIL if result.candidates else EXIT_OK
    if not args.input:
        raise ParamError("check needs --input PATH or --corpus N")
    obj = _load_input(args.input)
    f = _as_cube(obj)
    if f is None:
        wanted = "all" in which or "symmetric" in which
        reports = [symmetric_bound_report(obj)] if wanted else []
        for name in (bounds.CHECKS if "all" in which else which):
            if name != "symmetric":
                reports.append(BoundReport.skipped(name, f"n = {obj.n} is too large to tabulate"))
    else:
        reports = bounds.run_checks(f, which, p=args.p, alpha=args.alpha)
    _emit_reports(reports, args)
    return EXIT_FAIL if any(r.status in BAD_STATUSES for r in reports) else EXIT_OK


# -- construct ------------------------------------------------------------------

CONSTRUCT_NAMES = ("character", "f4", "quad_s", "quad_t", "majority3", "f4_times_character",
                   "homogeneous_counterexample", "chebyshev_symmetric", "klurman", "random")


def cmd_construct(args) -> int:
    name = args.name
    if name == "character":
        mask = constructs.mask_of(*range(1, (args.d or 0) + 1))
        doc = to_json_dict(constructs.character(mask, args.n or args.d or 0), args.format)
    elif name in ("f4", "quad_s", "quad_t", "majority3"):
        doc = to_json_dict(constructs.named_example(name), args.format)
    elif name == "f4_times_character":
        doc = to_json_dict(constructs.named_example(name, d=args.d), args.format)
    elif name == "homogeneous_counterexample":
        doc = to_json_dict(constructs.named_example(name, block=args.block), args.format)
    elif name == "chebyshev_symmetric":
        _require(args, "d", "n")
        doc = constructs.chebyshev_symmetric(args.d, args.n).to_json_dict()
    elif name == "klurman":
        _require(args, "d")
        doc = {kind: p.coeffs.tolist() for kind, p in constructs.klurman_monotone_extremal(args.d).items()}
    elif name == "random":
        _require(args, "d", "n")
        doc = to_json_dict(bounds.random_bounded(args.n, args.d, args.seed), args.format)
    else:
        raise ParamError(f"unknown construct {name!r}; choose from {', '.join(CONSTRUCT_NAMES)}")
    print(json.dumps(doc))
    return EXIT_OK


def _require(args, *names: str) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise ParamError(f"{args.name} needs {' '.join(missing)}")


# -- estimate -------------------------------------------------------------------

def cmd_estimate(args) -> int:
    if args.d is None:
        raise ParamError("estimate needs --d")
    if args.constant == "K":
        est = extremal.estimate_K(args.d, strict=False)
        row = {"d": est.d, "lower": est.value, "upper": est.upper, "certified": est.certified}
    elif args.constant == "M":
        est = extremal.estimate_M(args.d)
        row = {"d": est.d, "value": est.value, "upper": est.upper,
               "klurman_reference": est.klurman_reference, "bound": est.bound}
    else:
        n = args.n if args.n is not None else max(args.d, 8)
        alpha = args.alpha if args.alpha is not None else (1.0 - 1.0 / args.d if args.d >= 2 else 0.5)
        value = bounds.estimate_C(args.d, alpha, n, args.trials, args.seed)
        row = {"d": args.d, "alpha": alpha, "n": n, "lower": value, "cap": alpha ** (-min(args.d**2, n))}
    if args.json:
        print(json.dumps(row))
    else:
        print(" ".join(f"{k}={_fmt(v)}" for k, v in row.items()))
    return EXIT_OK


# -- experiment -------------------------------------------------------------------

def cmd_experiment(args) -> int:
    name = args.name
    if name == "cheb_limit":
        table = experiments.cheb_limit((args.d,) if args.d else experiments.CHEB_DEGREES)
    elif name == "monotone_asymptotics":
        table = experiments.monotone_asymptotics((args.d,) if args.d else experiments.MONOTONE_DEGREES)
    elif name == "kd_table":
        table = experiments.kd_table(args.d or 4)
    elif name == "c_estimate":
        table = experiments.c_estimate(args.d or 2, args.alpha, args.n or 8, args.trials, args.seed)
    else:
        raise ParamError(f"unknown experiment {name!r}; choose from {', '.join(experiments.EXPERIMENTS)}")
    sys.stdout.write(experiments.to_csv(table))
    return EXIT_OK


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cubeinf", description="Influence bounds on the Boolean cube.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, json_flag=True, csv_flag=False):
        if json_flag:
            p.add_argument("--json", action="store_true", help="machine-readable JSON output")
        if csv_flag:
            p.add_argument("--csv", action="store_true", help="CSV output")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"random seed (default {DEFAULT_SEED})")
        p.add_argument("--tol", type=float, default=1e-9, help="classification tolerance (default 1e-9)")
        p.add_argument("--d", type=int, help="degree")
        p.add_argument("--n", type=int, help="number of variables")
        p.add_argument("--alpha", type=float, help="noise rate (default 1 - 1/d)")
        p.add_argument("--p", type=float, default=1.5, help="influence exponent in [1, 2] (default 1.5)")

    p = sub.add_parser("analyze", help="degree, flags and influences of a function")
    p.add_argument("--input", required=True, help="function or level-profile JSON")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("check", help="run inequality checkers")
    p.add_argument("--input", help="function or level-profile JSON")
    p.add_argument("--which", default="all", help=f"comma list from {','.join(bounds.CHECKS)} or all")
    p.add_argument("--corpus", type=int, default=0, help="sweep this many seeded random functions instead")
    p.add_argument("--dump", help="directory for counterexample-candidate dumps (with --corpus)")
    common(p, csv_flag=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("construct", help="emit an example as JSON")
    p.add_argument("name", help=", ".join(CONSTRUCT_NAMES))
    p.add_argument("--block", type=int, help="block size for homogeneous_counterexample")
    p.add_argument("--format", default="truth_table", choices=["truth_table", "fourier"])
    common(p, json_flag=False)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("estimate", help="estimate K_d, M_d or C_{d,alpha}")
    p.add_argument("constant", choices=["K", "M", "C"])
    p.add_argument("--trials", type=int, default=2000, help="random trials for C (default 2000)")
    common(p)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("experiment", help="reproduce a numerical table as CSV")
    p.add_argument("name", help=", ".join(experiments.EXPERIMENTS))
    p.add_argument("--trials", type=int, default=2000, help="random trials for c_estimate (default 2000)")
    common(p, json_flag=False, csv_flag=True)
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if getattr(args, "p", 1.5) is not None and not 1.0 <= args.p <= 2.0:
        print(f"error: --p must lie in [1, 2], got {args.p}", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except CubeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (CertificationFailed, LPError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
