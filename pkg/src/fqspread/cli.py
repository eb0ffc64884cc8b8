"""Command-line front end.

Identical invocations print identical bytes to stdout, with one exception:
census reports carry an ``elapsed_ms`` timing field.  Domain errors print
their machine-parsable code alone on the first stderr line, then a detail
line, and exit with status 1; usage errors exit 2; experiments exit 0 only
on a pass verdict.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from fractions import Fraction

from . import census, construct, expt, ff, geom
from .errors import DimensionMismatch, DomainError, FormatError
from .geom import PointSet

ENV_SEED = "FQSPREAD_SEED"
ENV_BUDGET = "FQSPREAD_BUDGET"


def _env_int(name: str, fallback: int) -> int:
    try:
        return int(os.environ.get(name, ""))
    except ValueError:
        return fallback


def _parse_point(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(","))


def _emit(args, text: str) -> None:
    if args.out and args.out != "-":
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _common(parser: argparse.ArgumentParser, field: bool = True) -> None:
    if field:
        parser.add_argument("--field", required=True, help='field spec "p^r", e.g. 5^1 or 3^2')
    parser.add_argument("--seed", type=int, default=_env_int(ENV_SEED, 0))
    parser.add_argument("--budget", type=int, default=_env_int(ENV_BUDGET, 10**8))
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--out", default="-", help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="fqspread",
        description="spread geometry over odd finite fields: censuses, constructions, experiments",
    )
    sub = top.add_subparsers(dest="command", required=True)

    p_field = sub.add_parser("field", help="field utilities")
    field_sub = p_field.add_subparsers(dest="subcommand", required=True)
    p_info = field_sub.add_parser("info", help="describe a field and its element encoding")
    _common(p_info)

    p_spread = sub.add_parser("spread", help="spread of one triple")
    spread_sub = p_spread.add_subparsers(dest="subcommand", required=True)
    p_eval = spread_sub.add_parser("eval")
    _common(p_eval)
    p_eval.add_argument("--d", type=int, required=True)
    p_eval.add_argument("--apex", required=True, help="comma-separated element indices")
    p_eval.add_argument("--b", required=True)
    p_eval.add_argument("--c", required=True)

    p_kspread = sub.add_parser("kspread", help="order-k spread of a point file")
    kspread_sub = p_kspread.add_subparsers(dest="subcommand", required=True)
    p_keval = kspread_sub.add_parser("eval")
    p_keval.add_argument("--points", required=True, help="point-set file of k+1 points")
    _common(p_keval, field=False)

    p_con = sub.add_parser("construct", help="emit extremal point sets")
    p_con.add_argument("kind", choices=("con1", "con2", "iso"))
    _common(p_con)
    p_con.add_argument("--d", type=int, required=True)

    p_cen = sub.add_parser("census", help="exhaustive counts over a point file")
    p_cen.add_argument("kind", choices=("spreads", "distances", "lines", "occurrences"))
    p_cen.add_argument("--points", required=True)
    p_cen.add_argument("--gamma", type=int, help="spread value for `occurrences`")
    p_cen.add_argument("--workers", type=int, default=1)
    _common(p_cen, field=False)

    p_search = sub.add_parser("search", help="exhaustive searches")
    search_sub = p_search.add_subparsers(dest="subcommand", required=True)
    p_iso = search_sub.add_parser("iso-triple")
    _common(p_iso)
    p_iso.add_argument("--d", type=int, required=True)

    p_sphere = sub.add_parser("sphere", help="enumerate a sphere |x| = t")
    _common(p_sphere)
    p_sphere.add_argument("--d", type=int, required=True)
    p_sphere.add_argument("--t", type=int, required=True)

    p_expt = sub.add_parser("experiment", help="seeded experiments with pass/fail verdicts")
    p_expt.add_argument(
        "kind",
        choices=(
            "bode",
            "threshold",
            "beck",
            "projection",
            "constructions",
            "sphere-distance",
            "sphere-equiv",
            "all",
        ),
    )
    _common(p_expt, field=False)
    p_expt.add_argument("--field", help='field spec "p^r"; required except for `all`')
    p_expt.add_argument("--d", type=int, default=2)
    p_expt.add_argument("--epsilon", default="1", help="rational, e.g. 1, 1/2, 0.5")
    p_expt.add_argument("--C", default="2", help="rational sphere-subset constant")
    p_expt.add_argument("--k", type=int, default=2, help="projection target dimension")
    p_expt.add_argument("--n-points", type=int, default=25)
    p_expt.add_argument("--trials", type=int, default=100)
    p_expt.add_argument("--adversarial", action="store_true")
    p_expt.add_argument("--full-plane", action="store_true")
    p_expt.add_argument("--workers", type=int, default=1)
    return top


# -- subcommand bodies -----------------------------------------------------------


def _cmd_field_info(args) -> int:
    fd = ff.parse_field(args.field)
    info = {
        "p": fd.p,
        "r": fd.r,
        "q": fd.q,
        "modulus": list(fd.modulus) if fd.modulus else None,
        "encoding": (
            "an element index i in [0, q) encodes sum(c_k * alpha^k) where "
            "(c_0, ..., c_{r-1}) are the base-p digits of i; coordinates on "
            "the command line and in point files use these indices"
        ),
    }
    _emit(args, json.dumps(info, sort_keys=True, indent=2) + "\n")
    return 0


def _cmd_spread_eval(args) -> int:
    fd = ff.parse_field(args.field)
    apex, b, c = (_parse_point(t) for t in (args.apex, args.b, args.c))
    for p in (apex, b, c):
        if len(p) != args.d:
            raise DimensionMismatch(f"point {p} does not have dimension {args.d}")
    s = geom.spread(fd, apex, b, c)
    _emit(args, geom.format_spread(s) + "\n")
    return 0


def _cmd_kspread_eval(args) -> int:
    ps = PointSet.load(args.points)
    s = geom.k_spread(ps.field, list(ps.points))
    _emit(args, geom.format_spread(s) + "\n")
    return 0


def _cmd_construct(args) -> int:
    fd = ff.parse_field(args.field)
    if args.kind == "con1":
        ps = construct.con1_set(fd, args.d, budget=args.budget)
    elif args.kind == "con2":
        ps = construct.con2_set(fd, args.d, budget=args.budget)
    else:
        ps = PointSet(fd, args.d, construct.iso_family(fd, args.d))
    _emit(args, ps.dumps())
    return 0


def _cmd_census(args) -> int:
    ps = PointSet.load(args.points)
    started = time.monotonic()
    body: dict = {
        "field": ps.field.label(),
        "d": ps.dim,
        "n_points": len(ps),
    }
    values: tuple[int, ...] = ()
    if args.kind == "spreads":
        cen = census.distinct_spreads(ps, budget=args.budget, workers=args.workers)
        body.update(
            defined_spread_values=list(cen.defined_values),
            defined_count=cen.defined_count,
            undefined_triples=cen.undefined_triples,
            triples_scanned=cen.triples_scanned,
        )
        values = cen.defined_values
    elif args.kind == "distances":
        cen = census.distinct_distances(ps)
        body.update(
            distance_values=list(cen.values),
            nonzero_distance_values=list(cen.nonzero_values),
            pairs_scanned=cen.pairs_scanned,
        )
        values = cen.values
    elif args.kind == "lines":
        cen = census.spanned_lines(ps, budget=args.budget)
        body.update(lines=cen.lines, max_degree=cen.max_degree, pairs_scanned=cen.pairs_scanned)
    else:
        if args.gamma is None:
            raise FormatError("`census occurrences` needs --gamma")
        count = census.spread_occurrences(ps, args.gamma, budget=args.budget, workers=args.workers)
        body.update(gamma=args.gamma, occurrences=count)
    body["elapsed_ms"] = int((time.monotonic() - started) * 1000)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["value"])
        for v in values:
            writer.writerow([v])
        _emit(args, buf.getvalue())
    else:
        _emit(args, json.dumps(body, sort_keys=True, indent=2) + "\n")
    return 0


def _cmd_search(args) -> int:
    fd = ff.parse_field(args.field)
    found = census.search_iso_triple(fd, args.d, budget=args.budget)
    if args.format == "json":
        body = {
            "field": fd.label(),
            "d": args.d,
            "found": found is not None,
            "vectors": [list(v) for v in found] if found else None,
        }
        _emit(args, json.dumps(body, sort_keys=True, indent=2) + "\n")
    elif found is None:
        _emit(args, "NoneFound\n")
    else:
        _emit(args, "\n".join(",".join(str(x) for x in v) for v in found) + "\n")
    return 0


def _cmd_sphere(args) -> int:
    fd = ff.parse_field(args.field)
    ps = geom.sphere_points(fd, args.d, args.t, budget=args.budget)
    _emit(args, ps.dumps())
    return 0


def _report_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["experiment", "field", "trial", "record"])
    for rep in reports:
        for rec in rep.per_trial:
            writer.writerow(
                [rep.name, rep.params.get("field", ""), rec.get("trial", 0), json.dumps(rec, sort_keys=True)]
            )
    return buf.getvalue()


def _cmd_experiment(args) -> int:
    kind = args.kind
    if kind == "all":
        reports = expt.acceptance_suite(seed=args.seed)
        for rep in reports:
            tag = rep.params.get("field", "-")
            print(f"{rep.verdict.upper():4s} {rep.name} field={tag}", file=sys.stderr)
        payload = json.dumps([r.as_dict() for r in reports], sort_keys=True, indent=2) + "\n"
        if args.format == "csv":
            payload = _report_csv(reports)
        _emit(args, payload)
        return 0 if all(r.passed for r in reports) else 1
    if not args.field:
        print("usage error: --field is required for this experiment", file=sys.stderr)
        return 2
    fd = ff.parse_field(args.field)
    eps = Fraction(args.epsilon)
    c = Fraction(args.C)
    if kind == "bode":
        rep = expt.run_bode(fd, args.trials, args.seed, full_plane=args.full_plane, workers=args.workers)
    elif kind == "threshold":
        rep = expt.run_threshold(
            fd, args.d, eps, args.trials, args.seed,
            adversarial=args.adversarial, workers=args.workers,
        )
    elif kind == "beck":
        rep = expt.run_beck(fd, args.d, eps, args.trials, args.seed)
    elif kind == "projection":
        rep = expt.run_projection(fd, args.d, args.k, args.n_points, args.trials, args.seed)
    elif kind == "constructions":
        rep = expt.run_constructions(fd, args.d, workers=args.workers)
    elif kind == "sphere-distance":
        rep = expt.run_sphere_distance(fd, args.d, c, args.trials, args.seed)
    else:
        rep = expt.run_sphere_equiv(fd, args.d, budget=args.budget)
    if args.format == "csv":
        _emit(args, _report_csv([rep]))
    else:
        _emit(args, rep.to_json() + "\n")
    return 0 if rep.passed else 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        ("field", "info"): _cmd_field_info,
        ("spread", "eval"): _cmd_spread_eval,
        ("kspread", "eval"): _cmd_kspread_eval,
        ("search", "iso-triple"): _cmd_search,
    }
    try:
        if args.command in ("field", "spread", "kspread", "search"):
            return handlers[(args.command, args.subcommand)](args)
        if args.command == "construct":
            return _cmd_construct(args)
        if args.command == "census":
            return _cmd_census(args)
        if args.command == "sphere":
            return _cmd_sphere(args)
        return _cmd_experiment(args)
    except DomainError as err:
        print(err.code, file=sys.stderr)
        print(f"detail: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
