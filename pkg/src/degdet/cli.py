"""Command-line front end: ``degdet <command> FILE [options]``.

The first stdout line of every command is its main answer; the seed is
echoed on stderr.  Exit codes: 0 success, 1 usage or parse error, 2 cap or
feasibility failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .apps import dae_index, mixed_poly_degdet, solve_matroid_base, solve_matroid_intersection, solve_weighted_matching
from .errors import DegDetError, ParseError
from .fields import MINUS_INF, field_from_spec
from .linalg import smith_mcmillan
from .mvsp import STRATEGIES, nc_rank
from .pencil import commutative_degdet_oracle, oracle_failure_bound
from .solver import combinatorial_relaxation, max_deg_subdet, sda_degdet


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _fmt(v) -> str:
    return "-inf" if v is MINUS_INF else str(v)


def _load(path: str, expect: tuple[str, ...]):
    kind, obj = io.load(path)
    if kind not in expect:
        raise ParseError(f"{path}: expected a document of kind {' or '.join(expect)}, got {kind!r}")
    return obj


def _write_report(args, res, extra=None) -> None:
    if not getattr(args, "report", None):
        return
    rep = res.to_report(seed=args.seed)
    if extra:
        rep.update(extra)
    Path(args.report).write_text(json.dumps(rep, indent=2) + "\n")


def _run(A, args):
    if args.algorithm == "relax":
        return combinatorial_relaxation(A, mvsp=args.mvsp, seed=args.seed)
    variant = "kappa" if args.algorithm == "sda-kappa" else "plain"
    return sda_degdet(A, mvsp=args.mvsp, variant=variant, seed=args.seed)


def cmd_solve(args) -> int:
    A = _load(args.file, ("pencil",))
    res = _run(A, args)
    print(_fmt(res.value))
    if not res.exact:
        print("note: value is an upper bound (vanishing-subspace optimum not certified)")
    extra = {}
    if args.trials:
        oracle = commutative_degdet_oracle(A, trials=args.trials, seed=args.seed)
        bound = oracle_failure_bound(A, args.trials)
        print(f"commutative deg det: {_fmt(oracle)} (failure probability <= {bound:.3g})")
        extra["oracle"] = {"value": _fmt(oracle), "trials": args.trials, "failure_bound": bound}
    _write_report(args, res, extra)
    return 0


def cmd_ncrank(args) -> int:
    import numpy as np

    A = _load(args.file, ("pencil",))
    print(nc_rank(A, args.mvsp, np.random.default_rng(args.seed)))
    return 0


def cmd_smith(args) -> int:
    text = Path(args.file).read_text()
    if text.lstrip().startswith("{"):
        kind, M = io.loads(text)
        if kind != "matrix":
            raise ParseError(f"{args.file}: expected a document of kind matrix, got {kind!r}")
        field = field_from_spec(json.loads(text).get("field", {"kind": "gfp", "p": 10007}))
    else:
        field = field_from_spec(json.loads(args.field))
        M = io.parse_matrix_text(text, field)
    form = smith_mcmillan(field, M)
    print(" ".join(str(a) for a in form.alpha))
    if args.verbose:
        print("S =")
        print(io.format_matrix_text(field, form.S))
        print("T =")
        print(io.format_matrix_text(field, form.T))
    return 0


def cmd_subdet(args) -> int:
    A = _load(args.file, ("pencil",))
    value, cols = max_deg_subdet(A, mvsp=args.mvsp, seed=args.seed)
    print(_fmt(value))
    if cols is not None:
        print("columns:", " ".join(str(c + 1) for c in cols))
    return 0


def cmd_matching(args) -> int:
    inst = _load(args.file, ("matching",))
    out = solve_weighted_matching(inst, variant=args.variant, mvsp=args.mvsp, seed=args.seed)
    print(_fmt(out.value))
    extra = {}
    if out.dual is not None:
        print("p:", " ".join(map(str, out.dual.p)))
        print("q:", " ".join(map(str, out.dual.q)))
        extra["dual"] = {"p": list(out.dual.p), "q": list(out.dual.q)}
    _write_report(args, out.result, extra)
    return 0


def cmd_matroid_base(args) -> int:
    inst = _load(args.file, ("matroid-base",))
    base, weight, res = solve_matroid_base(inst, variant=args.variant, mvsp=args.mvsp, seed=args.seed)
    print(_fmt(weight))
    if weight is not MINUS_INF:
        print("base:", " ".join(str(i + 1) for i in base))
    if res.value != weight:
        print(f"warning: deg Det gives {_fmt(res.value)}", file=sys.stderr)
    _write_report(args, res, {"base": [i + 1 for i in base]})
    return 0


def cmd_matroid_intersection(args) -> int:
    inst = _load(args.file, ("matroid-intersection",))
    res = solve_matroid_intersection(inst, variant=args.variant, mvsp=args.mvsp, seed=args.seed)
    print(_fmt(res.value))
    _write_report(args, res)
    return 0


def cmd_mixed(args) -> int:
    sys_ = _load(args.file, ("mixed",))
    res = mixed_poly_degdet(sys_, variant=args.variant, mvsp=args.mvsp, seed=args.seed)
    print(_fmt(res.value))
    _write_report(args, res)
    return 0


def cmd_dae_index(args) -> int:
    sys_ = _load(args.file, ("mixed",))
    rep = dae_index(sys_, args.delta, mvsp=args.mvsp, seed=args.seed)
    if rep.exceeds:
        print(f"exceeds {args.delta}")
    else:
        print(rep.index)
    if args.report:
        doc = {"index": rep.index, "exceeds": args.delta if rep.exceeds else None, "iterations": rep.iterations, "alpha_n": rep.alpha_n, "seed": args.seed}
        Path(args.report).write_text(json.dumps(doc, indent=2) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="degdet", description="Degree of the Dieudonne determinant of linear symbolic matrices.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_, variant=False, report=True):
        s = sub.add_parser(name, help=help_)
        s.add_argument("file")
        s.add_argument("--mvsp", choices=STRATEGIES, default="auto")
        s.add_argument("--seed", type=int, default=0)
        if variant:
            s.add_argument("--variant", choices=("plain", "kappa"), default="plain")
        if report:
            s.add_argument("--report", metavar="PATH")
        s.set_defaults(func=fn)
        return s

    s = add("solve", cmd_solve, "deg Det of a pencil document")
    s.add_argument("--algorithm", choices=("sda", "sda-kappa", "relax"), default="sda")
    s.add_argument("--trials", type=int, default=0, help="also run the commutative oracle with this many substitutions")
    add("ncrank", cmd_ncrank, "nc-rank of a pencil with constant coefficients", report=False)
    s = add("smith", cmd_smith, "Smith-McMillan exponents of a matrix over K(t)", report=False)
    s.add_argument("--field", default='{"kind": "gfp", "p": 10007}', help="field spec for text matrices")
    s.add_argument("-v", "--verbose", action="store_true")
    add("subdet", cmd_subdet, "maximum deg Det over n x n column selections", report=False)
    add("matching", cmd_matching, "maximum-weight perfect matching", variant=True)
    add("matroid-base", cmd_matroid_base, "maximum-weight matroid base", variant=True)
    add("matroid-intersection", cmd_matroid_intersection, "weighted linear matroid intersection", variant=True)
    add("mixed", cmd_mixed, "deg det of a mixed polynomial matrix", variant=True)
    s = add("dae-index", cmd_dae_index, "index of the DAE given by a mixed system")
    s.add_argument("--delta", type=int, required=True, help="largest index of interest")
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return 1
    print(f"seed: {args.seed}", file=sys.stderr)
    try:
        return args.func(args)
    except (OSError, ParseError, json.JSONDecodeError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except DegDetError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


cli_main = main

if __name__ == "__main__":
    sys.exit(main())
