"""Command-line front end.

Every global flag can be defaulted from the environment as ``QSUPER_<FLAG>``,
e.g. ``QSUPER_M=2`` or ``QSUPER_MAX_TERMS=100000``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .expr import ExprError, parse_expression
from .presentation import DEFAULT_MAX_STEPS, BudgetExceeded
from .suite import (
    ALL_SUITES,
    ConfigError,
    Report,
    VerificationConfig,
    _Runner,
    dumps_report,
    run_suite,
    validate_report,
)

ENV_PREFIX = "QSUPER_"


def _env(name: str, default, kind=str):
    raw = os.environ.get(ENV_PREFIX + name.upper())
    if raw is None:
        return default
    try:
        return kind(raw)
    except ValueError as exc:
        raise SystemExit(f"error: bad value for {ENV_PREFIX}{name.upper()}: {raw!r}") from exc


def _add_globals(g: argparse.ArgumentParser, suppress: bool = False):
    """Global flags; with ``suppress`` only explicitly given values are stored."""

    def d(value):
        return argparse.SUPPRESS if suppress else value

    g.add_argument("--m", type=int, default=d(_env("m", 1, int)), help="even block size")
    g.add_argument("--n", type=int, default=d(_env("n", 1, int)), help="odd block size")
    g.add_argument("--mode", choices=("classical", "quantum"), default=d(_env("mode", "quantum")))
    g.add_argument("--q", default=d(_env("q", "symbolic")), help="'symbolic' or a nonzero rational")
    g.add_argument("--json", nargs="?", const="-", default=d(_env("json", None)),
                   help="emit JSON; with a PATH, write it there instead of stdout")
    g.add_argument("--seed", type=int, default=d(_env("seed", 0, int)))
    g.add_argument("--max-terms", type=int, default=d(_env("max_terms", None, int)))
    g.add_argument("--max-steps", type=int, default=d(_env("max_steps", DEFAULT_MAX_STEPS, int)))
    return g


def build_parser() -> argparse.ArgumentParser:
    # globals are accepted before or after the subcommand
    g = _add_globals(argparse.ArgumentParser(add_help=False), suppress=True)
    parser = argparse.ArgumentParser(prog="qsuper", description="Quantum GL(m|n) verification engine")
    _add_globals(parser)
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[g], help="run verification suites")
    v.add_argument("--suites", default=",".join(ALL_SUITES), help="comma-separated subset of suites")
    v.add_argument("--allow-slow", action="store_true", help="permit runs near the feasibility edge")
    v.add_argument("--words", type=int, default=200, help="random words per PBW/scaling check")
    v.add_argument("--trials", type=int, default=100, help="random point pairs")
    v.add_argument("--triples", type=int, default=50, help="random point triples")
    v.add_argument("--grassmann", type=int, default=4, help="number of odd Grassmann units")

    for name, help_text in (("nf", "normal form of an expression"),
                            ("delta", "coproduct of an expression"),
                            ("antipode", "antipode of an expression")):
        s = sub.add_parser(name, parents=[g], help=help_text)
        s.add_argument("expr")

    qd = sub.add_parser("qdet", parents=[g], help="quantum determinant of a block or sub-view")
    qd.add_argument("--block", choices=("11", "22"), required=True)
    qd.add_argument("--rows", help="comma-separated row indices")
    qd.add_argument("--cols", help="comma-separated column indices")

    sub.add_parser("berezinian", parents=[g], help="print the Berezinian")
    sub.add_parser("invcheck", parents=[g], help="check the Berezinian inverse witness")

    co = sub.add_parser("coaction", parents=[g], help="comodule checks for a quantum superspace")
    co.add_argument("--dual", type=int, choices=(0, 1), default=0)

    pt = sub.add_parser("points", parents=[g], help="functor-of-points property run")
    pt.add_argument("--grassmann", type=int, default=4)
    pt.add_argument("--trials", type=int, default=100)
    pt.add_argument("--triples", type=int, default=50)
    return parser


def _config(args, **extra) -> VerificationConfig:
    return VerificationConfig(m=args.m, n=args.n, mode=args.mode, q=args.q, seed=args.seed,
                              max_terms=args.max_terms, max_steps=args.max_steps, **extra)


def _emit_report(args, report: Report) -> int:
    doc = report.to_json()
    validate_report(doc)
    if args.json:
        text = dumps_report(doc)
        if args.json == "-":
            print(text)
        else:
            with open(args.json, "w") as fh:
                fh.write(text + "\n")
            print(report.text())
    else:
        print(report.text())
    return report.exit_code


def _emit_value(args, src, value, to_text):
    if args.json:
        doc = {"input": src, "size": [args.m, args.n], "mode": args.mode,
               "q": _config(args).qmode().label(), "result": value.to_json()}
        text = json.dumps(doc, indent=2, sort_keys=True)
        if args.json == "-":
            print(text)
        else:
            with open(args.json, "w") as fh:
                fh.write(text + "\n")
            print(to_text(value))
    else:
        print(to_text(value))
    return 0


def _cmd_verify(args) -> int:
    suites = tuple(s.strip() for s in args.suites.split(",") if s.strip())
    cfg = _config(args, suites=suites, allow_slow=args.allow_slow, words=args.words,
                  trials=args.trials, triples=args.triples, grassmann=args.grassmann)
    return _emit_report(args, run_suite(cfg))


def _cmd_expr(args) -> int:
    from .hopf import antipode, hopf_maps
    from .localization import as_loc

    cfg = _config(args).validate()
    p = cfg.presentation()
    value = parse_expression(p, args.expr)
    if args.command == "delta":
        value = hopf_maps(p).delta(as_loc(p, value))
    elif args.command == "antipode":
        value = antipode(p, args.mode, as_loc(p, value))
    return _emit_value(args, args.expr, value, str)


def _cmd_qdet(args) -> int:
    from .determinants import QMatrixView, block_view, qdet

    p = _config(args).validate().presentation()
    v = block_view(p, args.block)
    rows = tuple(int(x) for x in args.rows.split(",")) if args.rows else v.rows
    cols = tuple(int(x) for x in args.cols.split(",")) if args.cols else v.cols
    value = qdet(p, QMatrixView(rows, cols, args.block))
    return _emit_value(args, f"qdet block {args.block} rows {rows} cols {cols}", value, str)


def _cmd_berezinian(args) -> int:
    from .localization import berezinian

    p = _config(args).validate().presentation()
    return _emit_value(args, "berezinian", berezinian(p, args.mode), str)


def _cmd_invcheck(args) -> int:
    from .localization import berezinian_inverse, berezinian_inverse_check

    cfg = _config(args, suites=("localization",)).validate()
    p = cfg.presentation()
    run = _Runner(cfg)

    def fn():
        ok = berezinian_inverse_check(p, args.mode)
        witness = None if ok else f"Ber^-1 = {berezinian_inverse(p, args.mode)}"
        return [(f"berezinian_inverse:{args.mode}", ok, witness)]

    run.unit("localization", fn, "berezinian_inverse")
    return _emit_report(args, run.report)


def _cmd_coaction(args) -> int:
    from .qspaces import build_qspace, check_comodule

    cfg = _config(args, suites=("qspaces",)).validate()
    p = cfg.presentation()
    run = _Runner(cfg)
    label = "dual" if args.dual else "primal"

    def fn():
        rep = check_comodule(p, build_qspace(p.m, p.n, bool(args.dual), p.qmode))
        return [(f"{label}:{axiom}", ok, witness) for axiom, ok, witness in rep.results]

    run.unit("qspaces", fn, label)
    return _emit_report(args, run.report)


def _cmd_points(args) -> int:
    cfg = _config(args, suites=("points",), trials=args.trials, triples=args.triples,
                  grassmann=args.grassmann)
    return _emit_report(args, run_suite(cfg))


_COMMANDS = {
    "verify": _cmd_verify,
    "nf": _cmd_expr,
    "delta": _cmd_expr,
    "antipode": _cmd_expr,
    "qdet": _cmd_qdet,
    "berezinian": _cmd_berezinian,
    "invcheck": _cmd_invcheck,
    "coaction": _cmd_coaction,
    "points": _cmd_points,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ConfigError, ExprError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
