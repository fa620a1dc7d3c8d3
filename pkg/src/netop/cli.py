"""Command-line entry point: ``netop eval | check | apply-morphism``.

Exit status is 0 on success, 1 when a law check finds a counterexample and
2 for usage, parse and input errors (including unknown model or algebra ids).
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from . import oracle
from .algebra import ALGEBRA_KINDS, algebra_from_id, two_range_bound
from .errors import BudgetExceeded, NetopError
from .mutants import MUTANTS, BrokenOverlayModel, UnclampedBoundedAlgebra, compose_without_perm
from .netmodel import (GAMMA_BOOL_TO_SG, MGPLUS, SG, SG_TO_GAMMA_BOOL, MultigraphModel,
                       cutoff_morphism, support_morphism)
from .networks import SimpleGraph
from .serialize import (decode_network, dumps, dumps_element, encode_network, loads,
                        resolve_model)
from .term import Config, eval_term, parse_term, term_models

CHECK_KINDS = ("model", "thm3", "operad", "algebra", "morphism", "graphic")
MORPHISMS = ("sg-gamma", "gamma-sg", "support", "cutoff:<k>")


class UsageError(Exception):
    pass


def _given(value, default):
    return default if value is None else value


def _support(g) -> SimpleGraph:
    return SimpleGraph(g.n, frozenset(e for e, m in g.mult if m > 0))


def _params(pairs: Sequence[str]) -> dict:
    out = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise UsageError(f"--param expects key=value, got {pair!r}")
        out[key.strip()] = value.strip()
    return out


def _default_seed() -> int:
    raw = os.environ.get("NETOP_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"NETOP_SEED must be an integer, got {raw!r}") from None


def _morphism(ident: str):
    """``(morphism, inverse, expected_image)`` for a CLI morphism id."""
    if ident == "sg-gamma":
        return SG_TO_GAMMA_BOOL, GAMMA_BOOL_TO_SG, None
    if ident == "gamma-sg":
        return GAMMA_BOOL_TO_SG, SG_TO_GAMMA_BOOL, None
    if ident == "support":
        return support_morphism(), None, _support
    if ident.startswith("cutoff:"):
        try:
            k = int(ident[len("cutoff:"):])
        except ValueError:
            raise UsageError(f"bad cutoff level in {ident!r}") from None
        return cutoff_morphism(k), None, None
    raise UsageError(f"unknown morphism {ident!r}; expected one of {', '.join(MORPHISMS)}")


# -- subcommands -------------------------------------------------------------

def cmd_eval(args) -> int:
    text = sys.stdin.read() if args.file == "-" else open(args.file, encoding="utf-8").read()
    cfg = Config(args.model, args.algebra, _params(args.param), args.seed)
    term = parse_term(text)
    if cfg.model is None and cfg.algebra in ("canonical", "attributes"):
        cfg.model = term_models(term)[0].name
    algebra = cfg.build_algebra()
    result = eval_term(term, algebra)
    print(dumps_element(algebra.model, result))
    return 0


def _reports(args):
    kind = "model" if args.kind == "thm3" else args.kind
    seed = args.seed
    max_n = args.max_n if args.max_n is not None else args.budget
    samples = args.samples
    mode = "exhaustive" if args.exhaustive else "random"
    params = _params(args.param)

    if kind == "graphic":
        return oracle.check_graphic(_given(max_n, 4))

    if args.mutant is not None:
        if args.mutant == "broken-overlay":
            return oracle.check_model(BrokenOverlayModel(), _given(max_n, 3), mode, seed,
                                      _given(samples, 1000), args.cap)
        if args.mutant == "drop-perm":
            model = resolve_model(args.model or "sg")
            return oracle.check_operad(model, _given(max_n, 6), seed, _given(samples, 1000),
                                       args.cap, compose=compose_without_perm)
        bound = two_range_bound(params.get("L1", "2"), params.get("L2", "1"))
        return oracle.check_algebra(UnclampedBoundedAlgebra(bound), _given(max_n, 6), seed,
                                    _given(samples, 500), args.cap)

    if kind == "morphism":
        phi, inverse, expected = _morphism(args.morphism)
        return oracle.check_morphism(phi, _given(max_n, 4), mode, seed, _given(samples, 500),
                                     args.cap, inverse=inverse, expected=expected)
    if kind == "algebra":
        algebra_kind = args.algebra or "canonical"
        model = None if args.model is None else resolve_model(args.model)
        if algebra_kind in ("canonical", "attributes") and model is None:
            model = SG
        algebra = algebra_from_id(algebra_kind, model, params)
        return oracle.check_algebra(algebra, _given(max_n, 6), seed, _given(samples, 500), args.cap)

    if args.model is None:
        raise UsageError(f"check {args.kind} needs --model")
    model = resolve_model(args.model)
    if kind == "operad":
        return oracle.check_operad(model, _given(max_n, 6), seed, _given(samples, 1000), args.cap)
    default_n = 3 if mode == "exhaustive" else 6
    return oracle.check_model(model, _given(max_n, default_n), mode, seed,
                              _given(samples, 1000), args.cap)


def cmd_check(args) -> int:
    reports = _reports(args)
    for r in reports:
        print(r.to_json())
    return 0 if all(r.passed for r in reports) else 1


def cmd_apply_morphism(args) -> int:
    if len(args.operands) > 2 or args.operands[0] not in ("cutoff", "support"):
        raise UsageError("usage: netop apply-morphism {cutoff,support} [FILE] [--k K]")
    args.name = args.operands[0]
    args.file = args.operands[1] if len(args.operands) == 2 else "-"
    text = sys.stdin.read() if args.file == "-" else open(args.file, encoding="utf-8").read()
    model, net = decode_network(loads(text))
    if args.name == "cutoff":
        if args.k is None:
            raise UsageError("apply-morphism cutoff needs --k")
        phi = cutoff_morphism(args.k)
    else:
        phi = support_morphism()
    if not isinstance(model, MultigraphModel) or model.directed:
        raise UsageError(f"{args.name} applies to undirected multigraphs, not {model.name}")
    if model != MGPLUS:
        model, net = MGPLUS, MGPLUS._type(net.n, net.mult)
    print(dumps(encode_network(phi.target, phi(net))))
    return 0


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netop", description="Network models, their operads and algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate a term in an algebra")
    ev.add_argument("file", help="term file, or - for standard input")
    ev.add_argument("--model", help="model id (inferred from the term when omitted)")
    ev.add_argument("--algebra", default="canonical", choices=ALGEBRA_KINDS)
    ev.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                    help="algebra parameter, e.g. L=3/2 (repeatable)")
    ev.add_argument("--seed", type=int, default=None)
    ev.set_defaults(run=cmd_eval)

    ck = sub.add_parser("check", help="run a law-checking suite and print JSON-lines reports")
    ck.add_argument("kind", choices=CHECK_KINDS,
                    help="'thm3' is an alias of 'model' (the twelve model equations)")
    ck.add_argument("--model")
    size = ck.add_mutually_exclusive_group()
    size.add_argument("--max-n", type=int, dest="max_n",
                      help="largest type (vertex count) drawn or enumerated")
    size.add_argument("--budget", type=int, help="same as --max-n")
    ck.add_argument("--exhaustive", action="store_true")
    ck.add_argument("--samples", type=int)
    ck.add_argument("--seed", type=int, default=None)
    ck.add_argument("--cap", type=int, default=3,
                    help="largest multiplicity, label or arc weight drawn")
    ck.add_argument("--algebra", choices=ALGEBRA_KINDS)
    ck.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
    ck.add_argument("--morphism", default="sg-gamma", help=f"one of {', '.join(MORPHISMS)}")
    ck.add_argument("--mutant", choices=MUTANTS)
    ck.set_defaults(run=cmd_check)

    am = sub.add_parser("apply-morphism", help="push a multigraph (JSON) along a morphism")
    # FILE may also follow --k; main() folds such trailing operands back in
    am.add_argument("operands", nargs="+", metavar="{cutoff,support} [FILE]")
    am.add_argument("--k", type=int)
    am.set_defaults(run=cmd_apply_morphism)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args, extra = parser.parse_known_args(argv)
        if extra and getattr(args, "command", None) == "apply-morphism" \
                and not any(x.startswith("-") and x != "-" for x in extra):
            args.operands += extra
        elif extra:
            parser.error(f"unrecognized arguments: {' '.join(extra)}")
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = _default_seed()
        return args.run(args)
    except (UsageError, NetopError, ValueError, KeyError, OSError) as exc:
        hint = " (try a smaller --max-n)" if isinstance(exc, BudgetExceeded) else ""
        print(f"netop: {exc}{hint}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
