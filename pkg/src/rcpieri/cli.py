"""
Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 malformed input.

    python -m rcpieri perm 3,2,1
    python -m rcpieri schubert 2,1,3 --backend ddiff
    python -m rcpieri rc list 1,3,2 --render
    python -m rcpieri pieri insert '{"window":3,"crossings":[[1,1]]}' --r 2 --comp 0,1 --trace
    python -m rcpieri pieri expand 2,1,3 --r 2 --m 1
    python -m rcpieri pieri verify --n 4 --r 3 --m 3
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import verify as verify_mod
from .permutation import MalformedPermutation, Permutation, format_one_line, parse_one_line
from .pieri import AbSequence, PieriError, admissible_expansion, insert, inverse
from .polynomial import schubert_ddiff
from .rcgraph import (
    Composition,
    RcGraph,
    RcGraphParseError,
    bottom,
    compositions,
    enumerate_rc,
    enumerate_rc_by_words,
    parse,
    render,
    serialize,
)

EXIT_OK, EXIT_FAILED, EXIT_MALFORMED = 0, 1, 2


class InputError(ValueError):
    pass


def _perm(text: str) -> Permutation:
    try:
        return parse_one_line(text)
    except MalformedPermutation as exc:
        raise InputError(str(exc)) from None


def _graph(text: str) -> RcGraph:
    if text.startswith("@"):
        try:
            text = Path(text[1:]).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {text[1:]}: {exc.strerror}") from None
    try:
        return parse(text)
    except RcGraphParseError as exc:
        raise InputError(f"bad rc-graph: {exc}") from None


def _ints(text: str, what: str) -> tuple[int, ...]:
    try:
        values = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise InputError(f"{what} must be comma-separated integers, got {text!r}") from None
    if any(v < 0 for v in values):
        raise InputError(f"{what} entries must be non-negative")
    return values


def _ledger(text: str) -> AbSequence:
    # "2,3;2,4" -> ((2,3), (2,4))
    pairs = []
    for chunk in filter(None, (c.strip() for c in text.split(";"))):
        values = _ints(chunk, "ledger pair")
        if len(values) != 2:
            raise InputError(f"ledger pair needs two entries, got {chunk!r}")
        pairs.append(values)
    return AbSequence(tuple(pairs))


def _print_graph(D: RcGraph, show: bool, label: str = "graph"):
    print(f"{label}: {serialize(D)}")
    if show:
        print(render(D))


# -- subcommands ---------------------------------------------------------

def cmd_perm(args) -> int:
    w = _perm(args.perm)
    n = len(w.window)
    print(f"permutation: {format_one_line(w, n)}")
    print(f"length: {w.length()}")
    print(f"code: {','.join(map(str, w.lehmer_code()))}")
    print(f"inverse: {format_one_line(w.inverse(), n)}")
    return EXIT_OK


def cmd_schubert(args) -> int:
    w = _perm(args.perm)
    if args.check:
        rep = verify_mod.check_schubert_backends(w)
        print(rep.to_text())
        return EXIT_OK if rep.passed else EXIT_FAILED
    if args.backend == "ddiff":
        poly = schubert_ddiff(w)
    else:
        poly = verify_mod.schubert_rc(w)
    print(poly)
    return EXIT_OK


def cmd_rc(args) -> int:
    w = _perm(args.perm)
    if args.action == "bottom":
        graphs = [bottom(w)]
    elif args.words:
        graphs = enumerate_rc_by_words(w)
    else:
        graphs = enumerate_rc(w)
    for k, D in enumerate(graphs):
        if args.render and k:
            print()
        print(serialize(D.with_window(max(D.window, w.size))))
        if args.render:
            print(render(D.with_window(max(D.window, w.size))))
    return EXIT_OK


def cmd_pieri(args) -> int:
    return {
        "insert": _pieri_insert,
        "invert": _pieri_invert,
        "expand": _pieri_expand,
        "verify": _pieri_verify,
    }[args.action](args)


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise InputError(f"pieri {args.action} needs --{name}")


def _pieri_insert(args) -> int:
    _need(args, "r")
    if not args.target:
        raise InputError("pieri insert needs an rc-graph argument")
    D = _graph(args.target)
    if not D.is_reduced():
        raise InputError(f"{serialize(D)} is not a reduced rc-graph")
    if args.all:
        _need(args, "m")
        comps = compositions(args.m, args.r)
    else:
        _need(args, "comp")
        parts = _ints(args.comp, "--comp")
        if len(parts) != args.r:
            raise InputError(f"--comp needs exactly r={args.r} parts")
        comps = [Composition(parts)]
    for k, comp in enumerate(comps):
        if len(comps) > 1:
            if k:
                print()
            print(f"comp: {comp}")
        res = insert(D, args.r, comp, verify=args.debug)
        if args.trace:
            for line in res.trace:
                print(line)
        _print_graph(res.graph, args.render)
        print(f"ledger: {res.ledger}")
        print(f"permutation: {format_one_line(res.graph.permutation())}")
    return EXIT_OK


def _pieri_invert(args) -> int:
    _need(args, "w", "r")
    if not args.target:
        raise InputError("pieri invert needs an rc-graph argument")
    Dp = _graph(args.target)
    if not Dp.is_reduced():
        raise InputError(f"{serialize(Dp)} is not a reduced rc-graph")
    w = _perm(args.w)
    if args.ledger is not None:
        ledger = _ledger(args.ledger)
    else:
        wp = Dp.permutation()
        m = args.m if args.m is not None else wp.length() - w.length()
        matches = [led for cand, led in admissible_expansion(w, args.r, m) if cand == wp]
        if not matches:
            raise InputError(f"{format_one_line(wp)} does not occur in P_w h_{m}(x1..x{args.r})")
        ledger = matches[0]
    try:
        D, comp, log = inverse(Dp, w, args.r, ledger, verify=args.debug)
    except (ValueError, PieriError) as exc:
        raise InputError(str(exc)) from None
    if args.trace:
        for line in log:
            print(line)
    _print_graph(D.with_window(max(D.window, len(w.window))), args.render)
    print(f"comp: {comp}")
    return EXIT_OK


def _pieri_expand(args) -> int:
    _need(args, "r", "m")
    if not args.target:
        raise InputError("pieri expand needs a permutation argument")
    w = _perm(args.target)
    terms = admissible_expansion(w, args.r, args.m)
    if args.ledgers:
        for wp, led in terms:
            print(f"[{format_one_line(wp)}] {led}")
    else:
        print("; ".join(f"[{format_one_line(wp)}]" for wp, _ in terms))
    return EXIT_OK


def _pieri_verify(args) -> int:
    _need(args, "r", "m")
    if args.w is not None:
        w = _perm(args.w)
        reports = []
        if not args.bijection:
            reports.append(verify_mod.check_pieri_identity(w, args.r, args.m))
        if not args.identity:
            reports.append(verify_mod.check_bijection(w, args.r, args.m, verify=args.debug))
    else:
        _need(args, "n")
        reports = verify_mod.sweep(args.n, args.r, args.m, verify=args.debug, workers=args.workers)
        if args.bijection:
            reports = [r for r in reports if any(c.name == "injective" for c in r.checks)]
        elif args.identity:
            reports = [r for r in reports if not any(c.name == "injective" for c in r.checks)]
    for rep in reports:
        if args.json:
            print(rep.to_json(elapsed=args.timing))
        elif args.verbose or not rep.passed:
            print(rep.to_text())
    if not args.json:
        print(verify_mod.summarize(reports))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


# -- argument parsing ----------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rcpieri",
        description="rc-graphs, Schubert polynomials and the Pieri insertion bijection",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("perm", help="length, Lehmer code and inverse of a permutation")
    p.add_argument("perm", help="one-line notation, e.g. 3,2,1,5,4")
    p.set_defaults(func=cmd_perm)

    p = sub.add_parser("schubert", help="Schubert polynomial of a permutation")
    p.add_argument("perm")
    p.add_argument("--backend", choices=("rc", "ddiff"), default="rc")
    p.add_argument("--check", action="store_true", help="compare both backends")
    p.set_defaults(func=cmd_schubert)

    p = sub.add_parser("rc", help="rc-graphs of a permutation")
    p.add_argument("action", choices=("list", "bottom"))
    p.add_argument("perm")
    p.add_argument("--render", action="store_true")
    p.add_argument("--words", action="store_true", help="enumerate via compatible sequences")
    p.set_defaults(func=cmd_rc)

    p = sub.add_parser("pieri", help="insertion, inverse, expansion and sweeps")
    p.add_argument("action", choices=("insert", "invert", "expand", "verify"))
    p.add_argument("target", nargs="?", help="rc-graph JSON (or @file), or a permutation for expand")
    p.add_argument("--r", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int, help="sweep all of S_n")
    p.add_argument("--w", help="base permutation")
    p.add_argument("--comp", help="row counts k1,...,kr")
    p.add_argument("--ledger", help="pairs as 'a,b;a,b;...'")
    p.add_argument("--ledgers", action="store_true", help="expand: show each ledger")
    p.add_argument("--all", action="store_true", help="insert every composition of --m")
    p.add_argument("--trace", action="store_true", help="print the insertion event log")
    p.add_argument("--render", action="store_true")
    p.add_argument("--debug", action="store_true", help="per-step invariant checks")
    p.add_argument("--json", action="store_true", help="JSON lines output for verify")
    p.add_argument("--verbose", action="store_true", help="print passing reports too")
    p.add_argument("--timing", action="store_true", help="include elapsed seconds in JSON")
    p.add_argument("--workers", type=int, default=None)
    only = p.add_mutually_exclusive_group()
    only.add_argument("--bijection", action="store_true", help="verify: bijection checks only")
    only.add_argument("--identity", action="store_true", help="verify: polynomial identity only")
    p.set_defaults(func=cmd_pieri)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("r", "m", "n"):
        value = getattr(args, name, None)
        if value is not None and value < (0 if name == "m" else 1):
            print(f"rcpieri: error: --{name} out of range: {value}", file=sys.stderr)
            return EXIT_MALFORMED
    try:
        return args.func(args)
    except InputError as exc:
        print(f"rcpieri: error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
