"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 oracle mismatch,
3 resource limit reached.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Iterable, Sequence

from .bench import gen_random, hc_complete_text
from .coloring import Interpretation3
from .oracle import OracleLimitError, enumerate_answer_sets
from .program import ParseError, Program, format_program, parse_program
from .rdg import build_rdg, to_dot
from .semantics import fitting_lfp, well_founded_model
from .solver import SearchLimits, Strategy, solve, trace

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_LIMIT = 0, 1, 2, 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with status 2
        raise _UsageError(f"{self.prog}: error: {message}")


def format_atoms(atoms: Iterable[str]) -> str:
    return "{" + ", ".join(sorted(atoms)) + "}"


def format_interpretation(i: Interpretation3) -> str:
    return f"true: {format_atoms(i.x)}  false: {format_atoms(i.y)}"


def _read_program(path: str) -> Program:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return parse_program(text)


def _build_parser() -> _Parser:
    parser = _Parser(prog="rdgsolve", description="Answer sets via rule dependency graph colorings.")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="compute answer sets")
    s.add_argument("file", help="program file, or - for stdin")
    s.add_argument("--strategy", default="VI", choices=[st.value for st in Strategy])
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--all", dest="mode", action="store_const", const="all")
    mode.add_argument("--first", dest="mode", action="store_const", const="first")
    s.add_argument("--stats", action="store_true", help="print search statistics")
    s.add_argument("--trace", action="store_true", help="print a coloring sequence for each answer set")
    s.add_argument("--check-oracle", action="store_true", help="compare with brute-force enumeration")
    s.add_argument("--max-nodes", type=int, default=None, help="search node budget")
    s.add_argument("--debug", action="store_true", help="assert search invariants at every step")

    for name, text in (("wfs", "well-founded model"), ("fitting", "least fixpoint of Fitting's operator")):
        w = sub.add_parser(name, help=text)
        w.add_argument("file")

    gen = sub.add_parser("gen", help="generate benchmark programs")
    gsub = gen.add_subparsers(dest="family", required=True)
    hc = gsub.add_parser("hc", help="Hamiltonian cycles on the complete graph")
    hc.add_argument("n", type=int)
    rnd = gsub.add_parser("random", help="seeded random program")
    rnd.add_argument("seed", type=int)
    rnd.add_argument("atoms", type=int)
    rnd.add_argument("rules", type=int)
    rnd.add_argument("--max-pbody", type=int, default=2)
    rnd.add_argument("--max-nbody", type=int, default=2)

    r = sub.add_parser("rdg", help="print the rule dependency graph")
    r.add_argument("file")
    r.add_argument("--dot", action="store_true", help="emit Graphviz DOT")
    return parser


def _cmd_solve(args: argparse.Namespace, out) -> int:
    p = _read_program(args.file)
    strategy = Strategy.parse(args.strategy)
    result = solve(p, strategy, args.mode or "all", SearchLimits(max_nodes=args.max_nodes), debug=args.debug)
    if result.answers:
        for answer, coloring in result.answers:
            print(format_atoms(answer), file=out)
            if args.trace:
                seq = trace(p, strategy, coloring)
                for tag, step in seq.steps if seq else ():
                    print(f"  {tag or '-'}  {step}", file=out)
    elif result.complete:
        print("UNSATISFIABLE", file=out)
    if args.stats:
        print(result.stats, file=out)
    if not result.complete:
        print(f"rdgsolve: {result.limit_reason}", file=sys.stderr)
        return EXIT_LIMIT
    if args.check_oracle:
        try:
            expected = enumerate_answer_sets(p)
        except OracleLimitError as exc:
            print(f"rdgsolve: {exc}", file=sys.stderr)
            return EXIT_LIMIT
        got = result.answer_sets
        ok = got == expected if args.mode != "first" else (not expected and not got) or (got and got[0] in expected)
        if not ok:
            print(
                f"rdgsolve: oracle mismatch: expected {[format_atoms(x) for x in expected]}",
                file=sys.stderr,
            )
            return EXIT_MISMATCH
    return EXIT_OK


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "solve":
            return _cmd_solve(args, out)
        if args.command == "wfs":
            print(format_interpretation(well_founded_model(_read_program(args.file))), file=out)
        elif args.command == "fitting":
            print(format_interpretation(fitting_lfp(_read_program(args.file))), file=out)
        elif args.command == "gen":
            if args.family == "hc":
                out.write(hc_complete_text(args.n))
            else:
                out.write(format_program(gen_random(args.seed, args.atoms, args.rules, args.max_pbody, args.max_nbody)))
        elif args.command == "rdg":
            g = build_rdg(_read_program(args.file))
            if args.dot:
                out.write(to_dot(g))
            else:
                for rid in sorted(g.vertices):
                    print(f"r{rid}: {g.program.rule_text(rid)}", file=out)
                for label, edges in (("0", g.e0), ("1", g.e1)):
                    for a, b in sorted(edges):
                        print(f"r{a} -{label}-> r{b}", file=out)
        return EXIT_OK
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"rdgsolve: parse error at {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as exc:
        print(f"rdgsolve: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
