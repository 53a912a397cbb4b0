"""Command-line front door.

Every subcommand is a thin shell over a module operation: ``eval`` and
``check`` wrap the evaluator and the falsification search, ``emit`` and
``witness`` print the stored formula families, ``suite`` runs the checker
suites, and ``compile`` drives the sentence-to-solver-text pipeline.

Exit codes, fixed for scriptability:

  0  success / equation holds / suite passed
  1  counterexample found, suite failure, or external solver said invalid
  2  usage errors (bad flags, unknown names, unreadable files)
  3  parse errors in terms, equations, sentences, or fixture files
  4  semantic errors (unbound variables, ambient mismatches, compile
     preconditions, solver malfunction)
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
from pathlib import Path

from . import checker
from .checker import CheckError, check, default_strategies
from .compiler import (
    CompileError,
    compile_sentence,
    emit_solver_text,
    run_external_solver,
    stats,
)
from .fixtures import (
    FixtureError,
    format_assignment_fixture,
    format_subspace_fixture,
    parse_assignment_fixture,
)
from .formulas import (
    alpha,
    alpha_iter,
    beta,
    beta_witness,
    gamma_distinct_lines,
    named_equations,
    separation_equation,
    separation_witness,
)
from .linalg import DimensionMismatch, ScalarFormatError
from .sentences import parse_sentence
from .subspaces import AmbientMismatch
from .terms import (
    Equation,
    Evaluator,
    ParseError,
    UnboundVariableError,
    format_term,
    parse_equation,
    parse_term,
)

EXIT_OK = 0
EXIT_FALSIFIED = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_SEMANTIC = 4


class UsageError(ValueError):
    """Bad argument content that argparse cannot catch (unknown names)."""


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qlattice",
        description="exact workbench for the subspace lattices of complex n-space",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a term at a fixture assignment")
    p.add_argument("term", help="term text, e.g. '~(p ^ q) v r'")
    p.add_argument("--fixture", required=True, help="assignment fixture file")

    p = sub.add_parser("check", help="search for a counterexample to an equation")
    p.add_argument("equation", help="equation text, e.g. 'p ^ (q v r) = (p ^ q) v (p ^ r)'")
    p.add_argument("--ambient", type=int, required=True, help="dimension n of the space")
    p.add_argument("--samples", type=int, default=10_000, help="random assignments to try")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--coeff-bound", type=int, default=3, help="entry bound for random bases")

    p = sub.add_parser("emit", help="print a stored formula in the term grammar")
    p.add_argument(
        "name",
        help="alpha | beta | alpha-iter:M | gamma:K | separation:I | "
        + " | ".join(sorted(named_equations())),
    )

    p = sub.add_parser("witness", help="print a stored falsifying assignment as a fixture")
    p.add_argument("name", help="beta | separation:I")

    p = sub.add_parser("suite", help="run a verification suite and print its report")
    p.add_argument(
        "name",
        choices=[
            "lemma2",
            "lemma3",
            "separation",
            "laws",
            "meet-agreement",
            "transport",
            "gamma",
            "all",
        ],
    )
    p.add_argument("--samples", type=int, default=None, help="override the suite default")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-i", type=int, default=2, help="deepest separation level")
    p.add_argument("--coeff-bound", type=int, default=3)
    p.add_argument("--json", action="store_true", help="machine-readable report")

    p = sub.add_parser("compile", help="compile a sentence file to solver text")
    p.add_argument("path", help="file containing one sentence")
    p.add_argument("--n", type=int, required=True, help="ambient dimension")
    p.add_argument("--form", choices=["validity", "refutation"], default="validity")
    p.add_argument("--out", help="write solver text here instead of stdout")
    p.add_argument("--solve", action="store_true", help="also run an external solver")
    p.add_argument("--solver", help="solver command line (default: autodetect)")
    p.add_argument("--timeout", type=float, default=60.0, help="solver timeout in seconds")

    return parser


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc


def cmd_eval(args: argparse.Namespace) -> int:
    assignment = parse_assignment_fixture(_read(args.fixture))
    value = Evaluator(assignment).eval(parse_term(args.term))
    sys.stdout.write(format_subspace_fixture(value))
    print(f"# dim {value.dim}")
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    eq = parse_equation(args.equation)
    strategies = default_strategies(
        samples=args.samples, seed=args.seed, coeff_bound=args.coeff_bound
    )
    verdict = check(eq, args.ambient, strategies)
    print(verdict.summary())
    if verdict.counterexample is None:
        return EXIT_OK
    sys.stdout.write(verdict.counterexample.fixture())
    return EXIT_FALSIFIED


def _indexed(name: str, expected_key: str) -> int | None:
    """Parse 'key:INT' names; None when the key does not match."""
    key, sep, idx = name.partition(":")
    if key != expected_key:
        return None
    if not sep or not idx.lstrip("-").isdigit():
        raise UsageError(f"expected {expected_key}:INT, got {name!r}")
    return int(idx)


def cmd_emit(args: argparse.Namespace) -> int:
    name = args.name
    term = None
    if name == "alpha":
        term = alpha()
    elif name == "beta":
        term = beta()
    elif (m := _indexed(name, "alpha-iter")) is not None:
        term = alpha_iter(m)
    elif (k := _indexed(name, "gamma")) is not None:
        term = gamma_distinct_lines(k)
    if term is not None:
        print(format_term(term))
        return EXIT_OK

    if (i := _indexed(name, "separation")) is not None:
        eq = separation_equation(i)
    elif name in named_equations():
        eq = named_equations()[name]
    else:
        raise UsageError(f"unknown formula name {name!r}")
    print(f"{format_term(eq.lhs)} = {format_term(eq.rhs)}")
    return EXIT_OK


def cmd_witness(args: argparse.Namespace) -> int:
    if args.name == "beta":
        assignment = beta_witness()
    elif (i := _indexed(args.name, "separation")) is not None:
        assignment = separation_witness(i)
    else:
        raise UsageError(f"unknown witness name {args.name!r}")
    sys.stdout.write(format_assignment_fixture(assignment))
    return EXIT_OK


def cmd_suite(args: argparse.Namespace) -> int:
    samples = args.samples
    name = args.name
    if name == "lemma2":
        report = checker.run_lemma2_suite(
            samples=samples or 10_000, seed=args.seed, coeff_bound=args.coeff_bound
        )
    elif name == "lemma3":
        report = checker.run_lemma3_suite()
    elif name == "separation":
        report = checker.run_separation_suite(
            max_i=args.max_i,
            samples=samples or 1000,
            seed=args.seed,
            coeff_bound=args.coeff_bound,
        )
    elif name == "laws":
        report = checker.run_laws_suite(
            samples=samples or 10_000, seed=args.seed, coeff_bound=args.coeff_bound
        )
    elif name == "meet-agreement":
        report = checker.run_meet_agreement_suite(seed=args.seed)
    elif name == "transport":
        report = checker.run_transport_suite()
    elif name == "gamma":
        report = checker.run_gamma_suite()
    else:
        report = checker.run_all(
            samples=samples or 10_000,
            separation_samples=min(samples or 1000, 1000),
            seed=args.seed,
            max_i=args.max_i,
        )
    if args.json:
        print(json.dumps(report.as_dict(), indent=2))
    else:
        print("\n".join(report.lines()))
    return EXIT_OK if report.passed else EXIT_FALSIFIED


def cmd_compile(args: argparse.Namespace) -> int:
    sentence = parse_sentence(_read(args.path))
    real = compile_sentence(sentence, args.n)
    text = emit_solver_text(real, args.form)
    description = stats(real).describe()
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out}")
        print(description)
    else:
        sys.stdout.write(text)
        print(description, file=sys.stderr)
    if not args.solve:
        return EXIT_OK
    command = tuple(shlex.split(args.solver)) if args.solver else None
    result = run_external_solver(text, command, timeout_seconds=args.timeout)
    print(f"solver: {result.status}")
    if result.status == "invalid":
        return EXIT_FALSIFIED
    if result.status == "error":
        print(result.output.strip(), file=sys.stderr)
        return EXIT_SEMANTIC
    return EXIT_OK


_DISPATCH = {
    "eval": cmd_eval,
    "check": cmd_check,
    "emit": cmd_emit,
    "witness": cmd_witness,
    "suite": cmd_suite,
    "compile": cmd_compile,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed its message; keep main() in-process testable
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return _DISPATCH[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, FixtureError, ScalarFormatError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (
        UnboundVariableError,
        AmbientMismatch,
        DimensionMismatch,
        CompileError,
        CheckError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC


if __name__ == "__main__":
    raise SystemExit(main())
