"""Command-line interface.

Exit codes: 0 valid/ok, 1 invalid/fail, 2 unknown/inconclusive,
64 usage error, 65 parse error.
"""

from __future__ import annotations

import argparse
import sys

from .syntax import (
    Logic, LanguageError, ParseError,
    glivenko_translate, godel_translate, kolmogorov_translate, parse, render,
)
from .semantics import (
    ModelFormatError, builtin, format_model, forces, holds_in_model,
    parse_model, validate, BUILTIN_NAMES,
)
from .search import SearchConfig, find_countermodel
from .prover import Invalid, Unknown, Valid, decide
from .hilbert import ProofFormatError, check_proof, parse_proof
from .classical import (
    ClassicalModelFormatError, forces_classical, holds_in_classical_model,
    parse_classical_model, validate_classical,
)
from .suite import run_paper_suite

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 64
EXIT_PARSE = 65

_LOGIC_CHOICES = {"iel": Logic.IEL, "iel-": Logic.IELMINUS, "intk": Logic.INTK}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _read(path: str) -> str:
    with open(path) as fh:
        return fh.read()


def _load_any_model(path: str):
    """Model files are dispatched on their header: variant: means classical."""
    text = _read(path)
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip().lower()
        if line.startswith("variant:"):
            return parse_classical_model(text), True
        if line.startswith("logic:"):
            return parse_model(text), False
    raise ModelFormatError("model file has neither a 'logic:' nor a 'variant:' line")


def _emit_model(model, args) -> None:
    from .semantics import KripkeModel
    if isinstance(model, KripkeModel):
        sys.stdout.write(format_model(model))
    else:
        from .classical import format_classical_model
        sys.stdout.write(format_classical_model(model))
    if getattr(args, "dot", None):
        from .figures import model_to_dot
        with open(args.dot, "w") as fh:
            fh.write(model_to_dot(model))
        print(f"wrote {args.dot}")
    if getattr(args, "figure", None):
        from .figures import draw_model
        draw_model(model, args.figure)
        print(f"wrote {args.figure}")


def _cfg(args) -> SearchConfig:
    return SearchConfig(max_worlds=args.max_worlds,
                        time_budget=getattr(args, "time_budget", None))


def _cmd_parse(args) -> int:
    f = parse(" ".join(args.formula))
    print(render(f))
    if args.tree:
        print(repr(f))
    return EXIT_OK


def _cmd_decide(args) -> int:
    f = parse(" ".join(args.formula))
    verdict = decide(_LOGIC_CHOICES[args.logic], f, _cfg(args))
    if isinstance(verdict, Valid):
        print(f"valid in {args.logic}")
        return EXIT_OK
    if isinstance(verdict, Invalid):
        print(f"invalid in {args.logic}: fails at world {verdict.witness} of")
        _emit_model(verdict.countermodel, args)
        return EXIT_FAIL
    print(f"unknown: {verdict.reason}")
    return EXIT_UNKNOWN


def _cmd_countermodel(args) -> int:
    f = parse(" ".join(args.formula))
    got = find_countermodel(_LOGIC_CHOICES[args.logic], f, _cfg(args))
    if got is None:
        print(f"no countermodel with up to {args.max_worlds} worlds (inconclusive)")
        return EXIT_UNKNOWN
    model, witness = got
    print(f"fails at world {witness} of")
    _emit_model(model, args)
    return EXIT_FAIL


def _cmd_modelcheck(args) -> int:
    model, classical = _load_any_model(args.model)
    f = parse(" ".join(args.formula))
    if args.world is not None:
        holds = (forces_classical if classical else forces)(model, args.world, f)
        where = f"at world {args.world}"
    else:
        holds = (holds_in_classical_model if classical else holds_in_model)(model, f)
        where = "in the model"
    print(f"{render(f)} {'holds' if holds else 'fails'} {where}")
    return EXIT_OK if holds else EXIT_FAIL


def _cmd_validate(args) -> int:
    model, classical = _load_any_model(args.model)
    report = (validate_classical if classical else validate)(model)
    print(report)
    return EXIT_OK if report.ok else EXIT_FAIL


def _cmd_translate(args) -> int:
    f = parse(" ".join(args.formula))
    out = {"s4v": godel_translate, "glivenko": glivenko_translate,
           "kolmogorov": kolmogorov_translate}[args.target](f)
    print(render(out))
    return EXIT_OK


def _cmd_checkproof(args) -> int:
    proof = parse_proof(_read(args.proof))
    result = check_proof(proof)
    print(result)
    return EXIT_OK if result.ok else EXIT_FAIL


def _cmd_show_model(args) -> int:
    model = builtin(args.name)
    _emit_model(model, args)
    return EXIT_OK


def _cmd_paper_suite(args) -> int:
    report = run_paper_suite(report_path=args.report, figures_dir=args.figures,
                             max_worlds=args.max_worlds)
    print(report)
    if args.report:
        print(f"wrote {args.report}")
    return EXIT_OK if report.ok else EXIT_FAIL


def _add_formula_arg(p):
    p.add_argument("formula", nargs="+", help="formula in the ASCII syntax (quote it)")


def _add_model_output(p):
    p.add_argument("--dot", metavar="PATH", help="also write the model as a DOT graph")
    p.add_argument("--figure", metavar="PATH", help="also render the model with matplotlib")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="ielkit", description=__doc__,
                  formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a formula and print it canonically")
    p.add_argument("--tree", action="store_true", help="also print the AST")
    _add_formula_arg(p)
    p.set_defaults(fn=_cmd_parse)

    p = sub.add_parser("decide", help="decide validity; prints a countermodel if invalid")
    p.add_argument("--logic", choices=sorted(_LOGIC_CHOICES), required=True)
    p.add_argument("--max-worlds", type=int, default=4)
    p.add_argument("--time-budget", type=float, default=None, metavar="SECONDS")
    _add_model_output(p)
    _add_formula_arg(p)
    p.set_defaults(fn=_cmd_decide)

    p = sub.add_parser("countermodel", help="brute-force countermodel search (the oracle route)")
    p.add_argument("--logic", choices=sorted(_LOGIC_CHOICES), required=True)
    p.add_argument("--max-worlds", type=int, default=4)
    p.add_argument("--time-budget", type=float, default=None, metavar="SECONDS")
    _add_model_output(p)
    _add_formula_arg(p)
    p.set_defaults(fn=_cmd_countermodel)

    p = sub.add_parser("modelcheck", help="evaluate a formula over a model file")
    p.add_argument("model", help="model file (intuitionistic or classical)")
    p.add_argument("--world", type=int, default=None)
    _add_formula_arg(p)
    p.set_defaults(fn=_cmd_modelcheck)

    p = sub.add_parser("validate", help="check the frame conditions of a model file")
    p.add_argument("model")
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("translate", help="apply a syntactic translation")
    p.add_argument("--target", choices=("s4v", "glivenko", "kolmogorov"), required=True)
    _add_formula_arg(p)
    p.set_defaults(fn=_cmd_translate)

    p = sub.add_parser("checkproof", help="check a Hilbert proof file")
    p.add_argument("proof")
    p.set_defaults(fn=_cmd_checkproof)

    p = sub.add_parser("show-model", help="print one of the bundled models M1..M4")
    p.add_argument("name", choices=BUILTIN_NAMES)
    _add_model_output(p)
    p.set_defaults(fn=_cmd_show_model)

    p = sub.add_parser("paper-suite", help="run the bundled reproduction suite")
    p.add_argument("--report", metavar="PATH", help="write the TSV report here")
    p.add_argument("--figures", metavar="DIR",
                   help="directory for figures (defaults next to the report)")
    p.add_argument("--max-worlds", type=int, default=4)
    p.set_defaults(fn=_cmd_paper_suite)
    return top


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.fn(args)
    except (ParseError, LanguageError, ModelFormatError,
            ClassicalModelFormatError, ProofFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
