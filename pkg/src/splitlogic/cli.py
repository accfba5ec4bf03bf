"""Command-line front end.

Exit codes: 0 success, 1 computed negative answer, 2 usage or parse error,
3 semantic error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence, TextIO

from .defaults import (
    build_preference,
    extract_defaults,
    format_defaults,
    graph_from_json,
    language_of,
    nm_consequence,
    parse_defaults,
)
from .errors import FormatError, SemanticError, UsageError
from .factorization import (
    brute_force_finest,
    finest_factorization,
    is_factorization,
    partition_from_json,
)
from .language import Language
from .logic import format_formula, models_of, parse_formula, vars_in_order
from .models import ModelSet, format_modelset, parse_modelset
from .recoding import apply_recoding, search_factorizing_recoding
from .revision import METRICS, metric_from_json, revise, revise_componentwise

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_SEMANTIC = 0, 1, 2, 3


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _language(vars_flag: str | None, formulas) -> Language:
    try:
        if vars_flag is not None:
            return Language(vars_flag.split())
        return Language(vars_in_order(formulas))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load_sets(args: Sequence[str], vars_flag: str | None) -> list[ModelSet]:
    """Each argument is a model-set file if it exists, otherwise an inline formula.

    Inline formulas share one language: ``--vars``, else the language of a
    file argument, else first-occurrence order over all formulas.
    """
    files = {a: parse_modelset(_read(a), a) for a in args if os.path.isfile(a)}
    formulas = {a: parse_formula(a) for a in args if a not in files}
    if vars_flag is not None or not files:
        lang = _language(vars_flag, formulas.values())
    else:
        lang = next(iter(files.values())).language
    return [files[a] if a in files else models_of(formulas[a], lang) for a in args]


def _modelset_json(X: ModelSet) -> dict:
    return {"vars": list(X.language.names), "models": X.bitstrings()}


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit JSON instead of text")
    common.add_argument("--vars", default=argparse.SUPPRESS,
                        help='language order for inline formulas, e.g. "p q r"')

    parser = _ArgumentParser(prog="splitlogic", parents=[common],
                             description="Model-set factorization, Hamming revision and preferential defaults.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    p = sub.add_parser("models", parents=[common], help="list the models of a formula")
    p.add_argument("formula")

    p = sub.add_parser("factorize", parents=[common], help="finest factorization")
    p.add_argument("source", help="model-set file or inline formula")

    p = sub.add_parser("check-partition", parents=[common], help="does a partition factorize a set")
    p.add_argument("source")
    p.add_argument("partition", help="partition JSON file")

    p = sub.add_parser("revise", parents=[common], help="Hamming revision of T by F")
    p.add_argument("--metric", choices=METRICS, default=None)
    p.add_argument("--weights", help="weights JSON file")
    p.add_argument("--partition", help="partition JSON file; revise blockwise")
    p.add_argument("theory")
    p.add_argument("input")

    p = sub.add_parser("defaults", parents=[common], help="preferential defaults")
    dsub = p.add_subparsers(dest="action", required=True, parser_class=_ArgumentParser)
    q = dsub.add_parser("compile", parents=[common], help="emit the preference graph")
    q.add_argument("file")
    q = dsub.add_parser("query", parents=[common], help="does phi |~ psi hold")
    q.add_argument("file")
    q.add_argument("phi")
    q.add_argument("psi")
    q = dsub.add_parser("extract", parents=[common], help="defaults that rebuild a graph")
    q.add_argument("graph")

    p = sub.add_parser("recode", parents=[common], help="search for a splitting recoding")
    rsub = p.add_subparsers(dest="action", required=True, parser_class=_ArgumentParser)
    q = rsub.add_parser("search", parents=[common])
    q.add_argument("--mode", choices=("full", "affine"), default="affine")
    q.add_argument("source")

    p = sub.add_parser("oracle", parents=[common], help="brute-force checks")
    osub = p.add_subparsers(dest="action", required=True, parser_class=_ArgumentParser)
    q = osub.add_parser("finest", parents=[common], help="finest factorization by exhaustion")
    q.add_argument("source")
    return parser


def _cmd_models(args, out: TextIO) -> int:
    f = parse_formula(args.formula)
    X = models_of(f, _language(args.vars, [f]))
    out.write(_dump(_modelset_json(X)) if args.json else format_modelset(X))
    return EXIT_OK


def _cmd_factorize(args, out: TextIO, oracle: bool = False) -> int:
    (X,) = _load_sets([args.source], args.vars)
    P = brute_force_finest(X) if oracle else finest_factorization(X)
    out.write(_dump(P.to_json()) if args.json else f"{P}\n")
    return EXIT_OK


def _cmd_check_partition(args, out: TextIO) -> int:
    (X,) = _load_sets([args.source], args.vars)
    P = partition_from_json(_read(args.partition), X.language)
    ok = is_factorization(X, P)
    out.write(_dump({"factorization": ok}) if args.json else ("yes\n" if ok else "no\n"))
    return EXIT_OK if ok else EXIT_NO


def _cmd_revise(args, out: TextIO) -> int:
    T, F = _load_sets([args.theory, args.input], args.vars)
    metric, weights = args.metric or "count", None
    if args.weights:
        file_metric, weights = metric_from_json(_read(args.weights), T.language)
        metric = args.metric or file_metric
    elif metric == "weighted":
        raise UsageError("--metric weighted needs --weights")
    if args.partition:
        P = partition_from_json(_read(args.partition), T.language)
        R = revise_componentwise(T, F, P, metric, weights)
    else:
        R = revise(T, F, metric, weights)
    out.write(_dump(_modelset_json(R)) if args.json else format_modelset(R))
    return EXIT_OK


def _defaults_language(ds, args, *formulas) -> Language:
    if args.vars is not None:
        return _language(args.vars, [])
    return language_of(ds, *formulas)


def _cmd_defaults(args, out: TextIO, err: TextIO) -> int:
    if args.action == "extract":
        G = graph_from_json(_read(args.graph))
        ds = extract_defaults(G)
        if args.json:
            out.write(_dump({"defaults": [
                {"label": d.label, "antecedent": format_formula(d.antecedent),
                 "consequent": format_formula(d.consequent)} for d in ds
            ]}))
        else:
            out.write(format_defaults(ds))
        return EXIT_OK
    ds = parse_defaults(_read(args.file), args.file)
    if args.action == "compile":
        G = build_preference(ds, _defaults_language(ds, args))
        for loop in G.loops():
            names = " ".join(G.language.format_code(c) for c in loop)
            err.write(f"note: preference loop among {names}\n")
        out.write(_dump(G.to_json()))
        return EXIT_OK
    phi, psi = parse_formula(args.phi), parse_formula(args.psi)
    ok = nm_consequence(ds, phi, psi, _defaults_language(ds, args, phi, psi))
    out.write(_dump({"holds": ok}) if args.json else ("yes\n" if ok else "no\n"))
    return EXIT_OK if ok else EXIT_NO


def _cmd_recode(args, out: TextIO) -> int:
    (X,) = _load_sets([args.source], args.vars)
    R = search_factorizing_recoding(X, args.mode)
    if R is None:
        out.write(_dump({"found": False}) if args.json else "not found\n")
        return EXIT_NO
    image = apply_recoding(X, R)
    if args.json:
        out.write(_dump({"found": True, "recoding": R.to_json(), "image": _modelset_json(image)}))
    else:
        out.write(json.dumps(R.to_json()) + "\n" + format_modelset(image))
    return EXIT_OK


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    if not argv or argv[0] in ("-h", "--help"):
        out.write(parser.format_help())
        return EXIT_OK if argv else EXIT_USAGE
    try:
        args = parser.parse_args(argv)
        args.json = getattr(args, "json", False)
        args.vars = getattr(args, "vars", None)
        if args.command == "models":
            return _cmd_models(args, out)
        if args.command == "factorize":
            return _cmd_factorize(args, out)
        if args.command == "check-partition":
            return _cmd_check_partition(args, out)
        if args.command == "revise":
            return _cmd_revise(args, out)
        if args.command == "defaults":
            return _cmd_defaults(args, out, err)
        if args.command == "recode":
            return _cmd_recode(args, out)
        if args.command == "oracle":
            return _cmd_factorize(args, out, oracle=True)
        raise UsageError(f"unknown command {args.command!r}")
    except (UsageError, FormatError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except SemanticError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_SEMANTIC
    except SystemExit as exc:  # argparse --help inside a subcommand
        return EXIT_OK if not exc.code else EXIT_USAGE


def main() -> None:
    sys.exit(run())
