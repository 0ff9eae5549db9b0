"""Command-line surface: train, predict, evaluate, explain, whatif,
recommend, generate, serve.

Exit codes: 0 success, 1 usage error, 2 data/validation error, 3 internal
error. File writes are atomic (temp file + rename).

Instance micro-grammar for --input/--set: comma-separated name=value
pairs; `?` means missing; a backslash escapes the next character (so
values may contain commas as `\\,` and backslashes as `\\\\`). Example:
    --input "skill=high,experience=junior"
"""

from __future__ import annotations

import argparse
import os
import sys

from .classifier import TrainConfig, predict, prediction_to_doc, train
from .data import MISSING, dataset_to_csv, load_dataset
from .errors import DataError, TalentBayesError
from .evaluation import cross_validate, evaluate, render_report, report_to_doc
from .insight import (attribute_influence_from_model, extract_rules,
                      influence_to_doc, render_rule, rules_to_doc, what_if,
                      whatif_to_doc)
from .model_io import (canonical_json, load_model, model_fingerprint,
                       save_model, write_atomic)
from .schema import NUMERIC, AttributeSchema, parse_schema
from .staffing import load_pool, recommend_team, render_team, team_to_doc
from .synthgen import generate, parse_generative_spec

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3

PORT_ENV_VAR = "TALENTBAYES_PORT"
DEFAULT_PORT = 8000


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 instead of argparse's default 2
        raise _UsageError(message)


def split_unescaped(text: str, separator: str) -> list[str]:
    """Split on separator; a backslash escapes the next character."""
    parts, current, escaped = [], [], False
    for ch in text:
        if escaped:
            current.append(ch)
            escaped = False
        elif ch == "\\":
            escaped = True
        elif ch == separator:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    if escaped:
        raise DataError("dangling backslash escape")
    parts.append("".join(current))
    return parts


def parse_assignment(pair: str, schema: AttributeSchema):
    name, sep, raw = pair.partition("=")
    if not sep:
        raise DataError(f"expected name=value, got {pair!r}")
    name = name.strip()
    spec = schema.attribute(name)
    if raw == "?":
        return name, MISSING
    if spec.kind == NUMERIC:
        try:
            return name, float(raw)
        except ValueError:
            raise DataError(f"attribute {name!r} is numeric but got {raw!r}") from None
    return name, raw


def parse_input_values(text: str, schema: AttributeSchema) -> dict:
    values = {}
    for pair in split_unescaped(text, ","):
        if not pair.strip():
            continue
        name, value = parse_assignment(pair, schema)
        values[name] = value
    return values


def _print_doc(doc: dict) -> None:
    print(canonical_json(doc))


def _render_prediction(pred) -> str:
    lines = [f"label: {pred.label}"]
    for label, p in pred.posterior.items():
        lines.append(f"  {label}  {p:.4f}")
    return "\n".join(lines)


def _cmd_train(args) -> int:
    schema = parse_schema(_read(args.schema))
    dataset = load_dataset(_read(args.data), schema, labeled=True)
    model = train(dataset, TrainConfig(alpha=args.alpha))
    save_model(model, args.out)
    report = dataset.cleaning_report
    if args.format == "json":
        _print_doc({"model": args.out, "fingerprint": model_fingerprint(model),
                    "n": model.n, "rows_dropped": report.rows_dropped})
    else:
        print(f"trained on {model.n} instances (dropped {report.rows_dropped}); "
              f"model written to {args.out}")
        for note in report.notes:
            print(f"note: {note}")
    return EXIT_OK


def _cmd_predict(args) -> int:
    model = load_model(args.model)
    if args.input is not None:
        pred = predict(model, parse_input_values(args.input, model.schema))
        if args.format == "json":
            _print_doc(prediction_to_doc(pred))
        else:
            print(_render_prediction(pred))
        return EXIT_OK
    pool = load_pool(_read(args.pool), model.schema)
    predictions = [(c.id, predict(model, c.values)) for c in pool]
    if args.format == "json":
        _print_doc({"predictions": [{"id": cid, **prediction_to_doc(p)}
                                    for cid, p in predictions]})
    else:
        for cid, pred in predictions:
            posterior = "  ".join(f"{label}={p:.4f}"
                                  for label, p in pred.posterior.items())
            print(f"{cid}: label={pred.label}  {posterior}")
    return EXIT_OK


def _cmd_evaluate(args) -> int:
    if args.model is not None:
        if args.folds is not None:
            raise _UsageError("--folds cannot be combined with --model")
        model = load_model(args.model)
        dataset = load_dataset(_read(args.data), model.schema, labeled=True)
        report = evaluate(model, dataset)
    else:
        if args.schema is None or args.folds is None:
            raise _UsageError("cross-validation needs --schema and --folds (or pass --model)")
        schema = parse_schema(_read(args.schema))
        dataset = load_dataset(_read(args.data), schema, labeled=True)
        report = cross_validate(dataset, args.folds, args.seed, TrainConfig(alpha=args.alpha))
    if args.format == "json":
        _print_doc(report_to_doc(report))
    else:
        print(render_report(report))
    return EXIT_OK


def _cmd_explain(args) -> int:
    model = load_model(args.model)
    rules = extract_rules(model)
    if args.top_k is not None:
        rules = rules[:args.top_k]
    ranking = attribute_influence_from_model(model)
    if args.format == "json":
        _print_doc({**rules_to_doc(rules), **influence_to_doc(ranking)})
    else:
        print("rules:")
        for rule in rules:
            print(render_rule(rule))
        print()
        print("attribute influence (bits of mutual information):")
        for name, mi in ranking.entries:
            print(f"  {name}  {mi:.4f}")
    return EXIT_OK


def _cmd_whatif(args) -> int:
    model = load_model(args.model)
    values = parse_input_values(args.input, model.schema)
    attribute, new_value = parse_assignment(args.set, model.schema)
    result = what_if(model, values, attribute, new_value)
    if args.format == "json":
        _print_doc(whatif_to_doc(result))
    else:
        old = "?" if result.old_value is MISSING else result.old_value
        new = "?" if result.new_value is MISSING else result.new_value
        print(f"{attribute}: {old} -> {new}")
        print(f"before: {result.before.label}  after: {result.after.label}")
        for label in model.schema.class_labels:
            print(f"  {label}  {result.before.posterior[label]:.4f} -> "
                  f"{result.after.posterior[label]:.4f}  (delta {result.delta[label]:+.4f})")
    return EXIT_OK


def _cmd_recommend(args) -> int:
    model = load_model(args.model)
    pool = load_pool(_read(args.pool), model.schema)
    team = recommend_team(model, pool, args.team_size, args.target, args.threshold)
    if args.format == "json":
        _print_doc(team_to_doc(team))
    else:
        print(render_team(team))
    return EXIT_OK


def _cmd_generate(args) -> int:
    spec = parse_generative_spec(_read(args.spec))
    dataset = generate(spec, args.n, args.seed, correlated=args.correlated)
    write_atomic(args.out, dataset_to_csv(dataset))
    if args.format == "json":
        _print_doc({"rows": len(dataset.instances), "out": args.out,
                    "missing_cells": dataset.cleaning_report.missing_cells})
    else:
        print(f"wrote {len(dataset.instances)} rows to {args.out}")
    return EXIT_OK


def _cmd_serve(args) -> int:
    from .service import run_server

    model = load_model(args.model)
    port = args.port
    if port is None:
        env = os.environ.get(PORT_ENV_VAR)
        port = int(env) if env else DEFAULT_PORT
    run_server(model, port)
    return EXIT_OK


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _add_format(parser) -> None:
    parser.add_argument("--format", choices=("text", "json"), default="text",
                        help="output format (default: text)")


def build_parser() -> _Parser:
    parser = _Parser(prog="talentbayes",
                     description="Naive Bayes decision support for project staffing")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("train", help="train a model from a labeled CSV")
    p.add_argument("--data", required=True, help="labeled CSV file")
    p.add_argument("--schema", required=True, help="schema JSON file")
    p.add_argument("--out", required=True, help="model file to write")
    p.add_argument("--alpha", type=float, default=1.0, help="Laplace pseudo-count (default 1.0)")
    _add_format(p)
    p.set_defaults(handler=_cmd_train)

    p = sub.add_parser("predict", help="predict one instance or a pool CSV")
    p.add_argument("--model", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--input", help='instance, e.g. "skill=high,experience=?"')
    group.add_argument("--pool", help="pool CSV with an id column")
    _add_format(p)
    p.set_defaults(handler=_cmd_predict)

    p = sub.add_parser("evaluate", help="resubstitution or k-fold evaluation")
    p.add_argument("--model")
    p.add_argument("--data", required=True)
    p.add_argument("--schema")
    p.add_argument("--folds", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alpha", type=float, default=1.0)
    _add_format(p)
    p.set_defaults(handler=_cmd_evaluate)

    p = sub.add_parser("explain", help="classification rules and attribute influence")
    p.add_argument("--model", required=True)
    p.add_argument("--top-k", type=int, dest="top_k", help="limit the rule list")
    _add_format(p)
    p.set_defaults(handler=_cmd_explain)

    p = sub.add_parser("whatif", help="re-predict with one attribute changed")
    p.add_argument("--model", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--set", required=True, help='perturbation, e.g. "skill=high"')
    _add_format(p)
    p.set_defaults(handler=_cmd_whatif)

    p = sub.add_parser("recommend", help="recommend a team from a pool CSV")
    p.add_argument("--model", required=True)
    p.add_argument("--pool", required=True)
    p.add_argument("--team-size", type=int, required=True, dest="team_size")
    p.add_argument("--target", help="target class (default: first declared label)")
    p.add_argument("--threshold", type=float, help="minimum posterior to be recommended")
    _add_format(p)
    p.set_defaults(handler=_cmd_recommend)

    p = sub.add_parser("generate", help="sample synthetic data from a generator spec")
    p.add_argument("--spec", required=True, help="generator spec JSON file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=None, help="default: the spec's seed")
    p.add_argument("--correlated", action="store_true",
                   help="couple the attribute draws (robustness demos)")
    p.add_argument("--out", required=True)
    _add_format(p)
    p.set_defaults(handler=_cmd_generate)

    p = sub.add_parser("serve", help="serve the HTTP API for a model")
    p.add_argument("--model", required=True)
    p.add_argument("--port", type=int, default=None,
                   help=f"default: ${PORT_ENV_VAR} or {DEFAULT_PORT}")
    p.set_defaults(handler=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return exc.code or EXIT_OK
    if getattr(args, "handler", None) is None:
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    try:
        return args.handler(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TalentBayesError, FileNotFoundError, IsADirectoryError, PermissionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except BrokenPipeError:
        return EXIT_OK
    except Exception as exc:  # invariant breach
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
