"""Command-line interface.

Exit codes: 0 when the formula holds (or the command succeeded), 1 when it
does not hold (or the reduction check disagrees), 2 on any usage, parse or
format error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .checker import Evaluator
from .model import ModelError, demo_model, load_model, save_model
from .parse import FormulaSyntaxError, parse_formula, render_formula
from .syntax import formula_length, fragment_of, language_name
from .ueg import DEFAULT_MAX_EDGES, GraphError, Variant, load_graph, reduction_check

OK, FAILS, ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _formula(args):
    if args.formula_file is not None:
        if args.formula is not None:
            raise UsageError("give the formula inline or with --formula-file, not both")
        text = _read(args.formula_file)
    elif args.formula is None:
        raise UsageError("no formula given")
    else:
        text = args.formula
    return parse_formula(text.strip())


def _emit_json(obj) -> None:
    print(json.dumps(obj, ensure_ascii=False))


def cmd_check(args) -> int:
    model = load_model(_read(args.model))
    f = _formula(args)
    model.check_world(args.world)
    result = Evaluator(model).holds(args.world, f)
    if args.json:
        _emit_json({
            "holds": result,
            "world": args.world,
            "formula": render_formula(f),
            "fragment": language_name(fragment_of(f)),
            "formula_length": formula_length(f),
        })
    else:
        print("true" if result else "false")
    return OK if result else FAILS


def cmd_truthset(args) -> int:
    model = load_model(_read(args.model))
    f = _formula(args)
    worlds = sorted(Evaluator(model).truth_set(f))
    if args.json:
        _emit_json({"formula": render_formula(f), "worlds": worlds})
    else:
        print(" ".join(worlds))
    return OK


def cmd_validate(args) -> int:
    model = load_model(_read(args.model))
    agents = len(model.capabilities)
    print(f"ok: {len(model.worlds)} worlds, {len(model.edges)} nonempty edges, {agents} agents")
    return OK


def cmd_ueg(args) -> int:
    graph = load_graph(_read(args.graph))
    variant = Variant(args.variant)
    max_edges = None if args.max_edges < 0 else args.max_edges
    result = reduction_check(graph, variant, max_edges)
    if args.json:
        _emit_json({
            "game": str(result.game),
            "logic": result.logic,
            "agree": result.agree,
            "variant": variant.value,
            "edges": len(graph.edges),
        })
    else:
        print(f"game: {result.game}")
        print(f"logic: {'true' if result.logic else 'false'}")
        print(f"agree: {'true' if result.agree else 'false'}")
    return OK if result.agree else FAILS


def cmd_demo(args) -> int:
    text = save_model(demo_model())
    if args.out is None or args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="episkill", description="Model checker for epistemic logic with skill updates.")
    sub = parser.add_subparsers(dest="command", required=True)

    def formula_args(p):
        p.add_argument("formula", nargs="?", help="formula text (see grammar.md)")
        p.add_argument("--formula-file", help="read the formula from this file instead")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("check", help="does the formula hold at a world?")
    p.add_argument("model", help="model JSON file")
    p.add_argument("world", help="world name")
    formula_args(p)
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("truthset", help="list the worlds where the formula holds")
    p.add_argument("model", help="model JSON file")
    formula_args(p)
    p.set_defaults(run=cmd_truthset)

    p = sub.add_parser("validate", help="load a model file and report problems")
    p.add_argument("model", help="model JSON file")
    p.set_defaults(run=cmd_validate)

    p = sub.add_parser("ueg", help="cross-check edge geography against its induced model")
    p.add_argument("graph", help="graph JSON file")
    p.add_argument("--variant", choices=[v.value for v in Variant], default=Variant.PLUS.value)
    p.add_argument("--max-edges", type=int, default=DEFAULT_MAX_EDGES,
                   help=f"refuse larger graphs (default {DEFAULT_MAX_EDGES}; negative disables the cap)")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(run=cmd_ueg)

    p = sub.add_parser("demo", help="write the five-world example model")
    p.add_argument("out", nargs="?", help="output path (default: stdout)")
    p.set_defaults(run=cmd_demo)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except (UsageError, FormulaSyntaxError, ModelError, GraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
