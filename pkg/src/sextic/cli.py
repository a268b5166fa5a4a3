"""Batch command line: ``sextic <subcommand> [options]``.

Exit codes: 0 on success, 1 when a verification target mismatches, 2 on input
errors or when coset enumeration hits its limit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources

from . import pipeline
from .fpgroup import DEFAULT_MAX_COSETS, LimitExceeded
from .maps import SkeletonSyntaxError
from .skeletons import enumerate_e7_models, export_models, load_model_text

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _max_cosets(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get("SEXTIC_MAX_COSETS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"SEXTIC_MAX_COSETS={env!r} is not an integer") from None
    return DEFAULT_MAX_COSETS


def _emit(report, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write(_as_text(report) + "\n")


def _as_text(report, indent: str = "") -> str:
    if isinstance(report, list):
        return "\n".join(_as_text(x, indent) for x in report)
    if isinstance(report, dict):
        lines = []
        for k in sorted(report):
            v = report[k]
            nested = isinstance(v, dict) or (isinstance(v, list) and v and isinstance(v[0], (dict, list)))
            if nested and v:
                lines.append(f"{indent}{k}:")
                lines.append(_as_text(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {v}")
        return "\n".join(lines) + ("\n" if not indent else "")
    return f"{indent}{report}"


def _read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None


# ------------------------------------------------------------- subcommands

def cmd_enumerate(args, out) -> int:
    _emit({"k": args.k, "models": export_models(enumerate_e7_models(args.k))}, args.format, out)
    return EXIT_OK


def _classification_report(max_cosets: int) -> dict:
    rows = pipeline.classify_e7(max_cosets)
    return {
        "point": "E7",
        "rows": [r.as_dict() for r in rows],
        "certificates": {str(r.row): r.certificates for r in rows},
        "total_classes": sum(r.total_classes for r in rows),
    }


def cmd_classify(args, out) -> int:
    if args.point != "E7":
        raise InputError(f"--point {args.point}: only E7 is classified")
    _emit(_classification_report(args.max_cosets), args.format, out)
    return EXIT_OK


def cmd_group(args, out) -> int:
    if args.skeleton:
        try:
            model = load_model_text(_read_text(args.skeleton))
        except (SkeletonSyntaxError, ValueError) as e:
            raise InputError(f"{args.skeleton}: {e}") from None
        _emit(pipeline.model_report(model, args.max_cosets), args.format, out)
        return EXIT_OK
    if args.row is None:
        raise InputError("group needs --row or --skeleton")
    try:
        facts = pipeline.group_facts(args.row, args.variant, args.source, args.verify_facts,
                                     args.max_cosets)
    except pipeline.UnknownRow as e:
        raise InputError(f"unknown row/variant: {e}") from None
    _emit(facts, args.format, out)
    if args.verify_facts and args.row == 1:
        expected = json.loads(resources.files("sextic").joinpath("data/row1_facts.json")
                              .read_text(encoding="utf-8"))["facts"]
        diff = _diff(expected, {k: facts.get(k) for k in expected}, "facts")
        for line in diff:
            print(line, file=sys.stderr)
        return EXIT_MISMATCH if diff else EXIT_OK
    return EXIT_OK


def cmd_perturb(args, out) -> int:
    if args.row != 1:
        raise InputError("perturbations are computed for row 1, the only nonabelian row")
    report = pipeline.perturbation_report(args.row, args.max_cosets)
    _emit({"row": args.row, "perturbations": report}, args.format, out)
    return EXIT_OK


def cmd_split(args, out) -> int:
    records = pipeline.split_analysis(include_non_stem=args.include_non_stem)
    _emit({"records": [r.as_dict() for r in records]}, args.format, out)
    return EXIT_OK


def _diff(expected, actual, path: str) -> list[str]:
    if isinstance(expected, dict) and isinstance(actual, dict):
        out = []
        for k in sorted(set(expected) | set(actual)):
            if k.startswith("_"):
                continue
            out += _diff(expected.get(k), actual.get(k), f"{path}.{k}")
        return out
    if isinstance(expected, list) and isinstance(actual, list) and len(expected) == len(actual):
        out = []
        for i, (e, a) in enumerate(zip(expected, actual)):
            out += _diff(e, a, f"{path}[{i}]")
        return out
    return [] if expected == actual else [f"{path}: expected {expected!r}, got {actual!r}"]


_TABLE_FIELDS = ("row", "set", "figure", "classes", "order", "s_perp")


def cmd_verify(args, out) -> int:
    if not args.table_e7:
        raise InputError("verify needs --table-e7 PATH (or 'bundled')")
    if args.table_e7 == "bundled":
        text = resources.files("sextic").joinpath("data/tab_e7.json").read_text(encoding="utf-8")
    else:
        text = _read_text(args.table_e7)
    try:
        golden = json.loads(text)["rows"]
    except (ValueError, KeyError, TypeError) as e:
        raise InputError(f"{args.table_e7}: not a table file ({e})") from None
    computed = [r.as_dict() for r in pipeline.classify_e7(args.max_cosets)]
    expected = [{k: g.get(k) for k in _TABLE_FIELDS} for g in golden]
    actual = [{k: c.get(k) for k in _TABLE_FIELDS} for c in computed]
    diff = _diff(expected, actual, "rows")
    if len(expected) != len(actual):
        diff.append(f"rows: expected {len(expected)} rows, got {len(actual)}")
    _emit({"table": args.table_e7, "match": not diff, "diff": diff}, args.format, out)
    return EXIT_MISMATCH if diff else EXIT_OK


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--max-cosets", type=int, default=None,
                        help=f"coset table limit (default {DEFAULT_MAX_COSETS}, "
                             "or $SEXTIC_MAX_COSETS)")
    common.add_argument("--seed", type=int, default=0,
                        help="accepted for reproducible batch scripts; all commands are deterministic")
    common.add_argument("--output", "-o", default=None, help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="sextic", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="list decorated E7 models")
    p.add_argument("--k", type=int, default=3)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("classify", parents=[common], help="classification table with groups")
    p.add_argument("--point", default="E7")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("group", parents=[common], help="group of a table row or a skeleton file")
    p.add_argument("--row", type=int)
    p.add_argument("--variant", type=int, default=1)
    p.add_argument("--source", choices=("paper", "assembled"), default="paper",
                   help="hand-derived relations or the presentation assembled from a model")
    p.add_argument("--skeleton", help="skeleton text file with a distinguished dart comment")
    p.add_argument("--verify-facts", action="store_true")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("perturb", parents=[common], help="orders after proper perturbations")
    p.add_argument("--row", type=int, default=1)
    p.set_defaults(func=cmd_perturb)

    p = sub.add_parser("split", parents=[common], help="reducible models with a stem")
    p.add_argument("--include-non-stem", action="store_true")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("verify", parents=[common], help="compare the classification to a table file")
    p.add_argument("--table-e7", metavar="PATH")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv=None, stdout=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    out = stdout or sys.stdout
    try:
        args.max_cosets = _max_cosets(args.max_cosets)
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                return args.func(args, fh)
        return args.func(args, out)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except LimitExceeded as e:
        print(f"inconclusive: {e}; raise --max-cosets", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
