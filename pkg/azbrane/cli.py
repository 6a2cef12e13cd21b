"""
Command-line front end.

Every subcommand reads a JSON payload (``--input FILE``, default stdin; some
commands also take their payload as JSON-valued flags) and
writes canonical JSON to stdout. Exit codes: 0 success, 1 domain error,
2 malformed input.
"""
import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from rich.console import Console
from rich.table import Table

from .config import APP_NAME, APP_VERSION
from .errors import AzbraneError, MalformedInput
from .services import commands, scenarios
from .services.codec import canonical_json
from .utils.logger import get_logger

logger = get_logger(__name__)

SIMPLE_COMMANDS = (
    "rep-check",
    "image",
    "support",
    "pushforward",
    "surrogate",
    "hilbert-chow",
    "conjugate",
    "jordan",
    "orbit-compare",
    "orbit-extremes",
)
TORUS_COMMANDS = ("class", "cycle", "amalgamate", "slag", "cancel", "merge", "validate-profile")
KAHLER_COMMANDS = ("trace", "pullback")


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", default="-", help="JSON payload file, or - for stdin")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized procedures")
    common.add_argument("--degree-bound", type=int, default=None, help="degree bound for vanishing ideals")
    common.add_argument("--format", choices=("json", "text"), default="json")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(prog="azbrane", description=APP_NAME)
    parser.add_argument("--version", action="version", version=f"%(prog)s {APP_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in SIMPLE_COMMANDS:
        sub.add_parser(name, parents=[common], help=commands.COMMANDS[name].summary)

    higgs = sub.add_parser("higgsing", parents=[common], help=commands.COMMANDS["higgsing"].summary)
    higgs.add_argument("action", nargs="?", choices=("solve",), default="solve")
    higgs.add_argument("--A", dest="a", help="JSON 2x2 polynomial matrix")
    higgs.add_argument("--lambda", dest="lam", help="nonzero Gaussian rational")
    higgs.add_argument("--bhat", nargs=4, help="four Gaussian rationals")

    weyl = sub.add_parser("weyl-check", parents=[common], help=commands.COMMANDS["weyl-check"].summary)
    weyl.add_argument("--cap", type=int, default=None)
    weyl.add_argument("--rank", type=int, default=1)

    curve = sub.add_parser("spectral-curve", parents=[common], help=commands.COMMANDS["spectral-curve"].summary)
    curve.add_argument("--phi", help="JSON polynomial matrix")
    curve.add_argument("--vars", nargs="+", help="base variables of phi")
    curve.add_argument("--points", help="JSON list of base points to check")

    groups = {}
    for group, names in (("torus", TORUS_COMMANDS), ("kahler", KAHLER_COMMANDS)):
        group_parser = sub.add_parser(group, help=f"{group} subcommands")
        group_sub = group_parser.add_subparsers(dest="action", required=True)
        for name in names:
            groups[f"{group}-{name}"] = group_sub.add_parser(
                name, parents=[common], help=commands.COMMANDS[f"{group}-{name}"].summary
            )
    groups["kahler-trace"].add_argument("--form", help="JSON formal form")
    pullback = groups["kahler-pullback"]
    pullback.add_argument("--phi", help="JSON morphism to affine space")
    pullback.add_argument("--form", help="JSON classical form terms")
    pullback.add_argument("--function", help="JSON polynomial on the target; pulls back its differential")

    scenario = sub.add_parser("scenario", help="bundled worked examples")
    scenario_sub = scenario.add_subparsers(dest="action", required=True)
    for name in ("list", "run", "run-all"):
        p = scenario_sub.add_parser(name, parents=[common])
        p.add_argument("--corpus", type=Path, default=None)
        if name == "run":
            p.add_argument("name")
    return parser


def _read_payload(source: str):
    try:
        text = sys.stdin.read() if source == "-" else Path(source).read_text(encoding="utf-8")
        return json.loads(text)
    except OSError as e:
        raise MalformedInput(f"cannot read {source}: {e}")
    except json.JSONDecodeError as e:
        raise MalformedInput(f"invalid JSON: {e}")


def _command_id(args: argparse.Namespace) -> str:
    if args.command in ("torus", "kahler"):
        return f"{args.command}-{args.action}"
    return args.command


def _json_flag(flag: str, value: str):
    try:
        return json.loads(value)
    except json.JSONDecodeError as e:
        raise MalformedInput(f"{flag} is not JSON: {e}")


def _payload(args: argparse.Namespace):
    name = _command_id(args)
    if name == "weyl-check":
        return {"cap": args.cap, "rank": args.rank}
    if name == "higgsing" and args.a is not None:
        payload = {"A": _json_flag("--A", args.a), "lambda": args.lam if args.lam is not None else 1}
        if args.bhat:
            payload["bhat"] = list(args.bhat)
        return payload
    if name == "spectral-curve" and args.phi is not None:
        payload = {"phi": _json_flag("--phi", args.phi)}
        if args.vars:
            payload["vars"] = list(args.vars)
        if args.points is not None:
            payload["points"] = _json_flag("--points", args.points)
        return payload
    if name == "kahler-trace" and args.form is not None:
        return {"form": _json_flag("--form", args.form)}
    if name == "kahler-pullback" and args.phi is not None:
        payload = {"phi": _json_flag("--phi", args.phi)}
        if args.form is not None:
            payload["form"] = _json_flag("--form", args.form)
        if args.function is not None:
            payload["function"] = _json_flag("--function", args.function)
        return payload
    return _read_payload(args.input)


def _emit(result: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(canonical_json(result) + "\n")
        return
    table = Table(show_header=False)
    for key in sorted(result):
        table.add_row(key, canonical_json(result[key]))
    Console(file=out).print(table)


def _run_scenarios(args: argparse.Namespace):
    if args.action == "list":
        return 0, {"scenarios": [{"name": s.name, "command": s.command} for s in scenarios.load_corpus(args.corpus)]}
    if args.action == "run":
        result = scenarios.run_scenario(scenarios.find(args.name, args.corpus))
        return (0 if result.passed else 1), result.to_json()
    results = scenarios.run_all(args.corpus)
    failed = [r.name for r in results if not r.passed]
    summary = {
        "passed": len(results) - len(failed),
        "failed": failed,
        "results": [{"name": r.name, "passed": r.passed} for r in results],
    }
    return (0 if not failed else 1), summary


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    fmt = getattr(args, "format", "json")
    try:
        if args.command == "scenario":
            code, result = _run_scenarios(args)
        else:
            name = _command_id(args)
            result = commands.execute(name, _payload(args), seed=args.seed, degree_bound=args.degree_bound)
            code = 0
    except AzbraneError as e:
        logger.warning("%s: %s", e.code, e.detail)
        if isinstance(e, MalformedInput) and args.command != "scenario":
            model = commands.COMMANDS.get(_command_id(args))
            if model is not None:
                Console(stderr=True).print_json(canonical_json(model.model.model_json_schema()))
        out.write(canonical_json(e.to_payload()) + "\n")
        return e.exit_code
    _emit(result, fmt, out)
    return code
