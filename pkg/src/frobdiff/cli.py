"""Command-line front end: ``frobdiff <command> ...``.

Every command builds one JSON-compatible dict; ``--text`` renders the same
dict as plain lines.  Exit codes: 0 success, 1 verification or consistency
failure, 2 parse error, 3 invalid input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from .diffop import DiffOperator, apply, construct_operator, parse_operator, serialize
from .ec import WeierstrassCoefficients, classify, scan_field
from .errors import ConsistencyError, ParseError, VerificationError
from .ff import Prime
from .froots import ideal_of_roots
from .level import level_of
from .parsing import parse_polynomial

__all__ = ["run", "main", "build_parser", "render_text", "parse_polynomial"]

EXIT_OK, EXIT_VERIFY, EXIT_PARSE, EXIT_INPUT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _csv_ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-p", type=int, required=True, help="prime characteristic")
    out = common.add_mutually_exclusive_group()
    out.add_argument("--json", dest="text", action="store_false", help="JSON output (default)")
    out.add_argument("--text", dest="text", action="store_true", help="plain-text output")
    common.set_defaults(text=False)

    poly = _Parser(add_help=False, parents=[common])
    poly.add_argument("--vars", required=True, help="comma-separated variable names, in order")

    parser = _Parser(prog="frobdiff", description="Levels, root ideals and differential operators over F_p.")
    sub = parser.add_subparsers(dest="command", required=True)

    cmd = sub.add_parser("level", parents=[poly], help="level of f and its stabilized root ideal")
    cmd.add_argument("expr")
    cmd = sub.add_parser("roots", parents=[poly], help="the ideal I_e of the expression")
    cmd.add_argument("expr")
    cmd.add_argument("-e", type=int, required=True)
    cmd = sub.add_parser("diffop", parents=[poly], help="operator sending 1/f to 1/f^p")
    cmd.add_argument("expr")
    cmd = sub.add_parser("apply", parents=[poly], help="apply an operator file to a polynomial")
    cmd.add_argument("opfile")
    cmd.add_argument("expr")
    cmd = sub.add_parser("verify", parents=[poly], help="rebuild the operator and check it")
    cmd.add_argument("expr")

    ec = sub.add_parser("ec", help="plane elliptic curves")
    ec_sub = ec.add_subparsers(dest="ec_command", required=True)
    cmd = ec_sub.add_parser("classify", parents=[common], help="classify one curve")
    shape = cmd.add_mutually_exclusive_group(required=True)
    shape.add_argument("--short", type=_csv_ints, metavar="A,B")
    shape.add_argument("--general", type=_csv_ints, metavar="A1,A3,A2,A4,A6")
    cmd = ec_sub.add_parser("scan", parents=[common], help="classify every curve of a form")
    cmd.add_argument("--form", choices=["short", "general"], default="short")
    return parser


def _names(args) -> list[str]:
    return [v.strip() for v in args.vars.split(",")]


def _poly(args, src=None):
    return parse_polynomial(args.expr if src is None else src, Prime(args.p), _names(args))


def _nonzero(f):
    if f.is_zero():
        raise ValueError("f must be nonzero")
    return f


def _cmd_level(args) -> tuple[dict, int]:
    f = _nonzero(_poly(args))
    result = level_of(f)
    return {"f": f.render(), "level": result.level, "ideal": result.stabilized_ideal.render()}, EXIT_OK


def _cmd_roots(args) -> tuple[dict, int]:
    if args.e < 1:
        raise ValueError("-e must be positive")
    f = _poly(args)
    roots = ideal_of_roots(f, args.e)
    return {"f": f.render(), "e": args.e, "ideal": roots.render()}, EXIT_OK


def _cmd_diffop(args) -> tuple[dict, int]:
    f = _nonzero(_poly(args))
    assoc = construct_operator(f)
    data = assoc.op.to_json()
    data.update(f=f.render(), operator=serialize(assoc.op), verified=assoc.verified)
    return data, EXIT_OK


def _load_operator(args) -> DiffOperator:
    try:
        text = Path(args.opfile).read_text()
    except OSError as exc:
        raise ValueError(f"cannot read {args.opfile}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        return parse_operator(text, _poly(args, "0").ring)
    op = DiffOperator.from_json(data)
    if op.ring.p != args.p or list(op.ring.names) != _names(args):
        raise ValueError("operator file ring does not match -p/--vars")
    return op


def _cmd_apply(args) -> tuple[dict, int]:
    op = _load_operator(args)
    g = _poly(args)
    return {"result": apply(op, g).render()}, EXIT_OK


def _cmd_verify(args) -> tuple[dict, int]:
    f = _nonzero(_poly(args))
    try:
        assoc = construct_operator(f)
    except VerificationError as exc:
        return {"f": f.render(), "verified": False, "reason": str(exc)}, EXIT_VERIFY
    return {"f": f.render(), "level": assoc.e, "terms": len(assoc.op), "verified": True}, EXIT_OK


def _cmd_ec_classify(args) -> tuple[dict, int]:
    if args.short is not None:
        if len(args.short) != 2:
            raise ValueError("--short takes a,b")
        w = WeierstrassCoefficients(args.p, "short", tuple(args.short))
    else:
        if len(args.general) != 5:
            raise ValueError("--general takes a1,a3,a2,a4,a6")
        w = WeierstrassCoefficients(args.p, "general", tuple(args.general))
    return classify(w).to_json(), EXIT_OK


def _cmd_ec_scan(args) -> tuple[dict, int]:
    p = Prime(args.p)
    if args.form == "short" and p in (2, 3):
        raise ValueError("the short form needs p > 3")
    rows = [row.to_json() for row in scan_field(p, args.form)]
    return {
        "p": int(p),
        "form": args.form,
        "rows": rows,
        "ordinary": sum(r["kind"] == "ordinary" for r in rows),
        "supersingular": sum(r["kind"] == "supersingular" for r in rows),
    }, EXIT_OK


_COMMANDS = {
    "level": _cmd_level,
    "roots": _cmd_roots,
    "diffop": _cmd_diffop,
    "apply": _cmd_apply,
    "verify": _cmd_verify,
    ("ec", "classify"): _cmd_ec_classify,
    ("ec", "scan"): _cmd_ec_scan,
}


def _scalar(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return "[" + ", ".join(_scalar(v) for v in value) + "]"
    return str(value)


def render_text(data: dict) -> str:
    """Plain-text view of a command result, keys in sorted order."""
    lines = []
    for key in sorted(data):
        value = data[key]
        if isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{key}:")
            for item in value:
                lines.append("  " + " ".join(f"{k}={_scalar(item[k])}" for k in sorted(item)))
        elif isinstance(value, str) and "\n" in value:
            lines.append(f"{key}:")
            lines.extend("  " + line for line in value.splitlines())
        else:
            lines.append(f"{key}: {_scalar(value)}")
    return "\n".join(lines)


_INT_LIST = re.compile(r"-?\d+(,-?\d+)*")


def _join_negative_lists(argv: list[str]) -> list[str]:
    # argparse would read "--short -1,0" as two options
    out: list[str] = []
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg in ("--short", "--general") and i + 1 < len(argv) and _INT_LIST.fullmatch(argv[i + 1]):
            out.append(f"{arg}={argv[i + 1]}")
            i += 2
        else:
            out.append(arg)
            i += 1
    return out


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = _join_negative_lists(sys.argv[1:] if argv is None else list(argv))
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"frobdiff: {exc}", file=stderr)
        return EXIT_INPUT
    key = ("ec", args.ec_command) if args.command == "ec" else args.command
    try:
        data, code = _COMMANDS[key](args)
    except ParseError as exc:
        print(f"frobdiff: parse error: {exc}", file=stderr)
        return EXIT_PARSE
    except (VerificationError, ConsistencyError) as exc:
        print(f"frobdiff: {exc}", file=stderr)
        return EXIT_VERIFY
    except (ValueError, OverflowError) as exc:
        print(f"frobdiff: {exc}", file=stderr)
        return EXIT_INPUT
    if args.text:
        print(render_text(data), file=stdout)
    else:
        print(json.dumps(data, sort_keys=True), file=stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
