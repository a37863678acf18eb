"""
Command-line front end.

    becmbqc protocol1 --n 4 --phi 0 --theta 0 --sign3 + --sign2 +
    becmbqc protocol1 --n-sweep 1..8 --phi pi/2 --theta pi/3 --output csv
    becmbqc protocol2 --n1 2 --n2 5 --n3 2 --phi pi/4 --m 1 --mode a
    becmbqc logical-cz --n 2 --s1 0 --s2 0
    becmbqc graph examples.json --dump-state state.json
    becmbqc selftest

Exit codes: 0 ok, 2 usage, 3 zero-probability branch, 4 parse/validation,
5 numeric failure. Errors go to stderr as a JSON object.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .angles import parse_angle, parse_range
from .errors import BecError, ValidationError
from .fock import dump_state
from .graph import TEMPLATES, build_graph_state, parse_graph
from .protocols import logical_cz_gadget, protocol1, protocol2
from .report import dumps, reports_document, to_csv
from .selftest import run_selftest

EXIT_USAGE = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _emit_error("usage", message)
        sys.exit(EXIT_USAGE)


def _emit_error(code: str, message: str, **extra):
    payload = {"error": {"code": code, "message": message, **extra}}
    print(json.dumps(payload), file=sys.stderr)


def _sign(text: str) -> int:
    if text in ("+", "+1", "plus"):
        return +1
    if text in ("-", "-1", "minus"):
        return -1
    raise argparse.ArgumentTypeError(f"sign must be + or -, got {text!r}")


def _angle(text: str) -> float:
    try:
        return parse_angle(text)
    except ValidationError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--output", choices=("json", "csv"), default="json")
    p.add_argument("--dump-state", metavar="PATH", help="write the final register as JSON")


def _add_three_body(p: argparse.ArgumentParser):
    g = p.add_argument_group("particle numbers")
    g.add_argument("--n", type=int, help="same particle number on all three sites")
    g.add_argument("--n1", type=int)
    g.add_argument("--n2", type=int)
    g.add_argument("--n3", type=int)
    g.add_argument("--n-sweep", metavar="RANGE", help="sweep the common N, e.g. 1..8")
    p.add_argument("--phi", type=_angle, default=0.0, help="radians; pi expressions allowed")
    p.add_argument("--theta", type=_angle, default=0.0)
    p.add_argument("--sign3", type=_sign, default=+1)
    p.add_argument("--sign2", type=_sign, default=+1)
    p.add_argument("--sample", action="store_true", help="sample outcomes instead of post-selecting")
    p.add_argument("--seed", type=_seed, help="PCG64 seed for --sample")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="becmbqc", description="MBQC on two-component BEC graph states")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p1 = sub.add_parser("protocol1", help="three-body measurement")
    _add_three_body(p1)
    _add_common(p1)

    p2 = sub.add_parser("protocol2", help="three-body measurement with particle removal")
    _add_three_body(p2)
    p2.add_argument("--m", type=int, default=1, help="number of bosons removed from BEC2")
    p2.add_argument("--mode", choices=("a", "b"), default="a")
    _add_common(p2)

    pc = sub.add_parser("logical-cz", help="four-BEC logical CZ gadget")
    pc.add_argument("--n", type=int)
    pc.add_argument("--n-sweep", metavar="RANGE")
    pc.add_argument("--s1", type=int, choices=(0, 1), default=0)
    pc.add_argument("--s2", type=int, choices=(0, 1), default=0)
    _add_common(pc)

    pg = sub.add_parser("graph", help="build a graph state from a JSON file or template")
    pg.add_argument("file", nargs="?")
    pg.add_argument("--template", choices=sorted(TEMPLATES))
    pg.add_argument("--n", type=int, default=2, help="particle number for --template")
    _add_common(pg)

    sub.add_parser("selftest", help="run the built-in invariant checks")
    return parser


def _particle_sets(args) -> list[tuple[int, int, int]]:
    if args.n_sweep:
        if any(v is not None for v in (args.n, args.n1, args.n2, args.n3)):
            raise ValidationError("--n-sweep cannot be combined with --n/--n1/--n2/--n3")
        return [(n, n, n) for n in parse_range(args.n_sweep)]
    base = args.n
    ns = [args.n1, args.n2, args.n3]
    ns = [base if v is None else v for v in ns]
    if any(v is None for v in ns):
        raise ValidationError("give --n, all of --n1/--n2/--n3, or --n-sweep")
    return [tuple(ns)]


def _run_three_body(args, removal: bool):
    if args.sample and args.seed is None:
        raise ValidationError("--sample needs --seed")
    seed = args.seed if args.sample else None
    reports = []
    for n1, n2, n3 in _particle_sets(args):
        kw = dict(sign3=args.sign3, sign2=args.sign2, seed=seed)
        if removal:
            rep = protocol2(n1, n2, n3, args.phi, args.theta,
                            removal_count=args.m, removal_mode=args.mode, **kw)
        else:
            rep = protocol1(n1, n2, n3, args.phi, args.theta, **kw)
        reports.append(rep)
    return reports


def _emit(reports, args, command):
    dicts = [r.as_dict() for r in reports]
    if args.output == "csv":
        sys.stdout.write(to_csv(dicts))
    else:
        sys.stdout.write(dumps(reports_document(dicts, command)) + "\n")
    if args.dump_state:
        Path(args.dump_state).write_text(dump_state(reports[-1].final_state) + "\n")


def _graph(args):
    if bool(args.file) == bool(args.template):
        raise ValidationError("give exactly one of FILE or --template")
    if args.file:
        spec = parse_graph(Path(args.file).read_text())
    else:
        spec = TEMPLATES[args.template](args.n)
    state = build_graph_state(spec)
    summary = {
        "graph": spec.to_dict(),
        "sites": list(state.dims),
        "dimension": int(state.amplitudes.size),
        "norm": state.norm(),
    }
    if args.output == "csv":
        sys.stdout.write(to_csv([summary]))
    else:
        sys.stdout.write(dumps({"schema": "becmbqc.graph/1", **summary}) + "\n")
    if args.dump_state:
        Path(args.dump_state).write_text(dump_state(state) + "\n")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "selftest":
            return 0 if run_selftest() else 1
        if args.command == "protocol1":
            _emit(_run_three_body(args, removal=False), args, "protocol1")
        elif args.command == "protocol2":
            _emit(_run_three_body(args, removal=True), args, "protocol2")
        elif args.command == "logical-cz":
            if args.n_sweep and args.n is not None:
                raise ValidationError("--n-sweep cannot be combined with --n")
            ns = parse_range(args.n_sweep) if args.n_sweep else [args.n]
            if ns == [None]:
                raise ValidationError("give --n or --n-sweep")
            _emit([logical_cz_gadget(n, args.s1, args.s2) for n in ns], args, "logical-cz")
        elif args.command == "graph":
            _graph(args)
    except BecError as exc:
        extra = {}
        if getattr(exc, "line", None) is not None:
            extra = {"line": exc.line, "column": exc.column}
        _emit_error(exc.code, str(exc), **extra)
        return exc.exit_code
    except (OSError, np.linalg.LinAlgError) as exc:
        _emit_error("io" if isinstance(exc, OSError) else "numeric", str(exc))
        return 4 if isinstance(exc, OSError) else 5
    return 0


if __name__ == "__main__":
    sys.exit(main())
