"""Command line: ``validate``, ``signature`` and ``enumerate``.

Exit codes: 0 success, 1 validation failure, 2 parse or usage error,
3 internal inconsistency (for instance a non-integral genus).
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .files import InputError, load_action
from .hoare import InvalidAction, subgroup_signature
from .lowindex import MAX_SEARCH_DEGREE, index_two_subgroups, search_actions
from .permutation import format_cycles
from .render import render_machine, render_text
from .representation import ActionError, restrict_to_orbit, validate_action
from .signature import (
    InconsistentAnalysis,
    SignatureError,
    check_signature,
    format_signature,
    parse_signature,
)

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_INTERNAL = 0, 1, 2, 3


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        action = load_action(args.file)
    except (InputError, OSError) as exc:
        _err(str(exc))
        return EXIT_PARSE
    report = validate_action(action)
    print(report.summary())
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_signature(args: argparse.Namespace) -> int:
    try:
        action = load_action(args.file)
        if args.restrict_to_orbit is not None:
            action = restrict_to_orbit(action, args.restrict_to_orbit)
    except (InputError, ActionError, OSError) as exc:
        _err(str(exc))
        return EXIT_PARSE
    try:
        report = subgroup_signature(action.signature, action,
                                    allow_invalid_relators=args.allow_invalid_relators)
    except InvalidAction as exc:
        print(exc.report.summary())
        return EXIT_INVALID
    except InconsistentAnalysis as exc:
        _err(f"inconsistent analysis: {exc}")
        return EXIT_INTERNAL
    if args.format == "machine":
        print(render_machine(report))
    else:
        print(render_text(report, trace=args.trace))
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    try:
        sig = check_signature(parse_signature(args.signature))
    except SignatureError as exc:
        _err(str(exc))
        return EXIT_PARSE
    truncated = False
    try:
        if args.index is not None:
            if args.index != 2:
                _err("--index supports only 2; use --degree N for a search")
                return EXIT_PARSE
            found = index_two_subgroups(sig)
            blocks = [(sub.action, sub.report) for sub in found]
        else:
            if not 1 <= args.degree <= MAX_SEARCH_DEGREE:
                _err(f"--degree must be within 1..{MAX_SEARCH_DEGREE}")
                return EXIT_PARSE
            result = search_actions(sig, args.degree, args.limit)
            truncated = not result.complete
            blocks = [(a, subgroup_signature(sig, a)) for a in result.actions]
    except InconsistentAnalysis as exc:
        _err(f"inconsistent analysis: {exc}")
        return EXIT_INTERNAL
    print(f"# {format_signature(sig)}: {len(blocks)} subgroup(s)")
    if truncated:
        print(f"# search stopped at limit {args.limit}; results are partial")
    for n, (action, report) in enumerate(blocks, 1):
        print()
        print(f"[{n}] index {action.degree}")
        for name, perm in action.images.items():
            print(f"  {name}: {format_cycles(perm)}")
        print(f"  signature: {format_signature(report.signature)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="necsub", description="Signatures of finite-index subgroups of NEC groups.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check relators and transitivity of an action file")
    v.add_argument("file")
    v.set_defaults(func=cmd_validate)

    s = sub.add_parser("signature", help="compute the signature of the stabiliser of coset 1")
    s.add_argument("file")
    s.add_argument("--trace", action="store_true", help="print every intermediate step")
    s.add_argument("--format", choices=("text", "machine"), default="text")
    s.add_argument("--allow-invalid-relators", action="store_true",
                   help="run even if the long relator fails; output is marked unverified")
    s.add_argument("--restrict-to-orbit", type=int, metavar="P",
                   help="use the action on the orbit of point P, relabelled so P is 1")
    s.set_defaults(func=cmd_signature)

    e = sub.add_parser("enumerate", help="list subgroups of index 2 or of a given small degree")
    e.add_argument("signature")
    group = e.add_mutually_exclusive_group(required=True)
    group.add_argument("--index", type=int)
    group.add_argument("--degree", type=int)
    e.add_argument("--limit", type=int, default=None)
    e.set_defaults(func=cmd_enumerate)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    return args.func(args)


def run() -> None:
    """Console-script entry point."""
    sys.exit(main())


if __name__ == "__main__":
    run()
