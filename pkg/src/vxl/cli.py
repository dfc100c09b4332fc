"""Command-line driver.

Exit codes: 0 ok, 1 usage, 2 parse error, 3 configuration error (missing
entry, guards, disabled active alternative), 4 all universes failed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import ConfigError, GuardError, MarkerError, ParseError
from .grid import build_grid, render_grid
from .markers import cleanup
from .parser import parse
from .printer import print_program
from .runner import run_all_universes
from .universes import collect_variation_tree, enumerate_universes

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_CONFIG = 3
EXIT_ALL_FAILED = 4


def _load(path: str):
    try:
        source = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)
    try:
        return parse(source)
    except ParseError as exc:
        print(f"{path}:{exc}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


def _resolve_pivot(tree, pivot_name):
    """Accept a variation id or a display name for --pivot."""
    if pivot_name is None:
        return None
    vt = collect_variation_tree(tree)
    for vp in vt.nodes:
        if vp.vp_id == pivot_name:
            return vp.vp_id
    for vp in vt.nodes:
        if vp.display_name == pivot_name:
            return vp.vp_id
    raise ConfigError(f"unknown variation '{pivot_name}'")


def cmd_run(args) -> int:
    tree = _load(args.file)
    try:
        pivot = _resolve_pivot(tree, args.pivot)
        report = run_all_universes(tree, args.entry)
        model = build_grid(report, pivot)
    except (ConfigError, GuardError, MarkerError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    print(render_grid(model, args.format), end="")
    if not report.ok_universes():
        print("error: all universes failed", file=sys.stderr)
        return EXIT_ALL_FAILED
    return EXIT_OK


def cmd_universes(args) -> int:
    tree = _load(args.file)
    try:
        universes = enumerate_universes(collect_variation_tree(tree))
    except (ConfigError, GuardError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    for universe in universes:
        print(universe.label or "(no variation points)")
    return EXIT_OK


def cmd_cleanup(args) -> int:
    tree = _load(args.file)
    try:
        resolved = cleanup(tree)
    except (MarkerError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    text = print_program(resolved)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        print(text, end="")
    return EXIT_OK


def cmd_serve(args) -> int:
    from .history import load as load_history
    from .server import Session, serve

    session = Session.from_file(args.file)
    if args.session and Path(args.session).exists():
        session.history = load_history(args.session)
    try:
        serve(session, port=args.port)
    except KeyboardInterrupt:
        pass
    finally:
        if args.session:
            session.history.persist(args.session)
    return EXIT_OK


def build_arg_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="vxl",
        description="Run VXL programs across every universe of their "
                    "variation points.")
    sub = top.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run all universes and print the grid")
    run.add_argument("file")
    run.add_argument("--entry", default=None)
    run.add_argument("--pivot", default=None,
                     help="variation id or name for the y-axis")
    run.add_argument("--format", choices=["markdown", "json"],
                     default="markdown")
    run.set_defaults(func=cmd_run)

    uni = sub.add_parser("universes", help="list universe labels")
    uni.add_argument("file")
    uni.set_defaults(func=cmd_universes)

    cln = sub.add_parser("cleanup", help="resolve all markers to plain code")
    cln.add_argument("file")
    cln.add_argument("-o", "--output", default=None)
    cln.set_defaults(func=cmd_cleanup)

    srv = sub.add_parser("serve", help="serve the HTTP API for a program")
    srv.add_argument("file")
    srv.add_argument("--port", type=int, default=9911)
    srv.add_argument("--session", default=None,
                     help="JSON-lines history file to load and persist")
    srv.set_defaults(func=cmd_serve)
    return top


def main(argv=None) -> int:
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
