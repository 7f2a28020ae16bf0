#!/usr/bin/env python3
"""Desk CLI: verification and enumeration commands over a workspace file.

Usage:
    uv run python scripts/wdesk.py aczel --sig arity012 --max-stage 3
    uv run python scripts/wdesk.py kan-check -w tests/fixtures/workspace.json --map id_Delta0
    uv run python scripts/wdesk.py lift -w ws.json --i horn --p to_point --top t --bottom b
    uv run python scripts/wdesk.py reedy-check -w ws.json --reedy R --map f --side cofibration

Exit status: 0 when every verdict is positive, 1 for a negative verdict
(the report carries the counterexample), 2 for budget exhaustion,
validation errors and bad command lines.

Configuration:
    cp scripts/configs/wdesk.default.yaml scripts/configs/wdesk.yaml
    Edit wdesk.yaml (budget, truncation, stage bound, workers, format).
    Or pass --config path/to/custom.yaml. WDESK_BUDGET overrides the default budget.
"""

import argparse
import sys
from pathlib import Path

# Add src/ to Python path
sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from configs.cli_arg_parser import (  # noqa: E402
    add_common_args,
    close_log_file,
    print_config_info,
    resolve_config,
)
from configs.commands import COMMANDS, CommandError, run_command  # noqa: E402
from configs.common import DESK_CONFIG, DESK_DEFAULT  # noqa: E402

from shared.budget import BudgetExceeded  # noqa: E402
from shared.workspace import Workspace, parse_workspace  # noqa: E402


# =============================================================================
# CLI setup
# =============================================================================


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    add_common_args(common, default_config_display=str(DESK_CONFIG))
    parser = argparse.ArgumentParser(
        description="Desk toolkit for W-types, M-types, Kan fibrations and Reedy structures",
    )
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True
    for spec in COMMANDS.values():
        cmd = sub.add_parser(spec.name, help=spec.help, parents=[common])
        for arg in spec.args:
            cmd.add_argument(
                arg.flag, help=arg.help, required=arg.required, nargs=arg.nargs,
                choices=arg.choices, type=arg.type, default=None,
            )
    return parser


# =============================================================================
# Entry point
# =============================================================================


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args, parser)
    finally:
        close_log_file()


def _run(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    try:
        config = resolve_config(
            args, parser, default_config=DESK_CONFIG, default_fallback=DESK_DEFAULT,
        )
        text = config.format == "text"
        if text:
            print_config_info(config, args.workspace)
        ws = (
            parse_workspace(args.workspace, truncation=config.truncation)
            if args.workspace else Workspace()
        )
        if text and args.workspace:
            print(f"Loaded {ws.summary()}")
        report = run_command(ws, args.command, args, config)
    except CommandError as exc:
        parser.error(str(exc))
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    print(report.render(config.format))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
