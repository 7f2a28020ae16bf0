"""Shared CLI argument parsing and config resolution for the desk script."""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .common import TeeLogger
from .loader import load_desk_config
from shared.budget import resolve_budget
from shared.config import DeskConfig


def add_common_args(parser: argparse.ArgumentParser, *, default_config_display: str) -> None:
    """Register arguments every command accepts.

    Adds: ``--workspace``, ``--config``, ``--budget``, ``--max-stage``,
    ``--dim``, ``--truncation``, ``--max-workers``, ``--proof-cap``,
    ``--format``, ``--log-file``.
    """
    parser.add_argument(
        "--workspace", "-w", default=None,
        help="Workspace JSON file with named categories, presheaves, maps, signatures, ...",
    )
    parser.add_argument(
        "--config", "-c", default=None,
        help=f"YAML config file (default: {default_config_display})",
    )
    parser.add_argument("--budget", type=int, default=None, help="Search/enumeration budget")
    parser.add_argument("--max-stage", type=int, default=None, help="Stage bound n")
    parser.add_argument("--dim", type=int, default=None, help="Horn dimension bound")
    parser.add_argument("--truncation", type=int, default=None, help="N for Delta<=N")
    parser.add_argument("--max-workers", type=int, default=None, help="Parallel checks")
    parser.add_argument("--proof-cap", type=int, default=None, help="Proof counting cap")
    parser.add_argument("--format", choices=("text", "json"), default=None, help="Report format")
    parser.add_argument("--log-file", default=None, help="Also write stdout/stderr to this file")


def resolve_config(
    args: argparse.Namespace,
    parser: argparse.ArgumentParser,
    *,
    default_config: Path,
    default_fallback: Path,
) -> DeskConfig:
    """Load config, apply flag overrides and set up the log file."""
    # Config file resolution: --config > default_config > default_fallback
    config_path = args.config or str(default_config)
    if not os.path.isfile(config_path):
        if args.config:
            parser.error(f"Config file not found: {config_path}")
        config_path = str(default_fallback)
    if not os.path.isfile(config_path):
        parser.error(f"Config file not found: {config_path}")

    config = load_desk_config(config_path)
    apply_overrides(args, config)

    if args.log_file:
        sys.stdout = TeeLogger(args.log_file)
        sys.stderr = TeeLogger(args.log_file, stream=sys.stderr)
    return config


def close_log_file() -> None:
    """Restore the streams teed by ``resolve_config`` and close the log file."""
    for name in ("stdout", "stderr"):
        stream = getattr(sys, name)
        if isinstance(stream, TeeLogger):
            stream.flush()
            setattr(sys, name, stream.terminal)
            stream.close()


def apply_overrides(args: argparse.Namespace, config: DeskConfig) -> None:
    """Apply CLI flags on top of the YAML values and re-validate."""
    for key in ("truncation", "max_stage", "dim", "max_workers", "format"):
        value = getattr(args, key, None)
        if value is not None:
            setattr(config, key, value)
    if getattr(args, "budget", None) is not None:
        config.limits.budget = resolve_budget(args.budget)
    if getattr(args, "proof_cap", None) is not None:
        config.limits.proof_cap = args.proof_cap
    config.__post_init__()
    config.limits.__post_init__()


def print_config_info(config: DeskConfig, workspace: str | None) -> None:
    print("=" * 60)
    print(f"Workspace: {workspace or '(none)'}")
    print(
        f"Budget: {config.limits.budget:,}  truncation: {config.truncation}  "
        f"max stage: {config.max_stage}  dim: {config.dim}  workers: {config.max_workers}"
    )
    print("=" * 60)
