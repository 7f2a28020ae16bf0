"""Load desk configuration from YAML files.

Converts a flat YAML dict into the typed ``DeskConfig`` dataclass.
"""

from __future__ import annotations

from pathlib import Path

import yaml

from shared.config import BudgetConfig, DeskConfig

KEYS = ("budget", "truncation", "max_stage", "dim", "max_workers", "proof_cap", "format")


def load_yaml(path: str | Path) -> dict:
    """Read a YAML config file and return a plain dict."""
    with open(path) as f:
        return yaml.safe_load(f) or {}


def load_desk_config(path: str | Path) -> DeskConfig:
    """Load a desk YAML config and return the typed config."""
    raw = load_yaml(path)
    unknown = sorted(set(raw) - set(KEYS))
    if unknown:
        raise ValueError(f"Unknown config keys in {path}: {unknown}. Known: {list(KEYS)}")
    return DeskConfig(
        truncation=raw.get("truncation", 3),
        max_stage=raw.get("max_stage", 3),
        dim=raw.get("dim", 2),
        max_workers=raw.get("max_workers", 1),
        format=raw.get("format", "text"),
        limits=BudgetConfig(
            budget=raw.get("budget"),
            proof_cap=raw.get("proof_cap", 4),
        ),
    )
