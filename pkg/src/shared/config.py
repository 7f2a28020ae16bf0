"""Desk configuration."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

from .budget import resolve_budget

OutputFormat = Literal["text", "json"]


@dataclass
class BudgetConfig:
    """Caps every enumeration and search."""

    budget: int | None = None  # None -> WDESK_BUDGET or DEFAULT_BUDGET
    proof_cap: int = 4  # saturation point for proof counting

    def __post_init__(self):
        self.budget = resolve_budget(self.budget)
        if self.proof_cap < 1:
            raise ValueError(f"proof_cap must be >= 1, got {self.proof_cap}")


@dataclass
class DeskConfig:
    """Top-level configuration shared by the CLI and the library entry points.

    Composes budget settings with the truncation and stage bounds.
    """

    truncation: int = 3  # N in the truncated simplex category
    max_stage: int = 3  # default n for stage enumerations
    dim: int = 2  # default dimension for Kan checks
    max_workers: int = 1  # parallel checks (1 runs inline)
    format: OutputFormat = "text"
    limits: BudgetConfig = field(default_factory=BudgetConfig)

    def __post_init__(self):
        if self.truncation < 0:
            raise ValueError(f"truncation must be >= 0, got {self.truncation}")
        if self.max_stage < 0:
            raise ValueError(f"max_stage must be >= 0, got {self.max_stage}")
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")
        if self.max_workers < 1:
            raise ValueError(f"max_workers must be >= 1, got {self.max_workers}")
        if self.format not in ("text", "json"):
            raise ValueError(f"Unknown output format: {self.format!r}. Use 'text' or 'json'.")
