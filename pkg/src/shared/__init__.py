from .budget import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    SizeLimitExceeded,
    check_size,
    default_budget,
    resolve_budget,
)
from .config import BudgetConfig, DeskConfig
from .render import canonical, render, sort_key

__all__ = [
    "DEFAULT_BUDGET",
    "BudgetExceeded",
    "SizeLimitExceeded",
    "check_size",
    "default_budget",
    "resolve_budget",
    "BudgetConfig",
    "DeskConfig",
    "canonical",
    "render",
    "sort_key",
]
