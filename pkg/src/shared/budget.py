"""Enumeration and search budgets.

Every enumerator and backtracking search in the toolkit is bounded by a
budget: a cap on the number of elements produced or search nodes visited.
The default can be overridden with the ``WDESK_BUDGET`` env var.
"""

from __future__ import annotations

import functools
import logging
import os

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 1_000_000


class BudgetExceeded(RuntimeError):
    """A search or enumeration ran past its budget."""

    def __init__(self, what: str, limit: int, detail: str = ""):
        self.what = what
        self.limit = limit
        msg = f"Budget exceeded while {what} (limit {limit})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class SizeLimitExceeded(BudgetExceeded):
    """An enumeration would produce more elements than the budget allows."""

    def __init__(self, what: str, limit: int, size: int):
        self.size = size
        super().__init__(what, limit, detail=f"{size} elements requested")


@functools.cache
def default_budget() -> int:
    """Return the process-wide default budget.

    Resolution order:
    1. ``WDESK_BUDGET`` environment variable (positive integer)
    2. ``DEFAULT_BUDGET``
    """
    env = os.environ.get("WDESK_BUDGET", "").strip()
    if not env:
        return DEFAULT_BUDGET
    try:
        value = int(env.replace("_", ""))
    except ValueError:
        raise ValueError(
            f"Invalid WDESK_BUDGET={env!r}. Must be a positive integer."
        ) from None
    if value <= 0:
        raise ValueError(f"Invalid WDESK_BUDGET={env!r}. Must be a positive integer.")
    return value


def resolve_budget(budget: int | None) -> int:
    """Return *budget*, or the default when it is ``None``."""
    if budget is None:
        return default_budget()
    if budget <= 0:
        raise ValueError(f"Budget must be positive, got {budget}")
    return budget


def check_size(size: int, budget: int | None, what: str) -> None:
    """Raise ``SizeLimitExceeded`` when *size* is over the budget."""
    limit = resolve_budget(budget)
    if size > limit:
        raise SizeLimitExceeded(what, limit, size)


class SearchCounter:
    """Counts search nodes and stops the search once the budget is spent."""

    def __init__(self, budget: int | None, what: str):
        self.limit = resolve_budget(budget)
        self.what = what
        self.nodes = 0

    def tick(self, n: int = 1) -> None:
        self.nodes += n
        if self.nodes > self.limit:
            log.debug("search %s stopped after %d nodes", self.what, self.nodes)
            raise BudgetExceeded(self.what, self.limit)
