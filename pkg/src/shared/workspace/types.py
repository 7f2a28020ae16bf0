"""Workspace data and the errors raised while loading one."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path


class WorkspaceError(ValueError):
    """Base class for workspace loading and lookup failures."""


class ParseError(WorkspaceError):
    """The file is not well-formed; *location* is ``file:line:col`` or a key path."""

    def __init__(self, location: str, detail: str):
        self.location = location
        self.detail = detail
        super().__init__(f"{location}: {detail}")


class ValidationError(WorkspaceError):
    """A structure parsed but did not validate; *structure* is its key path."""

    def __init__(self, structure: str, detail: str):
        self.structure = structure
        self.detail = detail
        super().__init__(f"Invalid {structure}: {detail}")


SECTIONS = (
    "categories",
    "reedy",
    "presheaves",
    "maps",
    "signatures",
    "dep_signatures",
    "algebras",
    "coalgebras",
)


@dataclass
class Workspace:
    """Named structures, every one of them validated on load."""

    path: Path | None = None
    categories: dict = field(default_factory=dict)
    reedy: dict = field(default_factory=dict)
    presheaves: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    signatures: dict = field(default_factory=dict)
    dep_signatures: dict = field(default_factory=dict)
    algebras: dict = field(default_factory=dict)
    coalgebras: dict = field(default_factory=dict)

    def get(self, section: str, name: str):
        table = getattr(self, section)
        if name not in table:
            known = ", ".join(sorted(table)) or "none"
            raise WorkspaceError(f"No entry {name!r} in {section} (known: {known})")
        return table[name]

    def counts(self) -> dict[str, int]:
        return {s: len(getattr(self, s)) for s in SECTIONS}

    def summary(self) -> str:
        parts = [f"{n} {s}" for s, n in self.counts().items() if n]
        return ", ".join(parts) or "empty"
