"""Command reports and their text/JSON rendering.

JSON reports leave out timings so identical inputs and flags give
byte-identical output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .common import fmt_time
from shared.render import render, to_jsonable


def plain(value: object) -> object:
    """JSON-ready copy of *value*; dict keys become rendered strings."""
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if isinstance(value, dict):
        return {render(k) if not isinstance(k, str) else k: plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    return plain(to_jsonable(value))


@dataclass
class Report:
    ok: bool
    headline: str
    data: dict = field(default_factory=dict)
    counterexample: object = None
    details: list[str] = field(default_factory=list)
    command: str = ""
    args: dict = field(default_factory=dict)
    budget: int | None = None
    elapsed: float = 0.0

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "args": plain(self.args),
            "verdict": "positive" if self.ok else "negative",
            "headline": self.headline,
            "data": plain(self.data),
            "counterexample": plain(self.counterexample),
            "budget": {"limit": self.budget},
        }

    def render_json(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, ensure_ascii=False)

    def render_text(self) -> str:
        verdict = "positive" if self.ok else "NEGATIVE"
        lines = [f"{self.command}: {verdict}", f"  {self.headline}"]
        lines.extend(f"  {line}" for line in self.details)
        if self.counterexample is not None:
            lines.append("  counterexample:")
            dumped = json.dumps(plain(self.counterexample), indent=2, sort_keys=True)
            lines.extend(f"    {line}" for line in dumped.splitlines())
        budget = f"{self.budget:,}" if self.budget is not None else "default"
        lines.append(f"  budget {budget}, {fmt_time(self.elapsed)} elapsed")
        return "\n".join(lines)

    def render(self, fmt: str) -> str:
        return self.render_json() if fmt == "json" else self.render_text()
