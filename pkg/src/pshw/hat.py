"""The set-level signature f^ of a map of presheaves f: B -> A.

Labels are pairs (C, a) with a in A(C); the fibre of (C, a) holds the
pairs (alpha: D -> C, b in B(D)) with f(b) = a . alpha.
"""

from __future__ import annotations

from collections.abc import Hashable
from dataclasses import dataclass
from functools import cached_property

from shared.fincat import FinSet, PshMap
from shared.poly import PolySignature, hat_fiber

Label = tuple[str, Hashable]  # (C, a)


@dataclass(frozen=True, eq=False)
class HatSignature:
    f: PshMap
    labels: FinSet
    fibers: dict[Label, tuple]

    @cached_property
    def signature(self) -> PolySignature:
        """f^ as an ordinary polynomial signature."""
        return PolySignature(labels=self.labels, fibers=self.fibers, name=f"{self.f.name or 'f'}^")

    def fiber(self, label: Label) -> tuple:
        return self.signature.fiber(label)

    def labels_at(self, obj: str) -> list[Label]:
        return [lab for lab in self.labels if lab[0] == obj]


def hat_construction(f: PshMap) -> HatSignature:
    cat, A = f.category, f.target
    labels = [(obj, a) for obj in cat.objects for a in A(obj)]
    fibers = {(obj, a): hat_fiber(f, obj, a) for obj, a in labels}
    ordered = FinSet.of(labels)
    return HatSignature(f=f, labels=ordered, fibers={lab: fibers[lab] for lab in ordered})
