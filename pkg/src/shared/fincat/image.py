"""Image factorization and colimits of chains of presheaves."""

from __future__ import annotations

from collections.abc import Sequence

from .builtins import poset_category
from .category import CategoryError
from .constructions import subpresheaf
from .finset import FinSet
from .limits import build_diagram, finite_colimit
from .presheaf import Presheaf, PshMap, presheaf_from_action


def image_factorization(f: PshMap) -> tuple[PshMap, PshMap]:
    """f = mono . epi with the image as the middle presheaf.

    The epi is pointwise surjective onto the image, the mono is the
    inclusion of the image into the target.
    """
    images = {obj: set(f.components[obj].values()) for obj in f.category.objects}
    name = f"im({f.name})" if f.name else "im"
    image, mono = subpresheaf(f.target, lambda obj, y: y in images[obj], name=name)
    epi = PshMap(f.source, image, {obj: dict(f.components[obj]) for obj in f.category.objects})
    return epi, mono


def chain_colimit(maps: Sequence[PshMap]) -> tuple[Presheaf, list[PshMap]]:
    """Colimit of X_0 -> X_1 -> ... -> X_m, computed objectwise.

    Returns the colimit and the legs X_i -> colim.
    """
    if not maps:
        raise CategoryError("chain_colimit needs at least one map")
    for a, b in zip(maps, maps[1:], strict=False):
        if a.target is not b.source:
            raise CategoryError("chain maps are not composable")
    stages = [maps[0].source] + [m.target for m in maps]
    cat = stages[0].category
    shape = poset_category(len(maps))

    def along(i: int, j: int, obj: str) -> dict:
        fn = {x: x for x in stages[i](obj)}
        for k in range(i, j):
            fn = {x: maps[k].components[obj][y] for x, y in fn.items()}
        return fn

    cocones = {}
    for obj in cat.objects:
        nodes = {str(i): stages[i](obj) for i in range(len(stages))}
        edges = {
            f"{i}<={j}": along(i, j, obj)
            for i in range(len(stages))
            for j in range(i, len(stages))
        }
        cocones[obj] = finite_colimit(build_diagram(shape, nodes, edges))

    def act(rep, alpha):
        i, x = rep
        src = cat.src(alpha)
        return cocones[src].legs[i][stages[int(i)].act(x, alpha)]

    at = {obj: FinSet(cocones[obj].carrier.elements) for obj in cat.objects}
    colim = presheaf_from_action(cat, at, act, name="colim")
    legs = [
        PshMap(stages[i], colim, {obj: dict(cocones[obj].legs[str(i)]) for obj in cat.objects})
        for i in range(len(stages))
    ]
    return colim, legs
