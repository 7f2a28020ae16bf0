"""The command table: one handler per CLI command.

Each handler takes the workspace, its own options and the resolved config
and returns a ``Report``. Negative verdicts come back as reports with
``ok=False`` and a counterexample; malformed input raises.
"""

from __future__ import annotations

import argparse
import copy
import logging
import re
import time
from collections.abc import Callable, Mapping
from dataclasses import dataclass, replace

from .cli_arg_parser import apply_overrides
from .report import Report
from mtype import bisimilar, minimize, truncate
from pshw import enumerate_psh_stage, stage_isomorphism
from quotient import (
    ConditionFailed,
    bisimulation_relation,
    denotation,
    extensional_quotient,
    quotient_by_pseudo_eqrel,
    witnesses_by_search,
)
from reedy import (
    HomPushoutFailed,
    NotCommuting,
    NotEquivariant,
    NotMono,
    SectionIncompatible,
    automorphism_group,
    certify_absolute_pushout,
    functor_gset,
    gset_free_cofibration_check,
    minus_conditions,
    reedy_fib_cofib_check,
)
from shared.config import DeskConfig
from shared.poly import arity_signature
from shared.render import render, to_jsonable
from shared.workspace import Workspace, WorkspaceError
from sset import (
    adjunction_counts,
    build_lifting_problem,
    dependent_product,
    global_sections,
    kan_check_upto,
    solve_lifting,
)
from wtree import dep_compatible, enumerate_dep_stage, enumerate_stage, fold, is_algebra_morphism

log = logging.getLogger(__name__)


class CommandError(ValueError):
    """Bad command line: unknown command or missing argument."""


class UnknownCommand(CommandError):
    def __init__(self, command: str):
        self.command = command
        super().__init__(f"Unknown command {command!r}. Choose from {sorted(COMMANDS)}")


class MissingArgument(CommandError):
    def __init__(self, flag: str, command: str):
        self.flag = flag
        self.command = command
        super().__init__(f"{command}: the following arguments are required: {flag}")


@dataclass(frozen=True)
class Arg:
    flag: str
    help: str
    required: bool = False
    nargs: int | None = None
    choices: tuple[str, ...] | None = None
    type: type = str

    @property
    def dest(self) -> str:
        return self.flag.lstrip("-").replace("-", "_")


@dataclass(frozen=True)
class Command:
    name: str
    help: str
    handler: Callable[[Workspace, dict, DeskConfig], Report]
    args: tuple[Arg, ...] = ()


# ---------------------------------------------------------------------------
# Lookups
# ---------------------------------------------------------------------------


def _signature(ws: Workspace, name: str):
    """A workspace signature, or ``arity<digits>`` for one label per listed arity."""
    if name in ws.signatures:
        return ws.signatures[name]
    match = re.fullmatch(r"arity(\d+)", name)
    if match:
        return arity_signature(*(int(d) for d in match.group(1)), name=name)
    return ws.get("signatures", name)


def _state(coalg, name: str):
    for x in coalg.states:
        if render(x) == name:
            return x
    raise WorkspaceError(f"{name!r} is not a state of {coalg.name or 'the coalgebra'}")


def _sizes(sizes: Mapping[str, int]) -> str:
    return ", ".join(f"{obj}={n}" for obj, n in sizes.items())


def _components(m) -> dict:
    return {obj: to_jsonable(dict(m.components[obj])) for obj in m.category.objects}


# ---------------------------------------------------------------------------
# W-types
# ---------------------------------------------------------------------------


def w_stages(ws: Workspace, opts: dict, cfg: DeskConfig) -> Report:
    sig = _signature(ws, opts["sig"])
    n = cfg.max_stage
    chain = enumerate_stage(sig, n, budget=cfg.limits.budget)
    sizes = chain.sizes()
    headline = f"W<{n} of {sig.name}: sizes {', '.join(map(str, sizes))}"
    if chain.stabilized:
        headline += f"; stabilized at stage {chain.stabilized_at}"
    data = {"signature": sig.name, "stage": n, "sizes": sizes, "stabilized_at": chain.stabilized_at}
    return Report(ok=True, headline=headline, data=data)


def w_fold(ws: Workspace, opts: dict, cfg: DeskConfig) -> Report:
    alg = ws.get("algebras", opts["algebra"])
    n = cfg.max_stage
    trees = enumerate_stage(alg.signature, n, budget=cfg.limits.budget).top()
    memo: dict = {}
    values = {w: fold(alg, w, memo) for w in trees}
    ok = is_algebra_morphism(alg, trees, values)
    counts = {render(x): sum(1 for v in values.values() if v == x) for x in alg.carrier}
    data = {
        "stage": n,
        "trees": len(trees),
        "value_counts": counts,
        "values": {w.render(): render(v) for w, v in values.items()},
    }
    headline = f"{len(trees)} trees of rank < {n} folded into {len(alg.carrier)} values"
    return Report(ok=ok, headline=headline, data=data)


def psh_w(ws: Workspace, opts: dict, cfg: DeskConfig) -> Report:
    f = ws.get("maps", opts["map"])
    n = cfg.max_stage
    chain = enumerate_psh_stage(f, n, budget=cfg.limits.budget)
    for k in range(n):
        stage_isomorphism(f, chain.stages[k], chain.stages[k + 1], budget=cfg.limits.budget)
    sizes = chain.sizes()
    data = {"stage": n, "sizes": sizes, "stabilized_at": chain.stabilized_at}
    details = [f"W<{k}: {_sizes(s)}" for k, s in enumerate(sizes)]
    details.append(f"sup and unfold are inverse for every k < {n}")
    headline = f"presheaf W-type of {f.name}: W<{n} has sizes {_sizes(sizes[-1])}"
    return Report(ok=True, headline=headline, data=data, details=details)


def dep_w(ws: Workspace, opts: dict, cfg: DeskConfig) -> Report:
    dsig = ws.get("dep_signatures", opts["dep_sig"])
    n = cfg.max_stage
    stages = enumerate_dep_stage(dsig, n, budget=cfg.limits.budget)
    sizes = [{render(c): len(trees) for c, trees in family.items()} for family in stages]
    bad = next(
        (w for trees in stages[-1].values() for w in trees if not dep_compatible(dsig, w)), None
    )
    data = {"stage": n, "sizes": sizes}
    headline = f"dependent W-type of {dsig.name}: W<{n} has sizes {_sizes(sizes[-1])}"
    return Report(
        ok=bad is None, headline=headline, data=data,
        counterexample=None if bad is None else {"incompatible_tree": bad.to_json()},
    )


# ---------------------------------------------------------------------------
# M-types
# ---------------------------------------------------------------------------


def m_trunc(ws: Workspace, opts: dict, cfg: DeskConfig) -> Report:
    coalg = ws.get("coalgebras", opts["coalgebra"])
    x = _state(coalg, opts["state"])
    depth = opts["depth"] if opts.get("depth") is not None else cfg.max_stage
    t = truncate(coalg, x, depth)
    data = {"state": render(x), "depth": depth, "tree": t.to_json()}
    return Report(ok=True, headline=f"tr_{depth}({render(x)}) = {t.render()}", data=data)


def m_bisim(ws: Workspace, opts: dict, cfg: DeskConfig) -> Report:
    c1 = ws.get("coalgebras", opts["coalgebra"])
    c2 = ws.get("coalgebras", opts.get("other_coalgebra") or opts["coalgebra"])
    x1, x2 = _state(c1, opts["state"]), _state(c2, opts["other_state"])
    same = bisimilar(c1, x1, c2, x2)
    verdict = "bisimilar" if same else "not bisimilar"
    headline = f"{render(x1)} and {render(x2)} are {verdict}"
    if same:
        return Report(ok=True, headline=headline)
    # truncations separate non-bisimilar states within |states1| * |states2| steps
    for depth in range(1, len(c1.states) * len(c2.states) + 1):
        t1, t2 = truncate(c1, x1, depth), truncate(c2, x2, depth)
        if t1 != t2:
            counterexample = {"depth": depth, "left": t1.to_json(), "right": t2.to_json()}
            return Report(ok=False, headline=headline, counterexample=counterexample)
    raise RuntimeError(f"{render(x1)} and {render(x2)} have equal truncations at every depth")


def m_minimize(ws: Workspace, opts: dict, cfg: DeskConfig) -> Report:
    coalg = ws.get("coalgebras", opts["coalgebra"])
    m = minimize(coalg)
    data = {
        "classes": [[render(x) for x in cls] for cls in m.classes()],
        "minimal": m.minimal.to_json(),
    }
    headline = f"{len(coalg.states)} states, {len(m.minimal.states)} classes"
    return Report(ok=True, headline=headline, data=data)


# ---------------------------------------------------------------------------
# Quotients
# ---------------------------------------------------------------------------


def quotient(ws: Workspace, opts: dict, cfg: DeskConfig) -> Report:
    budget = cfg.limits.budget
    if opts.get("sig"):
        rel = bisimulation_relation(
            _signature(ws, opts["sig"]), cfg.max_stage,
            proof_cap=cfg.limits.proof_cap, budget=budget,
        )
    elif opts.get("pair"):
        s, t = (ws.get("maps", name) for name in opts["pair"])
        try:
            rel = witnesses_by_search(s, t, budget=budget)
        except ConditionFailed as exc:
            counterexample = {
                "condition": exc.condition,
                "object": exc.obj,
                "element": None if exc.element is None else to_jsonable(exc.element),
                "detail": str(exc),
            }
            headline = f"not a pseudo-equivalence relation: condition ({exc.condition}) fails"
            return Report(ok=False, headline=headline, counterexample=counterexample)
    else:
        raise MissingArgument("--sig or --pair", "quotient")
    classes, _ = quotient_by_pseudo_eqrel(rel)
    cat = rel.Y.category
    data = {
        "sizes": {obj: len(rel.Y(obj)) for obj in cat.objects},
        "relation_sizes": rel.R.sizes(),
        "classes": {obj: classes[obj].to_json() for obj in cat.objects},
    }
    headline = "; ".join(
        f"{obj}: {len(rel.Y(obj))} elements, {len(classes[obj].carrier)} classes"
        for obj in cat.objects
    )
    return Report(ok=True, headline=headline, data=data)


def aczel(ws: Workspace, opts: dict, cfg: DeskConfig) -> Report:
    sig = _signature(ws, opts["sig"])
    n = cfg.max_stage
    eq = extensional_quotient(sig, n, budget=cfg.limits.budget, max_workers=cfg.max_workers)
    trees, classes = len(eq.class_of), len(eq.carrier)
    oracle = len({denotation(w) for w in eq.class_of})
    data = {
        "signature": sig.name,
        "stage": n,
        "trees": trees,
        "classes": classes,
        "hf_oracle": oracle,
        "quotient": eq.to_json(),
    }
    return Report(
        ok=oracle == classes, headline=f"{trees} trees, {classes} classes", data=data,
        details=[f"hereditarily finite sets denoted: {oracle}"],
        counterexample=None if oracle == classes else {"classes": classes, "hf_oracle": oracle},
    )


# ---------------------------------------------------------------------------
# Simplicial sets
# ---------------------------------------------------------------------------


def kan_check(ws: Workspace, opts: dict, cfg: DeskConfig) -> Report:
    p = ws.get("maps", opts["map"])
    report = kan_check_upto(
        p, cfg.dim, max_workers=cfg.max_workers, budget=cfg.limits.budget
    )
    data = report.to_json()
    return Report(
        ok=report.fibration, headline=report.summary(), data=data,
        counterexample=data["counterexample"],
    )


def lift(ws: Workspace, opts: dict, cfg: DeskConfig) -> Report:
    i, p, top, bottom = (ws.get("maps", opts[k]) for k in ("i", "p", "top", "bottom"))
    problem = build_lifting_problem(i, p, top, bottom)
    filler = solve_lifting(problem, budget=cfg.limits.budget)
    if filler is None:
        return Report(
            ok=False, headline=f"no diagonal filler for {i.name} against {p.name}",
            counterexample={"square": problem.to_json()},
        )
    return Report(
        ok=True, headline=f"filler found for {i.name} against {p.name}",
        data={"filler": _components(filler.d)},
    )


def pi(ws: Workspace, opts: dict, cfg: DeskConfig) -> Report:
    budget = cfg.limits.budget
    f, z = ws.get("maps", opts["map"]), ws.get("maps", opts["over"])
    prod = dependent_product(f, z, budget=budget)
    data = {"sizes": prod.source.sizes(), "global_sections": global_sections(prod, budget=budget)}
    headline = f"{prod.name}: sizes {_sizes(prod.source.sizes())}"
    if not opts.get("along"):
        return Report(ok=True, headline=headline, data=data)
    left, right = adjunction_counts(f, z, ws.get("maps", opts["along"]), budget=budget)
    data["adjunction"] = {"maps_into_product": left, "maps_from_pullback": right}
    return Report(
        ok=left == right, headline=headline, data=data,
        details=[f"hom_A(Y, Pi_f Z) = {left}, hom_B(f*Y, Z) = {right}"],
        counterexample=None if left == right else data["adjunction"],
    )


# ---------------------------------------------------------------------------
# Reedy structures
# ---------------------------------------------------------------------------


def reedy_validate(ws: Workspace, opts: dict, cfg: DeskConfig) -> Report:
    r = ws.get("reedy", opts["reedy"])
    conditions = minus_conditions(r, budget=cfg.limits.budget)
    kind = "generalised Reedy" if r.generalised else "Reedy"
    data = {"structure": r.to_json(), "minus_conditions": conditions.to_json()}
    counterexample = None
    if not conditions.ok:
        counterexample = {
            "no_section": conditions.no_section,
            "no_square": None if conditions.no_square is None else list(conditions.no_square),
        }
    return Report(
        ok=conditions.ok, headline=f"valid {kind} structure; {conditions.summary()}",
        data=data, counterexample=counterexample,
    )


def reedy_check(ws: Workspace, opts: dict, cfg: DeskConfig) -> Report:
    r, f = ws.get("reedy", opts["reedy"]), ws.get("maps", opts["map"])
    report = reedy_fib_cofib_check(
        r, f, opts["side"], opts.get("ambient") or "finite-sets",
        max_workers=cfg.max_workers, budget=cfg.limits.budget,
    )
    failures = report.failures()
    return Report(
        ok=report.ok, headline=report.summary(), data=report.to_json(),
        counterexample=failures[0].to_json() if failures else None,
    )


def abs_pushout(ws: Workspace, opts: dict, cfg: DeskConfig) -> Report:
    r = ws.get("reedy", opts["reedy"])
    if opts.get("square"):
        squares = [tuple(opts["square"])]
    else:
        conditions = minus_conditions(r, budget=cfg.limits.budget)
        if not conditions.compatible:
            p, q = conditions.no_square
            return Report(
                ok=False, headline=f"{p} and {q} complete to no compatible square",
                counterexample={"no_square": [p, q]},
            )
        squares = [
            (sq.p, sq.q, sq.f, sq.g, sq.a, sq.b) for sq in conditions.squares.values()
        ]
    certificates = []
    for square in squares:
        try:
            certificates.append(certify_absolute_pushout(r.base, *square))
        except (NotCommuting, SectionIncompatible, HomPushoutFailed) as exc:
            counterexample = {
                "square": dict(zip(("p", "q", "f", "g", "a", "b"), square, strict=True)),
                "failure": type(exc).__name__,
                "detail": str(exc),
            }
            return Report(ok=False, headline=str(exc), counterexample=counterexample)
    data = {"certificates": [c.to_json() for c in certificates]}
    return Report(ok=True, headline=f"{len(certificates)} absolute pushouts certified", data=data)


def gset_cofib(ws: Workspace, opts: dict, cfg: DeskConfig) -> Report:
    m, obj = ws.get("maps", opts["map"]), opts["object"]
    if obj not in m.category.objects:
        raise WorkspaceError(f"{obj!r} is not an object of the category of {m.name}")
    group = automorphism_group(m.category, obj)
    X = functor_gset(m.source, obj, group)
    Y = functor_gset(m.target, obj, group)
    data = {"group": group.name, "order": len(group)}
    try:
        verdict = gset_free_cofibration_check(X, Y, m.components[obj])
    except (NotMono, NotEquivariant) as exc:
        return Report(
            ok=False, headline=str(exc), data=data,
            counterexample={"failure": type(exc).__name__, "detail": str(exc)},
        )
    data["verdict"] = verdict.to_json()
    return Report(
        ok=verdict.free, headline=verdict.summary(), data=data,
        counterexample=None if verdict.free else verdict.to_json(),
    )


# ---------------------------------------------------------------------------
# Table and dispatch
# ---------------------------------------------------------------------------

_SIG = Arg("--sig", "Signature name (or arity<digits>, e.g. arity012)", required=True)
_REEDY = Arg("--reedy", "Reedy structure name", required=True)

COMMANDS: dict[str, Command] = {
    c.name: c
    for c in (
        Command("w-stages", "Enumerate W<0 .. W<n", w_stages, (_SIG,)),
        Command("w-fold", "Fold W<n into an algebra", w_fold, (
            Arg("--algebra", "Algebra name", required=True),
        )),
        Command("psh-w", "Stages of the presheaf W-type of a map", psh_w, (
            Arg("--map", "Map f: B -> A", required=True),
        )),
        Command("dep-w", "Stages of a dependent W-type", dep_w, (
            Arg("--dep-sig", "Dependent signature name", required=True),
        )),
        Command("m-trunc", "Truncate a coalgebra state", m_trunc, (
            Arg("--coalgebra", "Coalgebra name", required=True),
            Arg("--state", "State", required=True),
            Arg("--depth", "Depth (default: max stage)", type=int),
        )),
        Command("m-bisim", "Decide bisimilarity of two states", m_bisim, (
            Arg("--coalgebra", "Coalgebra name", required=True),
            Arg("--state", "First state", required=True),
            Arg("--other-state", "Second state", required=True),
            Arg("--other-coalgebra", "Coalgebra of the second state (default: same)"),
        )),
        Command("m-minimize", "Minimal coalgebra", m_minimize, (
            Arg("--coalgebra", "Coalgebra name", required=True),
        )),
        Command("quotient", "Quotient by a pseudo-equivalence relation", quotient, (
            Arg("--sig", "Signature: quotient W<n by proof-relevant bisimilarity"),
            Arg("--pair", "Maps s t: R -> Y", nargs=2),
        )),
        Command("aczel", "Extensional quotient of W<n", aczel, (_SIG,)),
        Command("kan-check", "Horn lifting up to --dim", kan_check, (
            Arg("--map", "Map p: Y -> X of simplicial sets", required=True),
        )),
        Command("lift", "Solve a lifting problem", lift, (
            Arg("--i", "Left map i: A -> B", required=True),
            Arg("--p", "Right map p: Y -> X", required=True),
            Arg("--top", "Top map A -> Y", required=True),
            Arg("--bottom", "Bottom map B -> X", required=True),
        )),
        Command("pi", "Dependent product along a map", pi, (
            Arg("--map", "Map f: B -> A", required=True),
            Arg("--over", "Map z: Z -> B", required=True),
            Arg("--along", "Map y: Y -> A for the adjunction count"),
        )),
        Command("reedy-validate", "Validate a Reedy structure and its R- conditions",
                reedy_validate, (_REEDY,)),
        Command("reedy-check", "Reedy fibration/cofibration check", reedy_check, (
            _REEDY,
            Arg("--map", "Map of diagrams", required=True),
            Arg("--side", "fibration or cofibration", required=True,
                choices=("fibration", "cofibration")),
            Arg("--ambient", "finite-sets (default) or truncated-ssets",
                choices=("finite-sets", "truncated-ssets")),
        )),
        Command("abs-pushout", "Certify absolute pushouts in R-", abs_pushout, (
            _REEDY,
            Arg("--square", "p q f g a b (default: every square found in R-)", nargs=6),
        )),
        Command("gset-cofib", "Free-action cofibration check at an object", gset_cofib, (
            Arg("--map", "Map of presheaves", required=True),
            Arg("--object", "Object whose automorphism group acts", required=True),
        )),
    )
}


def run_command(
    ws: Workspace,
    command: str,
    flags: Mapping | argparse.Namespace,
    config: DeskConfig | None = None,
) -> Report:
    """Dispatch *command*; common flags (max_stage, dim, budget, ...) override *config*."""
    if command not in COMMANDS:
        raise UnknownCommand(command)
    spec = COMMANDS[command]
    values = dict(vars(flags) if isinstance(flags, argparse.Namespace) else flags)
    cfg = copy.deepcopy(config) if config is not None else DeskConfig()
    apply_overrides(argparse.Namespace(**values), cfg)
    opts = {arg.dest: values.get(arg.dest) for arg in spec.args}
    for arg in spec.args:
        if arg.required and opts[arg.dest] is None:
            raise MissingArgument(arg.flag, command)

    t0 = time.time()
    report = spec.handler(ws, opts, cfg)
    elapsed = time.time() - t0
    log.info("%s: %s", command, report.headline)
    return replace(
        report,
        command=command,
        args={k: v for k, v in opts.items() if v is not None},
        budget=cfg.limits.budget,
        elapsed=elapsed,
    )
