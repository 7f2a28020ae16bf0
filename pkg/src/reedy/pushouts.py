"""Split epis and absolute pushouts in R-.

Two conditions on the minus class make latching objects well behaved:

(i)  every p: r -> s in R- has a section a, p a = 1;
(ii) any two p: r -> s, q: r -> t in R- complete to a commuting square
     f p = g q with f, g in R-, a section a of p and a section b of g
     such that q a = b f.

A square as in (ii) is an absolute pushout. ``certify_absolute_pushout``
replays the equational argument as word rewriting and then checks that
every co-representable Hom(x, -) sends the square to a pushout of sets.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from shared.budget import SearchCounter
from shared.fincat import FinCategory, build_diagram, finite_colimit, span_category

from .checks import collision
from .structure import ReedyError, ReedyStructure

log = logging.getLogger(__name__)

Word = tuple[str, ...]


class NotCommuting(ReedyError):
    def __init__(self, fp: str, gq: str):
        self.composites = (fp, gq)
        super().__init__(f"Square does not commute: f . p = {fp} but g . q = {gq}")


class SectionIncompatible(ReedyError):
    def __init__(self, qa: str, bf: str):
        self.composites = (qa, bf)
        super().__init__(f"Sections are not compatible: q . a = {qa} but b . f = {bf}")


class HomPushoutFailed(ReedyError):
    def __init__(self, obj: str, detail: str):
        self.obj = obj
        super().__init__(f"Hom({obj}, -) does not send the square to a pushout: {detail}")


@dataclass(frozen=True)
class CompatibleSquare:
    """f p = g q with a section a of p and a section b of g, q a = b f."""

    p: str
    q: str
    f: str
    g: str
    a: str
    b: str

    def to_json(self) -> dict:
        return {k: getattr(self, k) for k in ("p", "q", "f", "g", "a", "b")}


def sections_of(cat: FinCategory, p: str) -> list[str]:
    """Every a with p . a = 1."""
    src, dst = cat.ends[p]
    unit = cat.identity(dst)
    return [a for a in cat.hom(dst, src) if cat.compose(p, a) == unit]


def complete_square(
    r: ReedyStructure, p: str, q: str, counter: SearchCounter | None = None
) -> CompatibleSquare | None:
    """First square as in (ii) for the pair (p, q), searching objects in order."""
    cat = r.base
    s, t = cat.dst(p), cat.dst(q)
    sections_p = sections_of(cat, p)
    for P in cat.objects:
        for f in cat.hom(s, P):
            if f not in r.minus:
                continue
            fp = cat.compose(f, p)
            for g in cat.hom(t, P):
                if g not in r.minus or cat.compose(g, q) != fp:
                    continue
                if counter is not None:
                    counter.tick()
                for a in sections_p:
                    qa = cat.compose(q, a)
                    for b in sections_of(cat, g):
                        if cat.compose(b, f) == qa:
                            return CompatibleSquare(p, q, f, g, a, b)
    return None


@dataclass
class MinusConditionsReport:
    sections: dict[str, str] = field(default_factory=dict)
    squares: dict[tuple[str, str], CompatibleSquare] = field(default_factory=dict)
    no_section: str | None = None
    no_square: tuple[str, str] | None = None

    @property
    def split_epi(self) -> bool:
        return self.no_section is None

    @property
    def compatible(self) -> bool:
        return self.no_square is None

    @property
    def ok(self) -> bool:
        return self.split_epi and self.compatible

    def summary(self) -> str:
        one = (
            f"(i) holds for {len(self.sections)} maps" if self.split_epi
            else f"(i) fails: {self.no_section} has no section"
        )
        two = (
            f"(ii) holds for {len(self.squares)} pairs" if self.compatible
            else f"(ii) fails for {self.no_square[0]}, {self.no_square[1]}"
        )
        return f"{one}; {two}"

    def to_json(self) -> dict:
        return {
            "split_epi": self.split_epi,
            "compatible_squares": self.compatible,
            "sections": dict(self.sections),
            "squares": [sq.to_json() for sq in self.squares.values()],
            "no_section": self.no_section,
            "no_square": None if self.no_square is None else list(self.no_square),
        }


def minus_conditions(r: ReedyStructure, *, budget: int | None = None) -> MinusConditionsReport:
    """Search witnesses for (i) and (ii); each stops at its first counterexample."""
    cat = r.base
    counter = SearchCounter(budget, "checking conditions on R-")
    report = MinusConditionsReport()
    minus = [m for m in cat.morphisms if m in r.minus]
    for p in minus:
        counter.tick()
        found = sections_of(cat, p)
        if not found:
            report.no_section = p
            break
        report.sections[p] = found[0]
    for p in minus:
        for q in cat.out_of(cat.src(p)):
            if q not in r.minus:
                continue
            square = complete_square(r, p, q, counter)
            if square is None:
                report.no_square = (p, q)
                break
            report.squares[(p, q)] = square
        if report.no_square is not None:
            break
    log.info("conditions on R- of %s: %s", r.name or "base", report.summary())
    return report


# ---------------------------------------------------------------------------
# Absolute pushouts
# ---------------------------------------------------------------------------


# name -> (left side, right side); words compose left to right as written
RULES: dict[str, tuple[Word, Word]] = {
    "chi = psi b": (("chi",), ("psi", "b")),
    "g q = f p": (("g", "q"), ("f", "p")),
    "b f = q a": (("b", "f"), ("q", "a")),
    "psi q = phi p": (("psi", "q"), ("phi", "p")),
    "phi p = psi q": (("phi", "p"), ("psi", "q")),
    "p a = 1": (("p", "a"), ()),
    "q c = 1": (("q", "c"), ()),
    "chi g q = psi q": (("chi", "g", "q"), ("psi", "q")),
}

# the last derivation starts from chi g = chi g q c and uses the one before it as a rule
DERIVATIONS: dict[str, tuple[Word, tuple[str, ...], Word]] = {
    "chi f = phi": (
        ("chi", "f"),
        ("chi = psi b", "b f = q a", "psi q = phi p", "p a = 1"),
        ("phi",),
    ),
    "chi g q = psi q": (
        ("chi", "g", "q"),
        ("chi = psi b", "g q = f p", "b f = q a", "psi q = phi p", "p a = 1", "phi p = psi q"),
        ("psi", "q"),
    ),
    "chi g = psi": (("chi", "g", "q", "c"), ("chi g q = psi q", "q c = 1"), ("psi",)),
}


def _spell(word: Word) -> str:
    return " ".join(word) or "1"


def rewrite(word: Word, rule: str) -> Word:
    """Replace the first occurrence of the rule's left side."""
    lhs, rhs = RULES[rule]
    for i in range(len(word) - len(lhs) + 1):
        if word[i:i + len(lhs)] == lhs:
            return word[:i] + rhs + word[i + len(lhs):]
    raise ReedyError(f"Rule {rule!r} does not apply to {_spell(word)}")


@dataclass
class PushoutCertificate:
    square: CompatibleSquare
    section_of_q: str
    steps: list[str] = field(default_factory=list)
    hom_sizes: dict[str, int] = field(default_factory=dict)

    def summary(self) -> str:
        return (
            f"absolute pushout: {len(self.steps)} rewriting steps, "
            f"{len(self.hom_sizes)} co-representables checked"
        )

    def to_json(self) -> dict:
        return {
            "square": self.square.to_json(),
            "section_of_q": self.section_of_q,
            "steps": list(self.steps),
            "hom_pushouts": dict(self.hom_sizes),
        }


def _replay(name: str) -> list[str]:
    start, rules, goal = DERIVATIONS[name]
    word, lines = start, []
    for rule in rules:
        new = rewrite(word, rule)
        lines.append(f"{_spell(word)} = {_spell(new)}  [{rule}]")
        word = new
    if word != goal:
        raise ReedyError(f"Derivation of {name} ends at {_spell(word)}")
    return lines


def _hom_pushout(cat: FinCategory, sq: CompatibleSquare, x: str) -> int:
    """Check Hom(x, -) of the square is a pushout; return |Hom(x, P)|."""
    r, s, t = cat.src(sq.p), cat.dst(sq.p), cat.dst(sq.q)
    P = cat.dst(sq.f)
    span = build_diagram(
        span_category(),
        {"A": cat.hom(x, r), "L": cat.hom(x, s), "R": cat.hom(x, t)},
        {
            "l": {h: cat.compose(sq.p, h) for h in cat.hom(x, r)},
            "m": {h: cat.compose(sq.q, h) for h in cat.hom(x, r)},
        },
    )
    push = finite_colimit(span)
    leg = {"A": lambda h: cat.compose(sq.f, sq.p, h), "L": lambda h: cat.compose(sq.f, h),
           "R": lambda h: cat.compose(sq.g, h)}
    fn = {rep: leg[rep[0]](rep[1]) for rep in push.carrier}
    clash = collision(fn)
    if clash is not None:
        raise HomPushoutFailed(x, f"{clash[0][1]} and {clash[1][1]} both go to {fn[clash[0]]}")
    missing = [h for h in cat.hom(x, P) if h not in set(fn.values())]
    if missing:
        raise HomPushoutFailed(x, f"{missing[0]} is not reached")
    return len(fn)


def certify_absolute_pushout(
    cat: FinCategory, p: str, q: str, f: str, g: str, a: str, b: str
) -> PushoutCertificate:
    """Certify that f p = g q is an absolute pushout.

    a must be a section of p and b a section of g with q a = b f; q needs a
    section as well. Raises ``NotCommuting``, ``SectionIncompatible`` or
    ``HomPushoutFailed`` for the object x where Hom(x, -) fails.
    """
    if cat.src(p) != cat.src(q) or cat.dst(p) != cat.src(f) or cat.dst(q) != cat.src(g):
        raise ReedyError(f"{p}, {q}, {f}, {g} do not form a square")
    if cat.dst(f) != cat.dst(g):
        raise ReedyError(f"{f} and {g} have different targets")
    fp, gq = cat.compose(f, p), cat.compose(g, q)
    if fp != gq:
        raise NotCommuting(fp, gq)
    if a not in sections_of(cat, p):
        raise ReedyError(f"{a} is not a section of {p}")
    if b not in sections_of(cat, g):
        raise ReedyError(f"{b} is not a section of {g}")
    qa, bf = cat.compose(q, a), cat.compose(b, f)
    if qa != bf:
        raise SectionIncompatible(qa, bf)
    of_q = sections_of(cat, q)
    if not of_q:
        raise ReedyError(f"{q} has no section, so chi g = psi cannot be cancelled from chi g q")

    square = CompatibleSquare(p, q, f, g, a, b)
    cert = PushoutCertificate(square=square, section_of_q=of_q[0])
    for name in DERIVATIONS:
        cert.steps.extend(_replay(name))
    for x in cat.objects:
        cert.hom_sizes[x] = _hom_pushout(cat, square, x)
    log.debug("certified %s . %s = %s . %s: %s", f, p, g, q, cert.summary())
    return cert


def mediating_morphism(
    cat: FinCategory, cert: PushoutCertificate, phi: str, psi: str
) -> str:
    """chi = psi . b for a cocone phi: s -> z, psi: t -> z with phi p = psi q."""
    sq = cert.square
    if cat.compose(phi, sq.p) != cat.compose(psi, sq.q):
        raise NotCommuting(cat.compose(phi, sq.p), cat.compose(psi, sq.q))
    chi = cat.compose(psi, sq.b)
    if cat.compose(chi, sq.f) != phi or cat.compose(chi, sq.g) != psi:
        raise ReedyError(f"{chi} does not mediate between {phi} and {psi}")
    return chi
