"""Partial colorings of rules, their lattice, and the applicability classification."""

from __future__ import annotations

import json
from collections.abc import Iterable
from dataclasses import dataclass
from typing import Literal

from ._bits import iter_bits, mask_of, to_set
from .program import Program
from .rdg import Rdg

__all__ = [
    "PLUS",
    "MINUS",
    "Coloring",
    "Conflict",
    "Status",
    "RuleSets",
    "Interpretation3",
    "leq",
    "join",
    "classify",
    "sets",
    "sets_masks",
    "interpretation_of",
]

PLUS = "+"
MINUS = "-"


@dataclass(frozen=True)
class Coloring:
    """Partial map from rule ids to applied (plus) / not applied (minus).

    Stored as two int bitsets so copies along search branches are free.
    """

    plus_mask: int = 0
    minus_mask: int = 0

    def __post_init__(self) -> None:
        if self.plus_mask & self.minus_mask:
            raise ValueError(f"rule r{(self.plus_mask & self.minus_mask).bit_length() - 1} colored twice")

    @classmethod
    def of(cls, plus: Iterable[int] = (), minus: Iterable[int] = ()) -> Coloring:
        return cls(mask_of(plus), mask_of(minus))

    @classmethod
    def empty(cls) -> Coloring:
        return cls(0, 0)

    @property
    def plus(self) -> frozenset[int]:
        return to_set(self.plus_mask)

    @property
    def minus(self) -> frozenset[int]:
        return to_set(self.minus_mask)

    @property
    def colored_mask(self) -> int:
        return self.plus_mask | self.minus_mask

    def color_of(self, rule: int) -> str | None:
        bit = 1 << rule
        if self.plus_mask & bit:
            return PLUS
        if self.minus_mask & bit:
            return MINUS
        return None

    def is_total(self, g: Rdg) -> bool:
        return self.colored_mask & g.vmask == g.vmask

    def size(self) -> int:
        return self.colored_mask.bit_count()

    def __str__(self) -> str:
        def fmt(mask: int) -> str:
            return "{" + ",".join(f"r{i}" for i in iter_bits(mask)) + "}"

        return f"⊕:{fmt(self.plus_mask)} ⊖:{fmt(self.minus_mask)}"

    def to_json(self) -> str:
        return json.dumps({"plus": sorted(self.plus), "minus": sorted(self.minus)})

    @classmethod
    def from_json(cls, text: str) -> Coloring:
        data = json.loads(text)
        return cls.of(data.get("plus", ()), data.get("minus", ()))


@dataclass(frozen=True)
class Conflict:
    """Why an operator has no result; ``rule`` is the lowest offending rule id."""

    rule: int
    reason: Literal["both-colors", "operator-undefined"]


@dataclass(frozen=True)
class Status:
    supported: bool
    unsupported: bool
    blocked: bool
    unblocked: bool


@dataclass(frozen=True)
class RuleSets:
    s: frozenset[int]
    sbar: frozenset[int]
    b: frozenset[int]
    bbar: frozenset[int]


@dataclass(frozen=True)
class Interpretation3:
    """Three-valued interpretation: atoms known true (``x``) and known false (``y``)."""

    x: frozenset[str]
    y: frozenset[str]

    def __post_init__(self) -> None:
        if self.x & self.y:
            raise ValueError(f"atoms both true and false: {sorted(self.x & self.y)}")

    @classmethod
    def of(cls, x: Iterable[str] = (), y: Iterable[str] = ()) -> Interpretation3:
        return cls(frozenset(x), frozenset(y))

    def leq(self, other: Interpretation3) -> bool:
        return self.x <= other.x and self.y <= other.y

    def __str__(self) -> str:
        return f"true: {_fmt_atoms(self.x)}  false: {_fmt_atoms(self.y)}"


def _fmt_atoms(atoms: Iterable[str]) -> str:
    return "{" + ", ".join(sorted(atoms)) + "}"


def leq(a: Coloring, b: Coloring) -> bool:
    return a.plus_mask & ~b.plus_mask == 0 and a.minus_mask & ~b.minus_mask == 0


def join(a: Coloring, b: Coloring) -> Coloring | Conflict:
    plus = a.plus_mask | b.plus_mask
    minus = a.minus_mask | b.minus_mask
    clash = plus & minus
    if clash:
        return Conflict((clash & -clash).bit_length() - 1, "both-colors")
    return Coloring(plus, minus)


def _status_bits(g: Rdg, plus: int, minus: int, r: int) -> tuple[bool, bool, bool, bool]:
    def_mask = g.def_mask
    supported = True
    unsupported = False
    for q in g.pbodies[r]:
        defs = def_mask[q]
        if not defs & plus:
            supported = False
        if not defs & ~minus:
            unsupported = True
    preds = g.pred1_mask[r]
    return supported, unsupported, bool(preds & plus), not (preds & ~minus)


def classify(g: Rdg, p: Program, c: Coloring, r: int) -> Status:
    """Applicability status of rule ``r`` from the colors of its direct predecessors."""
    return Status(*_status_bits(g, c.plus_mask, c.minus_mask, r))


def sets_masks(g: Rdg, plus: int, minus: int) -> tuple[int, int, int, int]:
    """The four rule sets of :func:`sets` as bitsets (s, sbar, b, bbar)."""
    s = sbar = b = bbar = 0
    def_mask = g.def_mask
    pred1_mask = g.pred1_mask
    pbodies = g.pbodies
    notminus = ~minus
    for r in iter_bits(g.vmask):
        bit = 1 << r
        sup = True
        for q in pbodies[r]:
            defs = def_mask[q]
            if not defs & plus:
                sup = False
            if not defs & notminus:
                sbar |= bit
        if sup:
            s |= bit
        preds = pred1_mask[r]
        if preds & plus:
            b |= bit
        if not preds & notminus:
            bbar |= bit
    return s, sbar, b, bbar


def sets(g: Rdg, p: Program, c: Coloring) -> RuleSets:
    s, sbar, b, bbar = sets_masks(g, c.plus_mask, c.minus_mask)
    return RuleSets(to_set(s), to_set(sbar), to_set(b), to_set(bbar))


def interpretation_of(p: Program, c: Coloring) -> Interpretation3:
    """Atoms made true by plus rules, and atoms all of whose rules are minus."""
    x = {p.rules[r].head for r in iter_bits(c.plus_mask)}
    defined: dict[int, int] = {}
    for rule in p.rules:
        defined[rule.head] = defined.get(rule.head, 0) | (1 << rule.id)
    y = {a for a in range(len(p.atoms)) if defined.get(a, 0) & ~c.minus_mask == 0}
    return Interpretation3(p.names(x), p.names(y))
