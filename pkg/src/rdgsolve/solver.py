"""Backtracking search over coloring sequences under thirteen strategies.

A strategy fixes three things: which rules may be chosen (any uncolored
rule, or only uncolored supported ones), which colors a choice may assign,
and which deterministic closure runs after each choice and at the end.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from ._bits import iter_bits
from .coloring import MINUS, PLUS, Coloring, Conflict, leq, sets_masks
from .operators import (
    _p_star_masks,
    apply_choice,
    choice_candidates,
    op_n,
    op_p,
    op_u,
    pu_closure,
    pv_closure,
)
from .program import Program
from .rdg import Rdg, build_rdg
from .support import closure_from_plus, max_support_mask

__all__ = [
    "Strategy",
    "SearchStats",
    "SearchLimits",
    "SolveResult",
    "ColoringSequence",
    "ResourceLimitError",
    "InvariantError",
    "solve",
    "trace",
]


class Strategy(enum.Enum):
    I = "I"
    II = "II"
    IIplus = "II+"
    IIminus = "II-"
    IIIplus = "III+"
    IIIminus = "III-"
    IV = "IV"
    IVplus = "IV+"
    V = "V"
    Vplus = "V+"
    VI = "VI"
    VIplus = "VI+"
    VIminus = "VI-"

    @classmethod
    def parse(cls, text: str) -> Strategy:
        for s in cls:
            if text in (s.value, s.name):
                return s
        raise ValueError(f"unknown strategy {text!r}")

    def __str__(self) -> str:
        return self.value


@dataclass
class SearchStats:
    choices: int = 0
    assignments: int = 0
    backtracks: int = 0

    def __str__(self) -> str:
        return f"choices={self.choices} assignments={self.assignments} backtracks={self.backtracks}"


@dataclass(frozen=True)
class SearchLimits:
    max_nodes: int | None = None
    # exhaustive guessing without propagation is only attempted on small programs
    guess_rule_limit: int = 15


@dataclass
class ColoringSequence:
    steps: list[tuple[str, Coloring]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def final(self) -> Coloring | None:
        return self.steps[-1][1] if self.steps else None


@dataclass
class SolveResult:
    answers: list[tuple[frozenset[str], Coloring]]
    stats: SearchStats
    complete: bool = True
    limit_reason: str | None = None

    @property
    def answer_sets(self) -> list[frozenset[str]]:
        return [a for a, _ in self.answers]


class ResourceLimitError(RuntimeError):
    pass


class InvariantError(AssertionError):
    pass


class _Stop(Exception):
    pass


# formation of each strategy: choice kind, colors tried, closure after choices
_CONFIG: dict[Strategy, tuple[str, tuple[str, ...], str]] = {
    Strategy.I: ("C", (PLUS, MINUS), "none"),
    Strategy.II: ("C", (PLUS, MINUS), "pu"),
    Strategy.IIplus: ("C", (PLUS,), "pu"),
    Strategy.IIminus: ("C", (MINUS,), "pu"),
    Strategy.IIIplus: ("C", (PLUS,), "none"),
    Strategy.IIIminus: ("C", (MINUS,), "none"),
    Strategy.IV: ("D", (PLUS, MINUS), "none"),
    Strategy.IVplus: ("D", (PLUS,), "none"),
    Strategy.V: ("D", (PLUS, MINUS), "p"),
    Strategy.Vplus: ("D", (PLUS,), "p"),
    Strategy.VI: ("D", (PLUS, MINUS), "pv"),
    Strategy.VIplus: ("D", (PLUS,), "pv"),
    Strategy.VIminus: ("D", (MINUS,), "pv"),
}

_CLOSURE_TAG = {"none": "", "p": "P*", "pu": "(PU)*", "pv": "(PV)*"}
_FINAL_WHEN_TOTAL = frozenset(
    {Strategy.I, Strategy.II, Strategy.IIplus, Strategy.IIminus, Strategy.VI, Strategy.VIplus, Strategy.VIminus}
)
# strategies without propagation during the search get a sound dead-end cut
_CUT = frozenset({Strategy.I, Strategy.IV, Strategy.IVplus})


class _Search:
    def __init__(
        self,
        g: Rdg,
        p: Program,
        strategy: Strategy,
        first: bool,
        limits: SearchLimits,
        debug: bool,
        target: Coloring | None = None,
    ):
        self.g, self.p, self.strategy = g, p, strategy
        self.kind, self.colors, self.closure = _CONFIG[strategy]
        self.first = first
        self.limits = limits
        self.debug = debug
        self.target = target
        self.stats = SearchStats()
        self.found: dict[frozenset[str], Coloring] = {}
        self.path: list[tuple[str, Coloring]] = []
        self.witness: list[tuple[str, Coloring]] | None = None
        self.nodes = 0
        self.visited: set[Coloring] = set()
        self.unicolor = len(self.colors) == 1

    # ---- deterministic pieces -------------------------------------------------

    def close(self, c: Coloring, changed: int | None) -> Coloring | Conflict:
        g = self.g
        if self.closure == "none":
            return c
        if self.closure == "p":
            seed = g.vmask if changed is None else _with_neighbours(g, changed)
            out = _p_star_masks(g, c.plus_mask, c.minus_mask, seed, None)
            return out if isinstance(out, Conflict) else Coloring(*out)
        if self.closure == "pu":
            return pu_closure(g, self.p, c, changed)
        return pv_closure(g, self.p, c, changed)

    def dead(self, c: Coloring) -> bool:
        """True when P or U already fails on ``c``; no total extension can then pass the final test."""
        g = self.g
        s, sbar, b, bbar = sets_masks(g, c.plus_mask, c.minus_mask)
        if (s & bbar) & c.minus_mask or (sbar | b) & c.plus_mask:
            return True
        return bool(c.plus_mask & ~max_support_mask(g, c.minus_mask))

    def p_fixpoint(self, c: Coloring) -> bool:
        return op_p(self.g, self.p, c) == c

    def close_off(self, c: Coloring) -> Coloring | None:
        """Final operator of the unicolor guessing strategies; None on failure."""
        g = self.g
        out = _p_star_masks(g, c.plus_mask, c.minus_mask, g.vmask, None)
        if isinstance(out, Conflict):
            return None
        mid = Coloring(*out)
        if self.strategy is Strategy.IIIminus:
            return mid
        fin = op_u(g, self.p, mid)
        return None if isinstance(fin, Conflict) else fin

    def with_n(self, c: Coloring) -> Coloring | None:
        """Apply N and keep the result only if it is a P fixpoint."""
        fin = op_n(self.g, self.p, c)
        if not self.p_fixpoint(fin):
            return None
        if self.debug and self.closure == "p":
            newly = fin.minus_mask & ~c.minus_mask
            _, sbar, _, _ = sets_masks(self.g, fin.plus_mask, fin.minus_mask)
            if newly & ~sbar:
                raise InvariantError("N colored a supported rule minus on an accepted leaf")
        return fin

    # ---- invariants -------------------------------------------------------------

    def check_prefix(self, parent: Coloring | None, c: Coloring) -> None:
        g = self.g
        if parent is not None and not leq(parent, c):
            raise InvariantError(f"sequence not increasing: {parent} then {c}")
        if self.closure in ("p", "pu", "pv"):
            s, sbar, b, bbar = sets_masks(g, c.plus_mask, c.minus_mask)
            if (s & bbar) & ~c.plus_mask or (sbar | b) & ~c.minus_mask:
                raise InvariantError(f"coloring {c} is not closed under P")
        if self.closure == "pu" and c.minus_mask | max_support_mask(g, c.minus_mask) != g.vmask:
            raise InvariantError(f"coloring {c} is not closed under U")
        if self.kind == "D":
            inside = closure_from_plus(g, Coloring(0, g.vmask & ~c.plus_mask))
            if inside != c.plus_mask:
                raise InvariantError(f"plus rules of {c} do not form a support graph")

    # ---- search -----------------------------------------------------------------

    def tick(self) -> None:
        self.nodes += 1
        limit = self.limits.max_nodes
        if limit is not None and self.nodes > limit:
            raise ResourceLimitError(f"node limit {limit} exceeded")

    def accept(self, c: Coloring, fin: Coloring, tag: str) -> None:
        self.stats.assignments += fin.size() - c.size()
        if self.target is not None:
            if fin == self.target:
                self.witness = self.path + ([(tag, fin)] if tag else [])
                raise _Stop
            return
        answer = self.p.heads(iter_bits(fin.plus_mask))
        self.found.setdefault(answer, fin)
        if self.first:
            raise _Stop

    def pruned_by_target(self, c: Coloring) -> bool:
        return self.target is not None and not leq(c, self.target)

    def run(self) -> None:
        start = Coloring()
        tag = _CLOSURE_TAG[self.closure]
        c0 = self.close(start, None)
        if isinstance(c0, Conflict):
            self.stats.backtracks += 1
            return
        self.stats.assignments += c0.size()
        if self.debug:
            self.check_prefix(None, c0)
        if self.pruned_by_target(c0):
            return
        if tag:
            self.path.append((tag, c0))
        try:
            self.node(c0, -1)
        except _Stop:
            pass

    def node(self, c: Coloring, last: int) -> None:
        self.tick()
        g, st = self.g, self.strategy
        if st in _CUT and self.dead(c):
            self.stats.backtracks += 1
            return

        basis = c
        if st in _FINAL_WHEN_TOTAL:
            if c.is_total(g):
                if st is Strategy.I and not (self.p_fixpoint(c) and op_u(g, self.p, c) == c):
                    self.stats.backtracks += 1
                else:
                    self.accept(c, c, "")
                return
        elif st in (Strategy.IIIplus, Strategy.IIIminus):
            fin = self.close_off(c)
            if fin is None:
                self.stats.backtracks += 1
                return
            if fin.is_total(g):
                self.accept(c, fin, "U∘P*" if st is Strategy.IIIplus else "P*")
                return
            basis = fin
        elif st in (Strategy.IVplus, Strategy.Vplus):
            fin = self.with_n(c)
            if fin is not None and (self.target is None or fin == self.target):
                # larger plus sets cannot yield another answer set
                self.accept(c, fin, "N")
                return
            self.stats.backtracks += 1

        if self.kind == "C":
            cands = choice_candidates(g, self.p, basis, "C")
            if self.unicolor:
                cands = [r for r in cands if r > last]
        else:
            cands = choice_candidates(g, self.p, c, "D")

        if not cands:
            if st in (Strategy.IV, Strategy.V):
                fin = self.with_n(c)
                if fin is None:
                    self.stats.backtracks += 1
                else:
                    self.accept(c, fin, "N")
            elif st not in (Strategy.IVplus, Strategy.Vplus):
                self.stats.backtracks += 1
            return

        if self.unicolor:
            for r in cands:
                self.branch(c, r, self.colors[0])
        else:
            for color in self.colors:
                self.branch(c, cands[0], color)

    def branch(self, c: Coloring, r: int, color: str) -> None:
        self.stats.choices += 1
        chosen = apply_choice(c, r, color)
        nxt = self.close(chosen, 1 << r)
        if isinstance(nxt, Conflict):
            self.stats.assignments += 1
            self.stats.backtracks += 1
            return
        self.stats.assignments += nxt.size() - c.size()
        if self.debug:
            self.check_prefix(c, nxt)
        if self.pruned_by_target(nxt):
            return
        if self.unicolor and self.kind == "D":
            if nxt in self.visited:
                return
            self.visited.add(nxt)
        tag = _CLOSURE_TAG[self.closure]
        choice = self.kind + color
        label = f"{tag}∘{choice}" if tag else choice
        self.path.append((label, nxt))
        self.node(nxt, r)
        self.path.pop()


def _with_neighbours(g: Rdg, rules: int) -> int:
    seed = rules
    for r in iter_bits(rules):
        for r2 in g.succ0[r]:
            seed |= 1 << r2
        for r2 in g.succ1[r]:
            seed |= 1 << r2
    return seed


def _sorted_answers(found: dict[frozenset[str], Coloring]) -> list[tuple[frozenset[str], Coloring]]:
    return sorted(found.items(), key=lambda item: sorted(item[0]))


def solve(
    p: Program,
    strategy: Strategy | str = Strategy.VI,
    mode: str = "all",
    limits: SearchLimits | None = None,
    debug: bool = False,
    g: Rdg | None = None,
) -> SolveResult:
    """Answer sets of ``p`` found by the given strategy, with search statistics.

    ``mode`` is ``"all"`` or ``"first"``. Hitting a limit returns whatever was
    found so far with ``complete=False``.
    """
    if isinstance(strategy, str):
        strategy = Strategy.parse(strategy)
    if mode not in ("all", "first"):
        raise ValueError(f"mode must be 'all' or 'first', not {mode!r}")
    limits = limits or SearchLimits()
    if strategy is Strategy.I and len(p.rules) > limits.guess_rule_limit:
        return SolveResult(
            [], SearchStats(), complete=False,
            limit_reason=f"strategy I is limited to {limits.guess_rule_limit} rules",
        )
    g = g if g is not None else build_rdg(p)
    search = _Search(g, p, strategy, mode == "first", limits, debug)
    try:
        search.run()
    except ResourceLimitError as exc:
        return SolveResult(_sorted_answers(search.found), search.stats, False, str(exc))
    return SolveResult(_sorted_answers(search.found), search.stats)


def trace(
    p: Program,
    strategy: Strategy | str,
    target: Coloring,
    limits: SearchLimits | None = None,
) -> ColoringSequence | None:
    """A coloring sequence of the strategy ending in ``target``, or None if there is none."""
    if isinstance(strategy, str):
        strategy = Strategy.parse(strategy)
    g = build_rdg(p)
    if not target.is_total(g):
        return None
    limits = limits or SearchLimits()
    if strategy is Strategy.I and len(p.rules) > limits.guess_rule_limit:
        return None
    search = _Search(g, p, strategy, True, limits, False, target=target)
    search.run()
    if search.witness is None:
        return None
    return ColoringSequence(search.witness)
