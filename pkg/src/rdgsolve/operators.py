"""Deterministic propagation operators and the two choice operators on colorings.

Every operator that can be undefined returns ``Coloring | Conflict``; a
Conflict means the current branch of a search is dead.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable
from typing import Literal

from ._bits import iter_bits, lowest
from .coloring import MINUS, PLUS, Coloring, Conflict, join, sets_masks
from .program import Program
from .rdg import Rdg
from .support import QueueStats, closure_from_plus, max_support_mask

__all__ = [
    "OpResult",
    "op_p",
    "op_p_star",
    "op_u",
    "op_t",
    "op_t_star",
    "op_v",
    "op_n",
    "op_pu_star",
    "op_pv_star",
    "choice_candidates",
    "apply_choice",
    "u_after_p_star",
    "p_star_after_u",
    "pu_closure",
    "pv_closure",
]

OpResult = Coloring | Conflict


def op_p(g: Rdg, p: Program, c: Coloring) -> OpResult:
    """One propagation step: color supported-and-unblocked rules plus, unsupported-or-blocked minus."""
    s, sbar, b, bbar = sets_masks(g, c.plus_mask, c.minus_mask)
    return join(c, Coloring(s & bbar, sbar | b))


def _decision(g: Rdg, plus: int, minus: int, r: int) -> int:
    """+1 if ``r`` must be plus, -1 if it must be minus, 0 if still open."""
    preds = g.pred1_mask[r]
    if preds & plus:
        return -1
    def_mask = g.def_mask
    notminus = ~minus
    supported = True
    for q in g.pbodies[r]:
        defs = def_mask[q]
        if not defs & notminus:
            return -1
        if supported and not defs & plus:
            supported = False
    if supported and not preds & notminus:
        return 1
    return 0


def _p_star_masks(
    g: Rdg, plus: int, minus: int, seed: int, stats: QueueStats | None
) -> tuple[int, int] | Conflict:
    """Worklist closure under P, starting from the decided rules among ``seed``."""
    queued = 0
    queue: deque[tuple[int, int]] = deque()
    for r in iter_bits(seed & g.vmask):
        d = _decision(g, plus, minus, r)
        if d:
            queue.append((r, d))
            queued |= 1 << r
    pushes = len(queue)
    succ0, succ1 = g.succ0, g.succ1
    conflict: Conflict | None = None
    while queue:
        r, d = queue.popleft()
        bit = 1 << r
        if d > 0:
            if minus & bit:
                conflict = Conflict(r, "both-colors")
                break
            if plus & bit:
                continue
            plus |= bit
        else:
            if plus & bit:
                conflict = Conflict(r, "both-colors")
                break
            if minus & bit:
                continue
            minus |= bit
        for succ in (succ0[r], succ1[r]):
            for r2 in succ:
                b2 = 1 << r2
                if queued & b2:
                    continue
                d2 = _decision(g, plus, minus, r2)
                if d2:
                    queued |= b2
                    queue.append((r2, d2))
                    pushes += 1
    if stats is not None:
        stats.pushes.append(pushes)
    if conflict is not None:
        return conflict
    return plus, minus


def op_p_star(
    g: Rdg,
    p: Program,
    c: Coloring,
    changed: Iterable[int] | None = None,
    stats: QueueStats | None = None,
) -> OpResult:
    """Least P-closed coloring above ``c``.

    ``changed`` narrows the initial worklist; it is only valid when ``c`` was
    P-closed before those rules got their colors (pass the rules and their
    successors).
    """
    if changed is None:
        seed = g.vmask
    else:
        seed = 0
        for r in changed:
            seed |= 1 << r
    out = _p_star_masks(g, c.plus_mask, c.minus_mask, seed, stats)
    if isinstance(out, Conflict):
        return out
    return Coloring(*out)


def op_u(g: Rdg, p: Program, c: Coloring, stats: QueueStats | None = None) -> OpResult:
    """Color minus every rule outside the maximal support graph avoiding ``c``'s minus rules."""
    v = max_support_mask(g, c.minus_mask, stats)
    missing = c.plus_mask & ~v
    if missing:
        return Conflict(lowest(missing), "operator-undefined")
    return Coloring(c.plus_mask, g.vmask & ~v)


def op_t(g: Rdg, p: Program, c: Coloring) -> Coloring:
    """One step adding all supported rules that are not already minus."""
    s, _, _, _ = sets_masks(g, c.plus_mask, c.minus_mask)
    return Coloring(c.plus_mask | (s & ~c.minus_mask), c.minus_mask)


def op_t_star(g: Rdg, p: Program, c: Coloring, stats: QueueStats | None = None) -> Coloring:
    return Coloring(closure_from_plus(g, c, stats), c.minus_mask)


def op_v(g: Rdg, p: Program, c: Coloring, stats: QueueStats | None = None) -> Coloring:
    reach = closure_from_plus(g, c, stats)
    return Coloring(c.plus_mask, g.vmask & ~reach)


def op_n(g: Rdg, p: Program, c: Coloring) -> Coloring:
    return Coloring(c.plus_mask, g.vmask & ~c.plus_mask)


def _alternate(g: Rdg, p: Program, c: Coloring, second) -> OpResult:
    while True:
        c1 = op_p(g, p, c)
        if isinstance(c1, Conflict):
            return c1
        c2 = second(g, p, c1)
        if isinstance(c2, Conflict):
            return c2
        if c2 == c:
            return c
        c = c2


def op_pu_star(g: Rdg, p: Program, c: Coloring) -> OpResult:
    """Joint P/U closure, iterating a single P step followed by U until nothing changes."""
    return _alternate(g, p, c, op_u)


def op_pv_star(g: Rdg, p: Program, c: Coloring) -> OpResult:
    """Joint P/V closure in the same alternation as :func:`op_pu_star`."""
    return _alternate(g, p, c, op_v)


def _neighbours(g: Rdg, rules: int) -> int:
    seed = rules
    for r in iter_bits(rules):
        for r2 in g.succ0[r]:
            seed |= 1 << r2
        for r2 in g.succ1[r]:
            seed |= 1 << r2
    return seed


def _closure(
    g: Rdg, c: Coloring, changed: int | None, use_v: bool, stats: QueueStats | None
) -> OpResult:
    """P* and U (or V) alternated to a joint fixpoint.

    Reaches the same coloring as :func:`op_pu_star` / :func:`op_pv_star` but
    runs P to closure between support steps and reseeds the worklist with
    only the rules whose color just changed.
    """
    plus, minus = c.plus_mask, c.minus_mask
    seed = g.vmask if changed is None else _neighbours(g, changed)
    while True:
        out = _p_star_masks(g, plus, minus, seed, stats)
        if isinstance(out, Conflict):
            return out
        plus, minus = out
        if use_v:
            reach = closure_from_plus(g, Coloring(plus, minus), stats)
        else:
            reach = max_support_mask(g, minus, stats)
            missing = plus & ~reach
            if missing:
                return Conflict(lowest(missing), "operator-undefined")
        fresh = g.vmask & ~reach & ~minus
        if not fresh:
            return Coloring(plus, minus)
        minus |= fresh
        seed = _neighbours(g, fresh)


def pu_closure(
    g: Rdg, p: Program, c: Coloring, changed: int | None = None, stats: QueueStats | None = None
) -> OpResult:
    return _closure(g, c, changed, False, stats)


def pv_closure(
    g: Rdg, p: Program, c: Coloring, changed: int | None = None, stats: QueueStats | None = None
) -> OpResult:
    return _closure(g, c, changed, True, stats)


def choice_candidates(g: Rdg, p: Program, c: Coloring, kind: Literal["C", "D"]) -> list[int]:
    """Uncolored rules, or for ``kind="D"`` only the uncolored supported ones, in id order."""
    open_mask = g.vmask & ~c.colored_mask
    if kind == "C":
        return list(iter_bits(open_mask))
    if kind != "D":
        raise ValueError(f"unknown choice kind {kind!r}")
    out = []
    plus, def_mask = c.plus_mask, g.def_mask
    for r in iter_bits(open_mask):
        if all(def_mask[q] & plus for q in g.pbodies[r]):
            out.append(r)
    return out


def apply_choice(c: Coloring, r: int, color: str) -> Coloring:
    bit = 1 << r
    if c.colored_mask & bit:
        raise ValueError(f"rule r{r} is already colored")
    if color == PLUS:
        return Coloring(c.plus_mask | bit, c.minus_mask)
    if color == MINUS:
        return Coloring(c.plus_mask, c.minus_mask | bit)
    raise ValueError(f"unknown color {color!r}")


def u_after_p_star(g: Rdg, p: Program, c: Coloring) -> OpResult:
    first = op_p_star(g, p, c)
    return first if isinstance(first, Conflict) else op_u(g, p, first)


def p_star_after_u(g: Rdg, p: Program, c: Coloring) -> OpResult:
    first = op_u(g, p, c)
    return first if isinstance(first, Conflict) else op_p_star(g, p, first)
