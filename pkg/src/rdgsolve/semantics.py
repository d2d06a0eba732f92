"""Fitting's three-valued operator, unfounded sets and the well-founded model."""

from __future__ import annotations

from collections.abc import Iterable

from ._bits import iter_bits
from .coloring import Coloring, Conflict, Interpretation3, interpretation_of, sets_masks
from .operators import op_pu_star
from .program import Program, cn, reduct
from .rdg import Rdg, build_rdg
from .support import max_support_mask

__all__ = [
    "Interpretation3",
    "fitting_step",
    "fitting_lfp",
    "is_unfounded_set",
    "gus",
    "well_founded_model",
    "wfm_oracle",
]


def fitting_step(p: Program, i: Interpretation3) -> Interpretation3:
    x, y = p.ids(i.x), p.ids(i.y)
    true = {r.head for r in p.rules if r.pbody <= x and r.nbody <= y}
    refuted: dict[int, bool] = {}
    for r in p.rules:
        dead = bool(r.pbody & y or r.nbody & x)
        refuted[r.head] = refuted.get(r.head, True) and dead
    # atoms heading no rule are false vacuously
    false = {a for a in range(len(p.atoms)) if refuted.get(a, True)}
    return Interpretation3(p.names(true), p.names(false))


def fitting_lfp(p: Program) -> Interpretation3:
    cur = Interpretation3.of()
    while True:
        nxt = fitting_step(p, cur)
        if nxt == cur:
            return cur
        cur = nxt


def is_unfounded_set(p: Program, i: Interpretation3, z: Iterable[str]) -> bool:
    """Every rule for an atom of ``z`` is either refuted by ``i`` or depends positively on ``z``."""
    zs = p.ids(z)
    x, y = p.ids(i.x), p.ids(i.y)
    for r in p.rules:
        if r.head in zs and not (r.pbody & y or r.nbody & x or r.pbody & zs):
            return False
    return True


def gus(g: Rdg, p: Program, c: Coloring) -> frozenset[str]:
    """Greatest unfounded set with respect to the interpretation induced by ``c``.

    ``c``'s minus rules must all be unsupported or blocked. The atoms left
    over are those not derivable by forward chaining through rules that are
    neither unsupported nor blocked.
    """
    _, sbar, b, _ = sets_masks(g, c.plus_mask, c.minus_mask)
    dead = sbar | b
    if c.minus_mask & ~dead:
        bad = (c.minus_mask & ~dead).bit_length() - 1
        raise ValueError(f"minus rules must be unsupported or blocked (r{bad} is neither)")
    alive = max_support_mask(g, dead)
    derivable = {g.heads[r] for r in iter_bits(alive)}
    return frozenset(name for a, name in enumerate(p.atoms) if a not in derivable)


def well_founded_model(p: Program) -> Interpretation3:
    g = build_rdg(p)
    c = op_pu_star(g, p, Coloring())
    if isinstance(c, Conflict):
        raise AssertionError(f"joint closure from the empty coloring failed: {c}")
    return interpretation_of(p, c)


def wfm_oracle(p: Program) -> Interpretation3:
    """Well-founded model by the alternating fixpoint of ``X -> Cn(reduct(p, X))``."""

    def gamma(x: frozenset[str]) -> frozenset[str]:
        return cn(reduct(p, x))

    w: frozenset[str] = frozenset()
    while True:
        nxt = gamma(gamma(w))
        if nxt == w:
            break
        w = nxt
    return Interpretation3(w, frozenset(p.atoms) - gamma(w))
