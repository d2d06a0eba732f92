"""Five independent admissibility tests for total colorings.

A total coloring is admissible when its plus rules are exactly the
generating rules of an answer set. The tests below decide this from the
graph alone and must always agree.
"""

from __future__ import annotations

from ._bits import to_set
from .coloring import Coloring, Conflict, sets_masks
from .operators import op_p, op_u
from .program import Program
from .rdg import Rdg, restrict
from .support import is_blockage_graph, max_support_mask

__all__ = ["check_i", "check_ii", "check_iii", "check_i_prime", "check_i_dprime", "ALL_CHECKS"]


def _require_total(g: Rdg, c: Coloring) -> None:
    if not c.is_total(g):
        raise ValueError("admissibility checks need a total coloring")


def _has_support_graph(g: Rdg, c: Coloring) -> bool:
    return c.plus_mask & ~max_support_mask(g, c.minus_mask) == 0


def check_i(g: Rdg, p: Program, c: Coloring) -> bool:
    """Plus rules are exactly the supported unblocked ones, and a support graph exists."""
    _require_total(g, c)
    s, _, _, bbar = sets_masks(g, c.plus_mask, c.minus_mask)
    return c.plus_mask == s & bbar and _has_support_graph(g, c)


def check_ii(g: Rdg, p: Program, c: Coloring) -> bool:
    """Plus rules form the maximal support vertex set of the graph cut down to unblocked rules."""
    _require_total(g, c)
    _, _, _, bbar = sets_masks(g, c.plus_mask, c.minus_mask)
    sub = restrict(g, to_set(bbar))
    return c.plus_mask == max_support_mask(sub, 0)


def check_iii(g: Rdg, p: Program, c: Coloring) -> bool:
    """A support graph exists and the supported rules with their 1-edges form a blockage graph."""
    _require_total(g, c)
    if not _has_support_graph(g, c):
        return False
    s, _, _, _ = sets_masks(g, c.plus_mask, c.minus_mask)
    verts = to_set(s)
    edges = {(a, b) for a, b in g.e1 if a in verts and b in verts}
    return is_blockage_graph(g, p, c, verts, edges)


def check_i_prime(g: Rdg, p: Program, c: Coloring) -> bool:
    _require_total(g, c)
    return op_p(g, p, c) == c and _has_support_graph(g, c)


def check_i_dprime(g: Rdg, p: Program, c: Coloring) -> bool:
    """Fixpoint of both P and U."""
    _require_total(g, c)
    after_u = op_u(g, p, c)
    return op_p(g, p, c) == c and not isinstance(after_u, Conflict) and after_u == c


ALL_CHECKS = {
    "i": check_i,
    "ii": check_ii,
    "iii": check_iii,
    "i'": check_i_prime,
    "i''": check_i_dprime,
}
