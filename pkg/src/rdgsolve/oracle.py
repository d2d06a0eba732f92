"""Brute-force ground truth built only on the reduct and Cn.

Nothing here touches the dependency graph, so it can be used to validate
the graph-based machinery.
"""

from __future__ import annotations

from collections.abc import Iterable
from itertools import chain, combinations

from .coloring import Coloring, Interpretation3
from .program import Program, cn, generating_rules, reduct
from .semantics import is_unfounded_set

__all__ = [
    "OracleLimitError",
    "GUARD",
    "is_answer_set",
    "enumerate_answer_sets",
    "guess_atoms",
    "compatible",
    "admissible_coloring",
    "brute_force_gus",
    "sort_answer_sets",
]

GUARD = 22


class OracleLimitError(RuntimeError):
    pass


def sort_answer_sets(sets: Iterable[frozenset[str]]) -> list[frozenset[str]]:
    return sorted(set(sets), key=lambda s: sorted(s))


def is_answer_set(p: Program, x: Iterable[str]) -> bool:
    xs = frozenset(x)
    return cn(reduct(p, xs)) == xs


def guess_atoms(p: Program) -> list[str]:
    """Atoms whose truth value can change the reduct.

    Only atoms under default negation matter to the reduct, and only those
    that head some rule can be true. An atom whose every rule mentions it
    under ``not`` can never be true either, so it is left out.
    """
    negated = set(chain.from_iterable(r.nbody for r in p.rules))
    rules_of: dict[int, list] = {}
    for r in p.rules:
        rules_of.setdefault(r.head, []).append(r)
    out = []
    for a in sorted(negated):
        rules = rules_of.get(a)
        if rules and not all(a in r.nbody for r in rules):
            out.append(p.atoms[a])
    return out


def enumerate_answer_sets(p: Program, guard: int = GUARD) -> list[frozenset[str]]:
    """All answer sets, sorted by their sorted atom lists.

    Every answer set ``X`` equals ``Cn`` of the reduct by ``X`` restricted to
    the negated atoms, so guessing that restriction and checking the result
    finds all of them.
    """
    atoms = guess_atoms(p)
    if len(atoms) > guard:
        raise OracleLimitError(f"{len(atoms)} guess atoms exceed the oracle limit of {guard}")
    guessable = frozenset(atoms)
    found = set()
    for k in range(len(atoms) + 1):
        for guess in combinations(atoms, k):
            x = cn(reduct(p, guess))
            if x & guessable == frozenset(guess) and is_answer_set(p, x):
                found.add(x)
    return sort_answer_sets(found)


def compatible(p: Program, c: Coloring, x: Iterable[str]) -> bool:
    xs = frozenset(x)
    if not is_answer_set(p, xs):
        return False
    gr = generating_rules(p, xs)
    return c.plus <= gr and not (c.minus & gr)


def admissible_coloring(p: Program, x: Iterable[str]) -> Coloring:
    gr = generating_rules(p, x)
    return Coloring.of(gr, set(range(len(p.rules))) - gr)


def brute_force_gus(p: Program, i: Interpretation3) -> frozenset[str]:
    """Union of every unfounded subset of the atoms (exponential)."""
    out: set[str] = set()
    atoms = p.atoms
    for k in range(len(atoms) + 1):
        for z in combinations(atoms, k):
            if not set(z) <= out and is_unfounded_set(p, i, z):
                out.update(z)
    return frozenset(out)
