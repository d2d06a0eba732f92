"""Instance generators: Hamiltonian cycles on complete graphs and random programs."""

from __future__ import annotations

import random

from .program import Program, parse_program

__all__ = ["hc_complete_text", "gen_hc_complete", "gen_random", "random_corpus"]


def hc_complete_text(n: int) -> str:
    """Ground Hamiltonian-cycle encoding for the complete directed graph on nodes 1..n.

    Cycles are anchored at node 1 through the reachability atoms, so each
    tour yields exactly one answer set.
    """
    if n < 3:
        raise ValueError("need at least 3 nodes")
    nodes = range(1, n + 1)
    edges = [(u, v) for u in nodes for v in nodes if u != v]
    lines: list[str] = []
    # constraints first so they get low rule ids
    for u in nodes:
        out = [v for v in nodes if v != u]
        for i, v in enumerate(out):
            for w in out[i + 1:]:
                lines.append(f":- hc_{u}_{v}, hc_{u}_{w}.")
    for v in nodes:
        into = [u for u in nodes if u != v]
        for i, u in enumerate(into):
            for w in into[i + 1:]:
                lines.append(f":- hc_{u}_{v}, hc_{w}_{v}.")
    for u in nodes:
        lines.append(":- " + ", ".join(f"nhc_{u}_{v}" for v in nodes if v != u) + ".")
    for v in nodes:
        if v != 1:
            lines.append(f":- not reach_{v}.")
    for u, v in edges:
        lines.append(f"hc_{u}_{v} :- not nhc_{u}_{v}.")
        lines.append(f"nhc_{u}_{v} :- not hc_{u}_{v}.")
    lines.append("reach_1.")
    for u, v in edges:
        if v != 1:
            lines.append(f"reach_{v} :- reach_{u}, hc_{u}_{v}.")
    return "\n".join(lines) + "\n"


def gen_hc_complete(n: int) -> Program:
    return parse_program(hc_complete_text(n))


def gen_random(seed: int, natoms: int, nrules: int, max_pbody: int = 2, max_nbody: int = 2) -> Program:
    """Seeded random program over atoms ``a0..a{natoms-1}``.

    Each rule draws its head uniformly, then independent positive and
    negative bodies of uniform size, atoms sampled without replacement.
    Duplicate rules collapse, so the result may have fewer than ``nrules``.
    """
    if natoms < 1 or nrules < 1 or max_pbody < 0 or max_nbody < 0:
        raise ValueError("natoms and nrules must be positive, body bounds non-negative")
    rng = random.Random(seed)
    atoms = [f"a{i}" for i in range(natoms)]
    rules = []
    for _ in range(nrules):
        head = rng.choice(atoms)
        pos = rng.sample(atoms, rng.randint(0, min(max_pbody, natoms)))
        neg = rng.sample(atoms, rng.randint(0, min(max_nbody, natoms)))
        rules.append((head, pos, neg))
    return Program.build(rules)


def random_corpus(count: int = 1000, max_atoms: int = 8, max_rules: int = 14, first_seed: int = 0) -> list[Program]:
    """The seeded test corpus: sizes vary with the seed, bounded by the maxima."""
    out = []
    for seed in range(first_seed, first_seed + count):
        rng = random.Random(f"corpus-{seed}")
        natoms = rng.randint(1, max_atoms)
        nrules = rng.randint(1, max_rules)
        out.append(gen_random(seed, natoms, nrules, 2, 2))
    return out
