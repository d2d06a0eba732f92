"""Shared test programs, the seeded corpus and a hypothesis strategy for small programs."""

from __future__ import annotations

from functools import lru_cache

from hypothesis import strategies as st

from rdgsolve.bench import random_corpus
from rdgsolve.coloring import Coloring
from rdgsolve.program import Program, parse_program

# rule ids are 0-based in input order
PENGUIN_TEXT = "p. b :- p. f :- b, not f'. f' :- p, not f. b :- m. x :- f, f', not x.\n"
SUPPORT_TEXT = "a. b :- not a. c :- b. b :- c.\n"
INCREMENTAL_TEXT = "p :- not q. q :- r, not p. r :- q.\n"


def penguin() -> Program:
    return parse_program(PENGUIN_TEXT)


def support_example() -> Program:
    return parse_program(SUPPORT_TEXT)


def incremental_example() -> Program:
    return parse_program(INCREMENTAL_TEXT)


def col(plus=(), minus=()) -> Coloring:
    return Coloring.of(plus, minus)


def names(*atoms: str) -> frozenset[str]:
    return frozenset(atoms)


@lru_cache(maxsize=None)
def corpus(count: int = 1000) -> tuple[Program, ...]:
    return tuple(random_corpus(count))


@st.composite
def programs(draw, max_atoms: int = 5, max_rules: int = 7) -> Program:
    natoms = draw(st.integers(1, max_atoms))
    atoms = [f"a{i}" for i in range(natoms)]
    atom = st.sampled_from(atoms)
    body = st.lists(atom, max_size=2, unique=True)
    rules = draw(st.lists(st.tuples(atom, body, body), min_size=0, max_size=max_rules))
    return Program.build(rules)


@st.composite
def programs_with_coloring(draw, max_atoms: int = 5, max_rules: int = 7):
    p = draw(programs(max_atoms, max_rules))
    colors = draw(st.lists(st.sampled_from("+-."), min_size=len(p.rules), max_size=len(p.rules)))
    plus = [i for i, c in enumerate(colors) if c == "+"]
    minus = [i for i, c in enumerate(colors) if c == "-"]
    return p, Coloring.of(plus, minus)
