"""Ground normal logic programs: representation, text front end, reduct and Cn.

Atoms are interned as dense integer ids; the public set-valued functions
(``cn``, ``reduct``'s argument, ...) speak in atom *names* so callers never
have to juggle ids.
"""

from __future__ import annotations

import re
from collections.abc import Iterable
from dataclasses import dataclass, field

__all__ = [
    "Atom",
    "Rule",
    "Program",
    "ParseError",
    "parse_program",
    "format_program",
    "reduct",
    "cn",
    "generating_rules",
    "RESERVED_PREFIX",
]

RESERVED_PREFIX = "__c"

_ATOM_RE = re.compile(r"[a-z][A-Za-z0-9_]*'*")
_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>%[^\n]*)
  | (?P<if>:-)
  | (?P<dot>\.)
  | (?P<comma>,)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*'*)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Atom:
    id: int
    name: str


@dataclass(frozen=True)
class Rule:
    id: int
    head: int
    pbody: frozenset[int]
    nbody: frozenset[int]

    def key(self) -> tuple[int, frozenset[int], frozenset[int]]:
        return (self.head, self.pbody, self.nbody)


@dataclass(frozen=True)
class Program:
    """A finite set of normal rules with a symbol table.

    ``origin`` is only set on derived programs (e.g. a reduct) and maps each
    rule id back to the rule of the program it came from.
    """

    rules: tuple[Rule, ...]
    atoms: tuple[str, ...]
    origin: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_ids", {name: i for i, name in enumerate(self.atoms)})

    @classmethod
    def build(
        cls, rules: Iterable[tuple[str, Iterable[str], Iterable[str]]]
    ) -> Program:
        """Build a program from ``(head, pbody, nbody)`` name triples.

        Structural duplicates are dropped; ids follow first occurrence.
        """
        builder = _Builder()
        for head, pos, neg in rules:
            builder.add(head, list(pos), list(neg))
        return builder.program()

    def __len__(self) -> int:
        return len(self.rules)

    def atom_id(self, name: str) -> int:
        return self._ids[name]  # type: ignore[attr-defined]

    def has_atom(self, name: str) -> bool:
        return name in self._ids  # type: ignore[attr-defined]

    def atom(self, name: str) -> Atom:
        return Atom(self.atom_id(name), name)

    def names(self, ids: Iterable[int]) -> frozenset[str]:
        return frozenset(self.atoms[i] for i in ids)

    def ids(self, names: Iterable[str]) -> frozenset[int]:
        """Ids of the given names; names unknown to the program are ignored."""
        table = self._ids  # type: ignore[attr-defined]
        return frozenset(table[n] for n in names if n in table)

    def heads(self, rule_ids: Iterable[int] | None = None) -> frozenset[str]:
        rules = self.rules if rule_ids is None else (self.rules[i] for i in rule_ids)
        return frozenset(self.atoms[r.head] for r in rules)

    @property
    def is_basic(self) -> bool:
        return all(not r.nbody for r in self.rules)

    def rule_text(self, rule_id: int) -> str:
        return _format_rule(self, self.rules[rule_id], desugar=False)

    def __str__(self) -> str:
        return format_program(self)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class _Builder:
    def __init__(self) -> None:
        self.atoms: list[str] = []
        self.ids: dict[str, int] = {}
        self.rules: list[Rule] = []
        self.seen: set[tuple[int, frozenset[int], frozenset[int]]] = set()
        self.constraints: dict[tuple[tuple[str, ...], tuple[str, ...]], str] = {}

    def intern(self, name: str) -> int:
        i = self.ids.get(name)
        if i is None:
            i = self.ids[name] = len(self.atoms)
            self.atoms.append(name)
        return i

    def add(self, head: str, pos: list[str], neg: list[str], order: list[tuple[bool, str]] | None = None) -> None:
        h = self.intern(head)
        # intern body atoms in textual order so ids follow first occurrence
        for _, name in order if order is not None else [(True, a) for a in pos] + [(False, a) for a in neg]:
            self.intern(name)
        key = (h, frozenset(self.ids[a] for a in pos), frozenset(self.ids[a] for a in neg))
        if key in self.seen:
            return
        self.seen.add(key)
        self.rules.append(Rule(len(self.rules), *key))

    def add_constraint(self, pos: list[str], neg: list[str], order: list[tuple[bool, str]]) -> None:
        body_key = (tuple(sorted(set(pos))), tuple(sorted(set(neg))))
        if body_key in self.constraints:
            return
        name = f"{RESERVED_PREFIX}{len(self.constraints)}"
        self.constraints[body_key] = name
        self.add(name, pos, neg + [name], order + [(False, name)])

    def program(self) -> Program:
        return Program(tuple(self.rules), tuple(self.atoms))


def _tokens(text: str):
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            yield kind, m.group(), line, pos - line_start + 1
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    yield "eof", "", line, pos - line_start + 1


def parse_program(text: str) -> Program:
    """Parse ground rules ``h :- b1, not b2.`` and constraints ``:- b.``.

    Constraints become ``__ck :- b, not __ck`` with a fresh atom per distinct
    constraint body.
    """
    builder = _Builder()
    toks = list(_tokens(text))
    i = 0

    def expect_atom() -> str:
        nonlocal i
        kind, value, line, col = toks[i]
        if kind != "ident" or value == "not":
            raise ParseError(f"expected atom, got {value or 'end of input'!r}", line, col)
        if value.startswith(RESERVED_PREFIX):
            raise ParseError(f"atom {value!r} uses reserved prefix {RESERVED_PREFIX!r}", line, col)
        if not _ATOM_RE.fullmatch(value):
            raise ParseError(f"invalid atom name {value!r}", line, col)
        i += 1
        return value

    def body() -> tuple[list[str], list[str], list[tuple[bool, str]]]:
        nonlocal i
        pos: list[str] = []
        neg: list[str] = []
        order: list[tuple[bool, str]] = []
        while True:
            kind, value, _, _ = toks[i]
            negated = False
            if kind == "ident" and value == "not" and toks[i + 1][0] == "ident":
                negated = True
                i += 1
            name = expect_atom()
            (neg if negated else pos).append(name)
            order.append((not negated, name))
            if toks[i][0] != "comma":
                return pos, neg, order
            i += 1

    def expect(kind: str, what: str) -> None:
        nonlocal i
        k, value, line, col = toks[i]
        if k != kind:
            raise ParseError(f"expected {what}, got {value or 'end of input'!r}", line, col)
        i += 1

    while toks[i][0] != "eof":
        if toks[i][0] == "if":
            i += 1
            pos, neg, order = body()
            expect("dot", "'.'")
            builder.add_constraint(pos, neg, order)
            continue
        head = expect_atom()
        pos, neg, order = [], [], []
        if toks[i][0] == "if":
            i += 1
            pos, neg, order = body()
        expect("dot", "'.'")
        builder.add(head, pos, neg, order)
    return builder.program()


def _format_rule(p: Program, r: Rule, desugar: bool = True) -> str:
    head = p.atoms[r.head]
    constraint = (
        desugar
        and head.startswith(RESERVED_PREFIX)
        and r.head in r.nbody
    )
    lits = [(a, False) for a in r.pbody] + [(a, True) for a in r.nbody if not (constraint and a == r.head)]
    # body in ascending id order keeps first-occurrence ids stable on reparse
    lits.sort(key=lambda t: (t[0], t[1]))
    body = ", ".join(("not " if neg else "") + p.atoms[a] for a, neg in lits)
    if constraint:
        return f":- {body}."
    return f"{head} :- {body}." if body else f"{head}."


def format_program(p: Program) -> str:
    return "".join(_format_rule(p, r) + "\n" for r in p.rules)


def reduct(p: Program, x: Iterable[str]) -> Program:
    """Gelfond-Lifschitz reduct: drop rules whose negative body meets ``x``."""
    xs = p.ids(x)
    kept = [r for r in p.rules if not (r.nbody & xs)]
    rules = tuple(Rule(i, r.head, r.pbody, frozenset()) for i, r in enumerate(kept))
    return Program(rules, p.atoms, origin=tuple(r.id for r in kept))


def cn(p: Program) -> frozenset[str]:
    """Least model of a basic program, by iterating the immediate-consequence operator."""
    if not p.is_basic:
        raise ValueError("cn() requires a basic program (empty negative bodies)")
    x: set[int] = set()
    while True:
        nxt = {r.head for r in p.rules if r.pbody <= x}
        if nxt == x:
            return p.names(x)
        x = nxt


def generating_rules(p: Program, x: Iterable[str]) -> frozenset[int]:
    xs = set(x)
    out = set()
    for r in p.rules:
        if all(p.atoms[a] in xs for a in r.pbody) and not any(p.atoms[a] in xs for a in r.nbody):
            out.add(r.id)
    return frozenset(out)
