"""Rule dependency graph: rules as vertices, 0-edges for support, 1-edges for blockage."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from ._bits import mask_of
from .program import Program

__all__ = ["Rdg", "build_rdg", "restrict", "to_dot"]


@dataclass(frozen=True, eq=False)
class Rdg:
    """Labelled dependency graph over the rules of ``program``.

    Adjacency tuples are indexed by rule id and sorted; rules outside
    ``vertices`` (after :func:`restrict`) have empty adjacency. The ``*_mask``
    fields are int bitsets over rule ids used by the operators.
    """

    program: Program
    vertices: frozenset[int]
    e0: frozenset[tuple[int, int]]
    e1: frozenset[tuple[int, int]]
    succ0: tuple[tuple[int, ...], ...]
    succ1: tuple[tuple[int, ...], ...]
    pred0: tuple[tuple[int, ...], ...]
    pred1: tuple[tuple[int, ...], ...]
    head_index: dict[int, frozenset[int]]
    vmask: int
    def_mask: tuple[int, ...]
    pred1_mask: tuple[int, ...]
    heads: tuple[int, ...]
    pbodies: tuple[tuple[int, ...], ...]
    nbodies: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.program.rules)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Rdg):
            return NotImplemented
        return (self.vertices, self.e0, self.e1) == (other.vertices, other.e0, other.e1)

    def __hash__(self) -> int:
        return hash((self.vertices, self.e0, self.e1))

    def rules_with_head(self, atom: int) -> frozenset[int]:
        return self.head_index.get(atom, frozenset())


def _assemble(p: Program, vertices: frozenset[int]) -> Rdg:
    n = len(p.rules)
    head_index: dict[int, set[int]] = {}
    for r in sorted(vertices):
        head_index.setdefault(p.rules[r].head, set()).add(r)

    succ0: list[list[int]] = [[] for _ in range(n)]
    succ1: list[list[int]] = [[] for _ in range(n)]
    pred0: list[list[int]] = [[] for _ in range(n)]
    pred1: list[list[int]] = [[] for _ in range(n)]
    e0: set[tuple[int, int]] = set()
    e1: set[tuple[int, int]] = set()
    for r2 in sorted(vertices):
        rule = p.rules[r2]
        for atoms, edges, succ, pred in ((rule.pbody, e0, succ0, pred0), (rule.nbody, e1, succ1, pred1)):
            for q in atoms:
                for r1 in head_index.get(q, ()):
                    edges.add((r1, r2))
                    succ[r1].append(r2)
                    pred[r2].append(r1)

    def freeze(lists: list[list[int]]) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(set(x))) for x in lists)

    n_atoms = len(p.atoms)
    def_mask = [0] * n_atoms
    for atom, rs in head_index.items():
        def_mask[atom] = mask_of(rs)
    frozen_pred1 = freeze(pred1)
    return Rdg(
        program=p,
        vertices=vertices,
        e0=frozenset(e0),
        e1=frozenset(e1),
        succ0=freeze(succ0),
        succ1=freeze(succ1),
        pred0=freeze(pred0),
        pred1=frozen_pred1,
        head_index={a: frozenset(rs) for a, rs in head_index.items()},
        vmask=mask_of(vertices),
        def_mask=tuple(def_mask),
        pred1_mask=tuple(mask_of(ps) for ps in frozen_pred1),
        heads=tuple(r.head for r in p.rules),
        pbodies=tuple(tuple(sorted(r.pbody)) for r in p.rules),
        nbodies=tuple(tuple(sorted(r.nbody)) for r in p.rules),
    )


def build_rdg(p: Program) -> Rdg:
    return _assemble(p, frozenset(range(len(p.rules))))


def restrict(g: Rdg, w: Iterable[int]) -> Rdg:
    """Induced subgraph on ``w`` (rule ids keep their numbering)."""
    keep = frozenset(w) & g.vertices
    return _assemble(g.program, keep)


def to_dot(g: Rdg) -> str:
    p = g.program
    lines = ["digraph rdg {"]
    for r in sorted(g.vertices):
        label = p.rule_text(r).replace("\\", "\\\\").replace('"', '\\"')
        lines.append(f'  r{r} [label="r{r}: {label}"];')
    for label, edges in (("0", g.e0), ("1", g.e1)):
        style = "" if label == "0" else ", style=dashed"
        for a, b in sorted(edges):
            lines.append(f'  r{a} -> r{b} [label="{label}"{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
