from fixtures import corpus, penguin, programs
from hypothesis import given
from hypothesis import strategies as st

from rdgsolve.program import parse_program
from rdgsolve.rdg import build_rdg, restrict, to_dot


def test_penguin_edges():
    g = build_rdg(penguin())
    assert g.e0 == {(0, 1), (0, 3), (1, 2), (2, 5), (3, 5), (4, 2)}
    assert g.e1 == {(2, 3), (3, 2), (5, 5)}


def test_chain_has_single_zero_edge():
    g = build_rdg(parse_program("a. c :- a."))
    assert g.e0 == {(0, 1)}
    assert g.e1 == frozenset()


def test_self_blocking_rule_has_one_loop():
    g = build_rdg(parse_program("a :- not a."))
    assert g.e0 == frozenset()
    assert g.e1 == {(0, 0)}


def test_adjacency_sorted_and_consistent():
    g = build_rdg(penguin())
    assert g.succ0[0] == (1, 3)
    assert g.pred0[2] == (1, 4)
    assert g.pred1[5] == (5,)
    for label_edges, succ, pred in ((g.e0, g.succ0, g.pred0), (g.e1, g.succ1, g.pred1)):
        assert {(a, b) for a in range(g.n) for b in succ[a]} == label_edges
        assert {(a, b) for b in range(g.n) for a in pred[b]} == label_edges


def test_head_index():
    g = build_rdg(penguin())
    p = g.program
    assert g.rules_with_head(p.atom_id("b")) == {1, 4}
    assert g.rules_with_head(p.atom_id("m")) == frozenset()


def test_restrict_penguin():
    g = restrict(build_rdg(penguin()), {0, 1, 5})
    assert g.vertices == {0, 1, 5}
    assert g.e0 == {(0, 1)}
    assert g.e1 == {(5, 5)}


def test_restrict_to_everything_and_nothing():
    g = build_rdg(penguin())
    assert restrict(g, range(6)) == g
    empty = restrict(g, set())
    assert empty.vertices == frozenset() and empty.e0 == frozenset() and empty.e1 == frozenset()


def _edges_from_definition(p):
    e0, e1 = set(), set()
    for r in p.rules:
        for r2 in p.rules:
            if r.head in r2.pbody:
                e0.add((r.id, r2.id))
            if r.head in r2.nbody:
                e1.add((r.id, r2.id))
    return e0, e1


def test_edges_match_definition_on_corpus():
    for p in corpus()[:300]:
        g = build_rdg(p)
        assert (set(g.e0), set(g.e1)) == _edges_from_definition(p)


@given(programs(max_rules=8), st.data())
def test_restrict_composes(p, data):
    g = build_rdg(p)
    ids = list(range(len(p.rules)))
    w1 = set(data.draw(st.lists(st.sampled_from(ids), unique=True))) if ids else set()
    w2 = set(data.draw(st.lists(st.sampled_from(ids), unique=True))) if ids else set()
    assert restrict(restrict(g, w1), w2) == restrict(g, w1 & w2)


def test_dot_export_lists_labelled_edges():
    dot = to_dot(build_rdg(parse_program("a. b :- not a.")))
    assert dot.startswith("digraph rdg {")
    assert 'r0 -> r1 [label="1", style=dashed];' in dot
    assert 'r0 [label="r0: a."];' in dot
