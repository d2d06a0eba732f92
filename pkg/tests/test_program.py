from itertools import chain, combinations

import pytest
from fixtures import corpus, names, penguin, programs
from hypothesis import given
from hypothesis import strategies as st

from rdgsolve.bench import gen_hc_complete
from rdgsolve.program import (
    ParseError,
    Program,
    cn,
    format_program,
    generating_rules,
    parse_program,
    reduct,
)


def rule_view(p: Program):
    return [
        (p.atoms[r.head], sorted(p.atoms[a] for a in r.pbody), sorted(p.atoms[a] for a in r.nbody))
        for r in p.rules
    ]


def test_parse_two_facts_chain():
    p = parse_program("p. b :- p.")
    assert rule_view(p) == [("p", [], []), ("b", ["p"], [])]
    assert p.atoms == ("p", "b")


def test_parse_penguin():
    p = penguin()
    assert len(p.rules) == 6
    assert set(p.atoms) == {"p", "b", "f", "f'", "m", "x"}
    assert rule_view(p)[2] == ("f", ["b"], ["f'"])
    assert rule_view(p)[5] == ("x", ["f", "f'"], ["x"])


def test_constraint_desugars_to_fresh_atom():
    p = parse_program(":- a.")
    assert rule_view(p) == [("__c0", ["a"], ["__c0"])]


def test_constraint_numbering_and_dedupe():
    p = parse_program(":- a, not b. :- not b, a. :- c.")
    assert [v[0] for v in rule_view(p)] == ["__c0", "__c1"]


def test_duplicates_removed():
    p = parse_program("a :- b, not c. a :- not c, b. a.")
    assert len(p.rules) == 2
    assert [r.id for r in p.rules] == [0, 1]


def test_ids_follow_first_occurrence():
    p = parse_program("z :- y, not x. x.")
    assert p.atoms == ("z", "y", "x")


def test_overlapping_bodies_allowed():
    p = parse_program("a :- b, not b.")
    assert rule_view(p) == [("a", ["b"], ["b"])]


def test_comments_and_whitespace():
    p = parse_program("% heading\n a.   % trailing\n\n b :- a .\n")
    assert rule_view(p) == [("a", [], []), ("b", ["a"], [])]


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("a :- .", 1, 6),
        ("a", 1, 2),
        ("a.\nb :- c,, d.", 2, 8),
        ("A.", 1, 1),
        ("a :- __c0.", 1, 6),
        ("a :- b; c.", 1, 7),
        ("not.", 1, 1),
    ],
)
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_program(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_reserved_prefix_rejected_as_head():
    with pytest.raises(ParseError, match="reserved"):
        parse_program("__c1 :- a.")


def test_bare_not_is_rejected():
    # "not" is a keyword; on its own it is not an atom
    with pytest.raises(ParseError):
        parse_program("a :- not.")


def test_reduct_drops_rules_blocked_by_x():
    p = penguin()
    red = reduct(p, {"b", "p", "f"})
    assert rule_view(red) == [
        ("p", [], []),
        ("b", ["p"], []),
        ("f", ["b"], []),
        ("b", ["m"], []),
        ("x", ["f", "f'"], []),
    ]
    assert red.origin == (0, 1, 2, 4, 5)


def test_reduct_with_empty_set_keeps_everything():
    p = parse_program("a :- not b.")
    assert rule_view(reduct(p, set())) == [("a", [], [])]


def test_reduct_of_basic_program_is_itself():
    p = parse_program("a. b :- a. c :- b, a.")
    red = reduct(p, {"a", "c"})
    assert rule_view(red) == rule_view(p)


def test_cn_chain():
    assert cn(parse_program("p. b :- p.")) == names("p", "b")


def test_cn_confirms_penguin_answer_set():
    assert cn(reduct(penguin(), {"b", "p", "f"})) == names("b", "p", "f")


def test_cn_empty_program():
    assert cn(parse_program("")) == frozenset()


def test_cn_rejects_negation():
    with pytest.raises(ValueError):
        cn(parse_program("a :- not b."))


def test_generating_rules_penguin():
    assert generating_rules(penguin(), {"b", "p", "f"}) == {0, 1, 2}


def test_generating_rules_self_blocker():
    p = parse_program("a :- not a.")
    assert generating_rules(p, {"a"}) == frozenset()
    assert generating_rules(p, set()) == {0}


def _subsets(items):
    items = list(items)
    return chain.from_iterable(combinations(items, k) for k in range(len(items) + 1))


def test_answer_sets_are_closures_of_their_generating_rules():
    for p in corpus()[:150]:
        for x in map(frozenset, _subsets(p.atoms)):
            gr = generating_rules(p, x)
            basic = Program.build((p.atoms[p.rules[i].head], [p.atoms[a] for a in p.rules[i].pbody], []) for i in gr)
            assert (cn(reduct(p, x)) == x) == (cn(basic) == x)


@given(programs(), st.tuples(st.sampled_from("abc"), st.lists(st.sampled_from("abc"), max_size=2)))
def test_cn_monotone_in_rules(p, extra):
    basic = reduct(p, set())
    bigger = Program.build(
        [(basic.atoms[r.head], [basic.atoms[a] for a in r.pbody], []) for r in basic.rules] + [(extra[0], extra[1], [])]
    )
    assert cn(basic) <= cn(bigger)


@given(programs(max_atoms=6, max_rules=10))
def test_print_then_parse_round_trip(p):
    again = parse_program(format_program(p))
    assert again.atoms == p.atoms
    assert again.rules == p.rules


def test_round_trip_with_constraints():
    p = gen_hc_complete(4)
    again = parse_program(format_program(p))
    assert again.atoms == p.atoms
    assert again.rules == p.rules
