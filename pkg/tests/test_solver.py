import pytest
from fixtures import col, corpus, incremental_example, names, penguin, support_example

from rdgsolve.oracle import enumerate_answer_sets
from rdgsolve.program import parse_program
from rdgsolve.solver import SearchLimits, Strategy, solve, trace

PENGUIN_SETS = [names("b", "f", "p"), names("b", "f'", "p")]
COMPLETE = [s for s in Strategy if s is not Strategy.VIminus]


@pytest.mark.parametrize("strategy", list(Strategy), ids=str)
def test_penguin_every_strategy(strategy):
    result = solve(penguin(), strategy)
    assert result.complete
    assert result.answer_sets == PENGUIN_SETS


@pytest.mark.parametrize("strategy", list(Strategy), ids=str)
def test_small_fixtures_every_strategy(strategy):
    assert solve(support_example(), strategy).answer_sets == [names("a")]
    assert solve(incremental_example(), strategy).answer_sets == [names("p")]
    assert solve(parse_program("a :- not a."), strategy).answer_sets == []
    assert solve(parse_program(""), strategy).answer_sets == [frozenset()]


def test_strategy_parse():
    assert Strategy.parse("VI-") is Strategy.VIminus
    assert Strategy.parse("IIplus") is Strategy.IIplus
    with pytest.raises(ValueError):
        Strategy.parse("VII")


def test_joint_closure_needs_no_choice():
    result = solve(incremental_example(), Strategy.VI)
    assert result.stats.choices == 0
    assert solve(support_example(), Strategy.VI).stats.choices == 0


def test_support_driven_strategy_needs_a_choice_without_unfounded_check():
    assert solve(incremental_example(), Strategy.V).stats.choices > 0


def test_answers_carry_admissible_colorings():
    result = solve(penguin(), Strategy.VI)
    assert [c for _, c in result.answers] == [col([0, 1, 2], [3, 4, 5]), col([0, 1, 3], [2, 4, 5])]


def test_propagation_saves_choices():
    for p in (penguin(), support_example(), incremental_example()):
        assert solve(p, Strategy.II).stats.choices <= solve(p, Strategy.I).stats.choices


def test_first_mode_stops_after_one():
    p = parse_program("a :- not b. b :- not a. c :- not d. d :- not c.")
    assert len(solve(p, Strategy.VI).answers) == 4
    first = solve(p, Strategy.VI, mode="first")
    assert len(first.answers) == 1 and first.complete
    with pytest.raises(ValueError):
        solve(p, Strategy.VI, mode="some")


def test_node_limit_reports_incomplete():
    p = parse_program(" ".join(f"a{i} :- not b{i}. b{i} :- not a{i}." for i in range(6)))
    result = solve(p, Strategy.VI, limits=SearchLimits(max_nodes=5))
    assert not result.complete and "limit" in result.limit_reason


def test_plain_guessing_is_bounded():
    p = parse_program(" ".join(f"a{i} :- not b{i}." for i in range(16)))
    result = solve(p, Strategy.I)
    assert not result.complete
    assert solve(p, Strategy.I, limits=SearchLimits(guess_rule_limit=16)).complete


def test_traces_end_in_target():
    target = col([0, 1, 3], [2, 4, 5])
    for strategy in (Strategy.II, Strategy.V, Strategy.VI):
        seq = trace(penguin(), strategy, target)
        assert seq is not None and seq.final == target
        for (_, a), (_, b) in zip(seq.steps, seq.steps[1:]):
            assert a.plus <= b.plus and a.minus <= b.minus


def test_support_driven_trace_on_penguin():
    seq = trace(penguin(), Strategy.V, col([0, 1, 2], [3, 4, 5]))
    assert [tag for tag, _ in seq.steps] == ["P*", "P*∘D+", "N"]
    assert seq.steps[0][1] == col([0, 1], [4])


def test_support_example_trace_closes_by_default_minus():
    seq = trace(support_example(), Strategy.V, col([0], [1, 2, 3]))
    assert [(t, c) for t, c in seq.steps] == [("P*", col([0], [1])), ("N", col([0], [1, 2, 3]))]


def test_no_trace_to_non_admissible_coloring():
    assert trace(penguin(), Strategy.VI, col([0, 1, 2, 3], [4, 5])) is None
    assert trace(penguin(), Strategy.VI, col([0, 1])) is None


def test_debug_invariants_hold_on_corpus():
    for p in corpus()[:200]:
        for strategy in COMPLETE:
            solve(p, strategy, debug=True)


def test_unicolor_minus_with_joint_closure_misses_answer_sets():
    # r0 can only turn plus once r1 is minus, and r1 only turns minus once r0 is decided
    p = parse_program("a :- not b. b :- a, not a.")
    assert enumerate_answer_sets(p) == [names("a")]
    assert solve(p, Strategy.VI).answer_sets == [names("a")]
    assert solve(p, Strategy.VIminus).answer_sets == []


def test_strategies_agree_with_oracle_on_corpus_sample():
    for p in corpus()[:250]:
        expected = enumerate_answer_sets(p)
        for strategy in COMPLETE:
            assert solve(p, strategy).answer_sets == expected, (strategy, p)
