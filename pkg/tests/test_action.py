import doctest
import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import automata, automaton_with_seq_and_word, naive_act
from mealyorbits import action
from mealyorbits.action import (
    ResourceLimitError,
    act,
    act_dual,
    find_difference,
    function_equal,
    function_equal_on_upword,
    is_defined,
)
from mealyorbits.mealy import AutomatonError, dual, group_closure, inverse_token, parse_automaton
from mealyorbits.upword import UndefinedAction, normalize


@pytest.mark.parametrize(
    "word, image",
    [
        ("000", "100"),
        ("100", "010"),
        ("010", "110"),
        ("111", "000"),
        ("", ""),
    ],
)
def test_adding_machine_increments(adding, word, image):
    res = act(adding, ("q",), tuple(word))
    assert res.output == tuple(image)


def test_adding_machine_successor_state(adding):
    assert act(adding, ("q",), ("0", "0", "0")).next == ("id",)
    assert act(adding, ("q",), ("1", "1")).next == ("q",)


def test_rightmost_state_acts_first(t1):
    # p then q on "a": p a -> a (to q), then q a -> b (to p)
    assert act(t1, ("q", "p"), ("a",)) == (("b",), ("p", "q"))


def test_undefined_reports_position(t1):
    with pytest.raises(UndefinedAction) as info:
        act(t1, ("q",), ("a", "a", "b"))
    err = info.value
    assert (err.state, err.letter, err.position) == ("q", "b", 2)


def test_undefined_first_letter(t1):
    assert not is_defined(t1, ("q",), ("b",))
    assert is_defined(t1, ("p",), ("b", "b"))


def test_unknown_state_is_error(adding):
    with pytest.raises(AutomatonError):
        act(adding, ("nope",), ("0",))


def test_empty_sequence_is_identity(adding):
    assert act(adding, (), ("1", "0")) == (("1", "0"), ())


@given(automaton_with_seq_and_word())
def test_act_matches_reference(case):
    a, seq, word = case
    ref = naive_act(a, seq, word)
    if ref is None:
        assert not is_defined(a, seq, word)
    else:
        assert act(a, seq, word) == ref


@given(automaton_with_seq_and_word(), st.integers(0, 4))
def test_composition(case, cut):
    a, seq, word = case
    cut = min(cut, len(seq))
    left, right = seq[:cut], seq[cut:]
    whole = naive_act(a, seq, word)
    inner = naive_act(a, right, word)
    if inner is None:
        assert whole is None
        return
    outer = naive_act(a, left, inner[0])
    assert (outer is None) == (whole is None)
    if whole is not None:
        assert whole[0] == outer[0]
        assert whole[1] == outer[1] + inner[1]


@given(automaton_with_seq_and_word(), st.integers(0, 4))
def test_prefix_compatibility(case, cut):
    a, seq, word = case
    if not is_defined(a, seq, word):
        return
    u, v = word[:cut], word[cut:]
    first = act(a, seq, u)
    second = act(a, first.next, v)
    full = act(a, seq, word)
    assert full.output == first.output + second.output
    assert full.next == second.next


@given(automaton_with_seq_and_word())
def test_duality_identity(case):
    a, p, u = case
    direct = naive_act(a, p, u)
    rp, ru = tuple(reversed(p)), tuple(reversed(u))
    mirrored = naive_act(dual(a), ru, rp)
    assert (direct is None) == (mirrored is None)
    if direct is not None:
        assert tuple(reversed(direct[1])) == mirrored[0]
        assert tuple(reversed(direct[0])) == mirrored[1]


def test_act_dual(adding):
    res = act_dual(adding, ("0",), ("q",))
    assert res.output == ("id",)
    assert res.next == ("1",)


def test_function_equal_t1(t1):
    assert function_equal(t1, ("q", "q"), ("q", "q", "q"))
    assert not function_equal(t1, ("q",), ("q", "q"))


def test_function_equal_adding(adding):
    assert function_equal(adding, ("id",), ())
    assert function_equal(adding, ("id", "q", "id"), ("q",))
    assert not function_equal(adding, ("q", "q"), ("q",))


def test_difference_is_shortest_and_lexicographic(adding):
    diff = find_difference(adding, ("q",), ())
    # alphabet order is 1, 0; the first one-letter word is "1"
    assert diff.word == ("1",)
    assert diff.left == ("0",) and diff.right == ("1",)


def test_difference_with_undefined_side():
    a = parse_automaton("p 0 0 p\np 1 1 p\nr 0 0 r\n")
    diff = find_difference(a, ("r",), ("p",))
    assert diff.word == ("1",)
    assert diff.left is None and diff.right == ("1",)


def test_both_undefined_counts_as_agreement(t1):
    # neither q q nor q q q reads "b" first
    assert function_equal(t1, ("q", "q"), ("q", "q", "q"))
    assert find_difference(t1, ("q",), ("p",)).word == ("a",)


def test_max_pairs_limit(grig):
    assert function_equal(grig, ("b", "c"), ("d",))
    with pytest.raises(ResourceLimitError):
        find_difference(grig, ("b", "c"), ("d",), max_pairs=1)


def test_max_pairs_not_needed_for_identical(adding):
    assert function_equal(adding, ("q",) * 5, ("q",) * 5, max_pairs=0)


def brute_equal(a, s1, s2, depth):
    for n in range(depth + 1):
        for w in itertools.product(a.alphabet, repeat=n):
            r1, r2 = naive_act(a, s1, w), naive_act(a, s2, w)
            if (r1 is None) != (r2 is None):
                return False
            if r1 is not None and r1[0] != r2[0]:
                return False
    return True


@given(automata(max_states=3, max_letters=2), st.data())
@settings(max_examples=80)
def test_function_equal_against_brute_force(a, data):
    seqs = st.lists(st.sampled_from(a.states), max_size=3).map(tuple)
    s1, s2 = data.draw(seqs), data.draw(seqs)
    diff = find_difference(a, s1, s2)
    if diff is None:
        assert brute_equal(a, s1, s2, 6)
    else:
        r1, r2 = naive_act(a, s1, diff.word), naive_act(a, s2, diff.word)
        assert (r1 and r1[0]) != (r2 and r2[0])
        assert brute_equal(a, s1, s2, len(diff.word) - 1)


@given(automata(max_states=3, max_letters=2), st.data())
@settings(max_examples=40)
def test_equivalence_relation(a, data):
    seqs = st.lists(st.sampled_from(a.states), max_size=2).map(tuple)
    s, t, u = data.draw(seqs), data.draw(seqs), data.draw(seqs)
    assert function_equal(a, s, s)
    assert function_equal(a, s, t) == function_equal(a, t, s)
    if function_equal(a, s, t) and function_equal(a, t, u):
        assert function_equal(a, s, u)


def test_inverse_cancels(adding, grig):
    for a in (adding, grig):
        g = group_closure(a)
        for q in a.states:
            assert function_equal(g, (q, inverse_token(q)), ())
            assert function_equal(g, (inverse_token(q), q), ())


def test_function_equal_on_upword_pq(pq):
    # p and id agree on words in which p only ever sees primed letters
    w = normalize(("1'",), ("0'",))
    assert function_equal_on_upword(pq, ("p",), ("id",), w)
    assert not function_equal_on_upword(pq, ("q",), ("id",), w)


def test_function_equal_on_upword_implied_by_global(adding):
    w = normalize(("0",), ("1",))
    assert function_equal_on_upword(adding, ("id", "q"), ("q",), w)
    assert not function_equal_on_upword(adding, ("q",), (), w)


def test_partial_machine_rejected_when_nondeterministic():
    a = parse_automaton("q 0 0 q\nq 0 1 q\n")
    with pytest.raises(AutomatonError):
        act(a, ("q",), ("0",))


def test_docstring_examples():
    assert doctest.testmod(action).failed == 0
