import pytest
from hypothesis import given, settings

from conftest import automata
from mealyorbits import mealy
from mealyorbits.mealy import (
    Automaton,
    AutomatonError,
    NotInvertibleError,
    ParseError,
    classify,
    dual,
    format_automaton,
    group_closure,
    inverse,
    parse_automaton,
    scc_analysis,
)

ADDING_DUAL = """\
1 q q 0
0 q id 1
0 id id 0
1 id id 1
"""


def test_parse_infers_declaration_order(adding):
    assert adding.states == ("q", "id")
    assert adding.alphabet == ("1", "0")
    assert len(adding.transitions) == 4


def test_parse_comments_and_blank_lines():
    a = parse_automaton("# a comment\n\nq 0 1 q   # trailing\n")
    assert a.transitions == (("q", "0", "1", "q"),)


def test_headers_fix_order_and_add_isolated_tokens():
    a = parse_automaton("@states z q\n@alphabet b a c\nq a b z\n")
    assert a.states == ("z", "q")
    assert a.alphabet == ("b", "a", "c")


@pytest.mark.parametrize(
    "text, lineno",
    [
        ("q 0 1\n", 1),
        ("q 0 1 q\nq 0 1 q extra\n", 2),
        ("@foo x\n", 1),
    ],
)
def test_parse_errors_report_line(text, lineno):
    with pytest.raises(ParseError) as info:
        parse_automaton(text)
    assert info.value.lineno == lineno


def test_declared_state_and_letter_conflict():
    with pytest.raises(ParseError):
        parse_automaton("@states x\n@alphabet x\n")


def test_escaped_hash_round_trip():
    a = Automaton(("#_q", "q"), ("#", "a"), (("#_q", "#", "#", "q"), ("q", "a", "a", "q")))
    text = format_automaton(a)
    assert "\\#" in text
    assert parse_automaton(text) == a


@given(automata())
def test_format_parse_round_trip(a):
    assert parse_automaton(format_automaton(a)) == a


def test_undeclared_token_rejected():
    with pytest.raises(AutomatonError):
        Automaton(("q",), ("0",), (("q", "0", "1", "q"),))


@pytest.mark.parametrize(
    "name, expected",
    [
        ("adding", dict(deterministic=True, complete=True, invertible=True, reversible=False,
                        inverse_reversible=False)),
        ("t1", dict(deterministic=True, complete=False, invertible=True, reversible=True,
                    inverse_reversible=False)),
        ("grigorchuk", dict(deterministic=True, complete=True, invertible=True, reversible=False,
                            inverse_reversible=False)),
    ],
)
def test_classify_known(name, expected, request):
    a = {"adding": "adding", "t1": "t1", "grigorchuk": "grig"}[name]
    cls = classify(request.getfixturevalue(a))
    assert cls.as_dict() == {**expected, "bireversible": expected["reversible"] and expected["inverse_reversible"]}


def test_adding_machine_flags(adding):
    cls = classify(adding)
    assert cls.g_automaton and cls.s_automaton
    assert not cls.bireversible


def test_grigorchuk_dual_flags(grig):
    cls = classify(dual(grig))
    assert cls.complete and cls.reversible and cls.deterministic
    assert not cls.invertible and not cls.bireversible


def test_pq_is_g_automaton(pq):
    assert classify(pq).g_automaton


def test_nondeterministic_detected():
    a = parse_automaton("q 0 0 q\nq 0 1 q\n")
    assert not classify(a).deterministic


def test_dual_of_adding_machine(adding):
    assert dual(adding) == parse_automaton(ADDING_DUAL)


@given(automata())
def test_dual_involution(a):
    assert dual(dual(a)) == a


@given(automata())
def test_classification_duality(a):
    c, d = classify(a), classify(dual(a))
    assert d.deterministic == c.deterministic
    assert d.complete == c.complete
    assert d.invertible == c.reversible
    assert d.reversible == c.invertible
    assert d.inverse_reversible == c.inverse_reversible


def test_inverse_of_adding_machine(adding):
    inv = inverse(adding)
    assert inv.states == ("q^-1", "id^-1")
    assert ("q^-1", "0", "1", "q^-1") in inv.transitions
    assert ("q^-1", "1", "0", "id^-1") in inv.transitions


def test_inverse_rejects_non_invertible():
    a = parse_automaton("q 0 1 q\nq 1 1 q\n")
    with pytest.raises(NotInvertibleError):
        inverse(a)


def test_inverse_name_collision():
    a = parse_automaton("@states q q^-1\nq 0 0 q\nq^-1 0 0 q\n")
    with pytest.raises(AutomatonError):
        inverse(a)


def test_group_closure_is_disjoint_union(adding):
    g = group_closure(adding)
    assert g.states == ("q", "id", "q^-1", "id^-1")
    assert classify(g).g_automaton


def test_group_closure_needs_complete(t1):
    with pytest.raises(AutomatonError):
        group_closure(t1)


def test_scc_adding(adding):
    comps = scc_analysis(adding).components
    assert [c.states for c in comps] == [("q",), ("id",)]
    assert [c.closed for c in comps] == [False, True]


def test_scc_grigorchuk_dual_single_component(grig):
    report = scc_analysis(dual(grig))
    assert [c.states for c in report.components] == [("0", "1")]
    assert report.components[0].closed
    assert not report.components[0].bireversible


@given(automata())
@settings(max_examples=60)
def test_scc_partition(a):
    report = scc_analysis(a)
    members = [q for c in report.components for q in c.states]
    assert sorted(members) == sorted(a.states)
    for c in report.components:
        assert report.component_of(c.states[0]) is c


def test_dot_output_mentions_all_edges(adding):
    dot = adding.to_dot()
    assert dot.startswith("digraph")
    assert dot.count("->") == 4
    assert '"0/1"' in dot


def test_restrict(adding):
    r = mealy.restrict(adding, ["id"])
    assert r.states == ("id",)
    assert all(t[0] == "id" for t in r.transitions)
