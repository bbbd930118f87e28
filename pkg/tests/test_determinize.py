import pytest
from hypothesis import given, settings

from graphfa import corpus
from graphfa.automaton import Automaton, Transition, equivalent_bounded
from graphfa.determinize import (SINK, PSPair, PSState, ambiguous_pairs, closure, disambiguate,
                                 find_quotient, is_deterministic, left_compose_state, powerset)
from graphfa.generate import random_automaton
from graphfa.graph import RankedAlphabet
from graphfa.symbols import compose_symbols, identity_blank
from graphfa.textio import parse_symbol
from helpers import rng_of, seeds
from oracles import automata_isomorphic

B = corpus.automaton("ambiguous.aut")
S = corpus.automaton("stars.aut")


def sym(text, sigma=B.alphabet):
    return parse_symbol(text, sigma)


def pair(blank, q):
    return PSPair(sym(blank), q)


def test_closure_of_b():
    assert closure(B, "q1") == {pair("~2[1,2]", "q1"), pair("~2[2,1]", "q2")}


def test_closure_of_stars():
    assert closure(S, "q0") == {PSPair(identity_blank(1), "q0")}


def test_left_compose_state():
    c = {pair("~2[1,2]", "q1"), pair("~2[2,1]", "q2")}
    assert left_compose_state(sym("~2[1,2]"), c) == c
    assert left_compose_state(sym("~2[2,1]"), c) == {pair("~2[2,1]", "q1"), pair("~2[1,2]", "q2")}
    for p in left_compose_state(sym("~2[2,1]"), c):
        orig = next(x for x in c if x.state == p.state)
        assert p.blank == compose_symbols(sym("~2[2,1]"), orig.blank)


def test_find_quotient():
    s1 = PSState(frozenset({pair("~2[1,2]", "q1"), pair("~2[2,1]", "q2")}), 2)
    y = {pair("~2[2,1]", "q1"), pair("~2[1,2]", "q2")}
    assert find_quotient(y, [s1], 2) == (s1, sym("~2[2,1]"))
    assert find_quotient(s1.pairs, [s1], 2) == (s1, identity_blank(2))
    assert find_quotient({pair("~2[1,2]", "q9")}, [s1], 2) is None


def test_powerset_of_stars_is_s_prime():
    d = powerset(S)
    assert list(d.states) == ["S0", "S1", "S2", SINK]
    got = [(t.source, str(t.symbol), t.target) for t in d.transitions]
    assert got == [("S0", "a[1|1]", "S1"), ("S1", "a[1|1]", "S1"), ("S1", "b[1|2]", "S2"),
                   ("S2", "~1[1]", SINK)]
    assert automata_isomorphic(d, corpus.automaton("stars_det.aut"))


def test_powerset_of_b():
    d = powerset(B)
    b = sym("b[1,2|1,2]")
    assert Transition("S0", b, "S1") in d.index and Transition("S0", b, "S2") in d.index
    assert not is_deterministic(d)


def test_powerset_of_disambiguated_b():
    d = powerset(disambiguate(B))
    assert is_deterministic(d)
    out = sorted((str(t.symbol), t.target) for t in d.out("S0"))
    assert out == [("a[1,2|1,2]", "S1"), ("b[1,2|1,2]", "S2")]
    assert sorted(str(t.symbol) for t in d.transitions if t.target == SINK) == ["~2[1,2]"] * 2


def test_is_deterministic_examples():
    assert not is_deterministic(S)
    assert is_deterministic(corpus.automaton("stars_det.aut"))
    empty = Automaton(RankedAlphabet(), {"p": 0, "f": 0}, (), "p", ("f",))
    assert is_deterministic(empty)


def test_ambiguous_pairs_examples():
    (p,) = ambiguous_pairs(B)
    assert set(p) == {sym("b[1,2|1,2]"), sym("b[1,2|2,1]")}
    assert ambiguous_pairs(S) == []
    one = Automaton(S.alphabet, {"p": 1, "f": 1}, (Transition("p", sym("a[1|1]", S.alphabet), "f"),),
                    "p", ("f",))
    assert ambiguous_pairs(one) == []


def test_disambiguate_b_has_b2_shape():
    d = disambiguate(B)
    assert automata_isomorphic(d, corpus.automaton("unambiguous.aut"))
    for q in ("q2'", "q3'"):
        assert q in d.states
    assert Transition("q0", sym("b[1,2|1,2]"), "q2'") in d.index
    assert Transition("q2'", sym("~2[2,1]"), "q2") in d.index
    assert Transition("q3'", sym("~2[1,2]"), "q3") in d.index
    assert equivalent_bounded(B, d, 6) == (True, None)


def test_disambiguate_leaves_unambiguous_alone():
    assert disambiguate(S) is S


@pytest.mark.parametrize("name", corpus.names(".aut"))
def test_determinize_is_idempotent(name):
    a = corpus.automaton(name)
    if ambiguous_pairs(a):
        a = disambiguate(a)
    d = powerset(a)
    assert automata_isomorphic(powerset(d), d)


@settings(max_examples=80)
@given(seeds)
def test_powerset_shape(seed):
    a = random_automaton(rng_of(seed), {"a": 1, "b": 2}, reuse_prob=0.4)
    d = powerset(a)
    assert d.finals == (SINK,) and not d.out(SINK)
    assert all(t.target == SINK for t in d.transitions if t.symbol.is_blank)
    if not ambiguous_pairs(a):
        assert is_deterministic(d)


@settings(max_examples=40)
@given(seeds)
def test_disambiguation_preserves_language(seed):
    a = random_automaton(rng_of(seed), {"a": 1, "b": 2}, reuse_prob=0.4)
    d = disambiguate(a)
    assert ambiguous_pairs(d) == []
    assert equivalent_bounded(a, d, 4) == (True, None)
    assert is_deterministic(powerset(d))
