import pytest
from hypothesis import given, settings

from graphfa.errors import PreconditionError, TypeMismatchError
from graphfa.generate import random_atom, random_graph, shuffle_ids
from graphfa.graph import Graph, RankedAlphabet, compose, isomorphic
from graphfa.symbols import (AtomSymbol, BlankSymbol, all_blanks, canonicalize, compose_symbols,
                             decompose, erase_rear_form, identity_blank, interpret,
                             interpret_string, similar)
from graphfa.textio import parse_string, parse_symbol
from helpers import SIGMA, random_string, random_symbol, rng_of, seeds
from oracles import brute_canonical, brute_isomorphic

AB = RankedAlphabet({"a": 2, "b": 2})


def s(text):
    return parse_symbol(text, AB)


def w(text):
    return parse_string(text, AB)


def star():
    # edges in the order b(w,y), a(w,x), a(w,z)
    return Graph.build("wxyz", [("b", "wy"), ("a", "wx"), ("a", "wz")], "w", "y")


def test_atom_graph():
    g = interpret(s("b[1|1,2]"))
    assert g.front == (1,) and g.rear == (1, 2)
    assert [(e.label, e.att) for e in g.edges] == [("b", (1, 2))]


def test_blank_graph():
    g = interpret(s("~4[4]"))
    assert g.nodes == (1, 2, 3, 4) and g.front == (1, 2, 3, 4) and g.rear == (4,) and not g.edges


def test_empty_blank():
    g = interpret(BlankSymbol(0, ()))
    assert g == Graph((), (), (), ())


def test_non_canonical_atom_rejected():
    with pytest.raises(ValueError, match=r"a\[4\|1\]"):
        AtomSymbol("a", 2, (4,), (1,))


def test_string_graph_is_star():
    assert isomorphic(interpret_string(w("a[1|1] a[1|1] b[1|2]")), star())


def test_string_of_one_symbol():
    x = s("a[1,3|1,2,3]")
    assert isomorphic(interpret_string([x]), interpret(x))


def test_untyped_string():
    with pytest.raises(TypeMismatchError):
        interpret_string([s("a[1|1]"), s("b[1,2|1,2]")])


def test_decomposition_string_of_star():
    u = w("b[1|1,2] a[1,3|1,2,3] a[1,3,4|1,2,3,4] ~4[4]")
    assert isomorphic(interpret_string(u), star())
    assert similar(u, w("a[1|1] a[1|1] b[1|2]"))


def test_decompose_star():
    assert decompose(star()) == w("b[1|1,2] a[1,3|1,2,3] a[1,3,4|1,2,3,4] ~4[4]")


def test_decompose_discrete():
    g = Graph(("u", "v"), (), ("u", "v"), ("v", "u"))
    assert decompose(g) == [BlankSymbol(2, (2, 1))]


def test_decompose_needs_isolated_nodes_in_front():
    with pytest.raises(PreconditionError):
        decompose(Graph(("u", "v"), (), ("u",), ()))


def test_canonicalize_fig1_third_graph():
    g = Graph.build("xyz", [("a", "xy")], "xz", "xyz")
    assert canonicalize(g) == s("a[1,3|1,2,3]")


def test_compose_symbols_examples():
    assert compose_symbols(s("b[1,2|2,1]"), s("~2[2,1]")) == s("b[1,2|1,2]")
    assert compose_symbols(s("a[1|1]"), identity_blank(1)) == s("a[1|1]")
    assert compose_symbols(s("~2[2,1]"), s("b[1,2|2,1]")) == s("b[2,1|2,1]")


def test_compose_two_atoms_refused():
    with pytest.raises(PreconditionError):
        compose_symbols(s("a[1|1]"), s("a[1|1]"))


def test_similar_examples():
    u = w("a[1|1] a[1|1] b[1|2]")
    assert similar(u, u)
    assert not similar(w("a[1|1] b[1|2]"), u)


def test_erase_rear_form():
    assert erase_rear_form(s("b[1,2|1,2]")) == erase_rear_form(s("b[1,2|2,1]"))
    assert erase_rear_form(s("a[1|1]")) != erase_rear_form(s("b[1|2]"))
    assert erase_rear_form(s("a[1,3|1,2,3]")) != erase_rear_form(s("a[1,3,4|1,2,3,4]"))


def test_erase_rear_form_against_blank_search():
    pairs = [("b[1,2|1,2]", "b[1,2|2,1]"), ("a[1|1]", "b[1|2]"), ("a[1,3|1,2,3]", "a[1,3,4|1,2,3,4]"),
             ("a[1|1,2]", "a[1|2]"), ("a[1,2|1]", "a[2,1|1]")]
    for x, y in pairs:
        x, y = s(x), s(y)
        same = erase_rear_form(x) == erase_rear_form(y)
        found = x.type[0] == y.type[0] and any(
            b1.type[1] == b2.type[1] and similar([x, b1], [y, b2])
            for b1 in all_blanks(len(x.rho)) for b2 in all_blanks(len(y.rho)))
        assert same == found, (x, y)


@settings(max_examples=100)
@given(seeds)
def test_interpret_canonicalize_round_trip(seed):
    rng = rng_of(seed)
    i, j = rng.randint(0, 3), rng.randint(0, 3)
    x = random_symbol(rng, i, j)
    if x is None:
        return
    assert canonicalize(interpret(x)) == x


@settings(max_examples=60)
@given(seeds)
def test_canonicalize_matches_brute_force(seed):
    rng = rng_of(seed)
    lab = rng.choice(["a", "b", "c"])
    x = random_atom(rng, lab, SIGMA[lab], rng.randint(0, 3), rng.randint(0, 3))
    if x is None:
        return
    g = shuffle_ids(rng, interpret(x))
    assert brute_canonical(g) == [canonicalize(g)] == [x]


@settings(max_examples=100)
@given(seeds)
def test_compose_symbols_matches_graph_composition(seed):
    rng = rng_of(seed)
    i, j, k = (rng.randint(0, 3) for _ in range(3))
    x = random_symbol(rng, i, j, blank_prob=0.5)
    if x is None:
        return
    y = random_symbol(rng, j, k, blank_prob=1.0 if not x.is_blank else 0.5)
    if y is None or not (x.is_blank or y.is_blank):
        return
    c = compose_symbols(x, y)
    assert brute_isomorphic(interpret(c), compose(interpret(x), interpret(y)))


@settings(max_examples=100)
@given(seeds)
def test_string_graph_equals_compose_fold(seed):
    rng = rng_of(seed)
    u = random_string(rng, rng.randint(1, 5))
    g = interpret(u[0])
    for x in u[1:]:
        g = compose(g, interpret(x))
    assert interpret_string(u) == g


@settings(max_examples=100)
@given(seeds)
def test_decompose_round_trip(seed):
    rng = rng_of(seed)
    g = random_graph(rng, SIGMA, max_edges=6, max_nodes=6)
    u = decompose(g)
    assert len(u) == len(g.edges) + 1 and u[-1].is_blank
    assert all(not x.is_blank for x in u[:-1])
    assert brute_isomorphic(interpret_string(u), g)
