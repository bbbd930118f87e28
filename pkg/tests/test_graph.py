import pytest
from hypothesis import given, settings

from graphfa.errors import TypeMismatchError
from graphfa.generate import mutate, random_graph, shuffle_ids
from graphfa.graph import Edge, Graph, RankedAlphabet, compose, isomorphic, validate_graph
from graphfa.symbols import identity_blank, interpret, interpret_string
from graphfa.textio import parse_symbol
from helpers import SIGMA, random_string, rng_of, seeds
from oracles import brute_isomorphic

AB = RankedAlphabet({"a": 2, "b": 2})


def star():
    return Graph.build("wxyz", [("a", "wx"), ("b", "wy"), ("a", "wz")], "w", "y")


def s(text):
    return parse_symbol(text, AB)


def test_star_is_valid():
    assert validate_graph(star(), AB) == []


def test_empty_graph_is_valid():
    assert validate_graph(Graph((), (), (), ())) == []


def test_repeated_attachment():
    g = Graph.build("w", [("a", "ww")])
    assert any("repetition in attachment" in p for p in validate_graph(g, AB))


def test_validation_messages():
    g = Graph(("u", "v"), (Edge(1, "a", ("u", "x")), Edge(1, "b", ("u", "v")), Edge(2, "z", ("v",))),
              ("u", "u"), ("q",))
    text = " | ".join(validate_graph(g, AB))
    for needle in ["duplicate edge id", "dangling", "unknown label", "front", "rear"]:
        assert needle in text


def test_rank_mismatch_reported():
    g = Graph.build("uvw", [("a", "uvw")], "u")
    assert any("rank" in p for p in validate_graph(g, AB))


def test_type():
    assert star().type == (1, 1)


def test_compose_star_from_atoms():
    g = compose(compose(interpret(s("a[1|1]")), interpret(s("a[1|1]"))), interpret(s("b[1|2]")))
    assert isomorphic(g, star())


def test_compose_type_mismatch():
    with pytest.raises(TypeMismatchError):
        compose(interpret(s("a[1|1]")), interpret(s("b[1,2|1,2]")))


def test_compose_identity():
    a = interpret(s("a[1|1]"))
    assert isomorphic(compose(interpret(identity_blank(1)), a), a)


def test_isomorphic_witness_on_self():
    ok, (nmap, emap) = isomorphic(star(), star(), witness=True)
    assert ok
    assert all(nmap[v] == v for v in "wy")


def test_rear_order_matters():
    assert not isomorphic(interpret(s("a[1,2|1,2]")), interpret(s("a[1,2|2,1]")))


def test_star_isomorphic_to_its_string():
    assert isomorphic(interpret_string([s("a[1|1]"), s("a[1|1]"), s("b[1|2]")]), star())


@settings(max_examples=60)
@given(seeds)
def test_compose_associative_and_typed(seed):
    rng = rng_of(seed)
    w1 = random_string(rng, 2)
    w2 = random_string(rng, 2, start=w1[-1].type[1])
    w3 = random_string(rng, 2, start=w2[-1].type[1])
    g, h, k = (interpret_string(w) for w in (w1, w2, w3))
    left = compose(compose(g, h), k)
    right = compose(g, compose(h, k))
    assert left.type == (g.type[0], k.type[1])
    assert isomorphic(left, right)
    assert validate_graph(left) == []


@settings(max_examples=60)
@given(seeds)
def test_identity_law(seed):
    rng = rng_of(seed)
    g = interpret_string(random_string(rng, 3))
    m, n = g.type
    assert isomorphic(compose(interpret(identity_blank(m)), g), g)
    assert isomorphic(compose(g, interpret(identity_blank(n))), g)


@settings(max_examples=80)
@given(seeds)
def test_isomorphic_matches_brute_force(seed):
    rng = rng_of(seed)
    g = random_graph(rng, SIGMA, max_edges=5, max_nodes=6)
    h = shuffle_ids(rng, g)
    if rng.random() < 0.5:
        h = mutate(rng, h, SIGMA) or h
    assert isomorphic(g, h) == brute_isomorphic(g, h)


@settings(max_examples=40)
@given(seeds)
def test_witness_is_an_isomorphism(seed):
    rng = rng_of(seed)
    g = random_graph(rng, SIGMA, max_edges=6, max_nodes=7)
    h = shuffle_ids(rng, g)
    ok, (nmap, emap) = isomorphic(g, h, witness=True)
    assert ok
    assert tuple(nmap[v] for v in g.front) == h.front
    assert tuple(nmap[v] for v in g.rear) == h.rear
    hm = h.edge_map
    for e in g.edges:
        f = hm[emap[e.id]]
        assert f.label == e.label and f.att == tuple(nmap[v] for v in e.att)
