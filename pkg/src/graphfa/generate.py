"""Seeded generators: random symbols, graphs, automata, and graph mutations."""

from __future__ import annotations

import random
from typing import Mapping

from graphfa.automaton import Automaton, Transition, validate_automaton
from graphfa.graph import Edge, Graph, RankedAlphabet
from graphfa.symbols import AtomSymbol, BlankSymbol, interpret_string


def random_atom(rng: random.Random, label: str, rank: int, i: int, j: int) -> AtomSymbol | None:
    """A canonical atom of type ``(i, j)``, or ``None`` if none exists."""
    options = [f for f in range(0, i + 1) if i - f <= rank and j <= rank + f]
    if not options:
        return None
    f = rng.choice(options)
    attached = rng.sample(range(1, rank + 1), i - f)
    slots = sorted(rng.sample(range(i), f))
    phi: list[int] = []
    extra = iter(range(rank + 1, rank + f + 1))
    att = iter(attached)
    for pos in range(i):
        phi.append(next(extra) if pos in slots else next(att))
    rho = rng.sample(range(1, rank + f + 1), j)
    return AtomSymbol(label, rank, tuple(phi), tuple(rho))


def random_blank(rng: random.Random, i: int, j: int) -> BlankSymbol | None:
    if j > i:
        return None
    return BlankSymbol(i, tuple(rng.sample(range(1, i + 1), j)))


def random_graph(rng: random.Random, sigma: Mapping[str, int], max_edges: int = 8,
                 max_nodes: int = 8, max_front: int = 3, max_rear: int = 3,
                 front_isolated: bool = True) -> Graph:
    """A valid graph over ``sigma``; isolated nodes are put into the front
    when ``front_isolated`` is set."""
    labels = list(sigma)
    top = max([sigma[x] for x in labels] + [1])
    n_nodes = rng.randint(max(1, top), max(max_nodes, top))
    nodes = [f"v{i}" for i in range(n_nodes)]
    edges = []
    for k in range(rng.randint(0, max_edges)):
        lab = rng.choice(labels)
        edges.append(Edge(k + 1, lab, tuple(rng.sample(nodes, sigma[lab]))))
    front = rng.sample(nodes, rng.randint(0, min(max_front, n_nodes)))
    rear = rng.sample(nodes, rng.randint(0, min(max_rear, n_nodes)))
    if front_isolated:
        used = {v for e in edges for v in e.att}
        for v in nodes:
            if v not in used and v not in front:
                front.append(v)
    return Graph(tuple(nodes), tuple(edges), tuple(front), tuple(rear))


def random_automaton(rng: random.Random, sigma: Mapping[str, int], n_states: int = 4,
                     max_rank: int = 3, n_trans: int = 6, blank_prob: float = 0.25,
                     reuse_prob: float = 0.0, tries: int = 200) -> Automaton:
    """A valid automaton with at most ``n_states`` states and ``n_trans`` transitions.

    With probability ``reuse_prob`` a transition copies the source and
    symbol of an earlier one and picks another target of the same rank,
    which makes nondeterminism common.
    """
    sigma = RankedAlphabet(sigma)
    labels = list(sigma)
    for _ in range(tries):
        k = rng.randint(2, n_states)
        names = [f"q{i}" for i in range(k)]
        ranks = {q: rng.randint(0, max_rank) for q in names}
        final_rank = ranks[names[-1]]
        finals = [q for q in names[1:] if ranks[q] == final_rank]
        finals = sorted(rng.sample(finals, rng.randint(1, len(finals))))
        trans = []
        for _ in range(rng.randint(1, n_trans)):
            sym = None
            if trans and rng.random() < reuse_prob:
                old = rng.choice(trans)
                p, sym = old.source, old.symbol
                q = rng.choice([x for x in names[1:] if ranks[x] == ranks[old.target]])
            else:
                p = rng.choice(names)
                q = rng.choice(names[1:])
            i, j = ranks[p], ranks[q]
            if sym is None and rng.random() < blank_prob:
                sym = random_blank(rng, i, j)
            if sym is None:
                lab = rng.choice(labels)
                sym = random_atom(rng, lab, sigma[lab], i, j)
            if sym is not None:
                t = Transition(p, sym, q)
                if t not in trans:
                    trans.append(t)
        if not trans:
            continue
        a = Automaton(sigma, ranks, tuple(trans), names[0], tuple(finals), "R")
        if not validate_automaton(a):
            return a
    raise RuntimeError("could not generate a valid automaton")


def random_walk_string(rng: random.Random, a: Automaton, max_len: int):
    """Symbols along a random path that ends in a final state, or ``None``."""
    q, w = a.initial, []
    for _ in range(max_len):
        out = a.out(q)
        if not out:
            break
        t = rng.choice(out)
        w.append(t.symbol)
        q = t.target
        if q in a.final_set and rng.random() < 0.3:
            return w
    return w if q in a.final_set and w else None


def star_graph(n_a: int, n_b: int = 1) -> Graph:
    """Center ``c`` with ``n_a`` a-satellites and ``n_b`` b-satellites;
    front is the center, rear the first b-satellite."""
    nodes = ["c"] + [f"x{i}" for i in range(n_a)] + [f"y{i}" for i in range(n_b)]
    edges = [Edge(i + 1, "a", ("c", f"x{i}")) for i in range(n_a)]
    edges += [Edge(n_a + i + 1, "b", ("c", f"y{i}")) for i in range(n_b)]
    rear = ("y0",) if n_b else ()
    return Graph(tuple(nodes), tuple(edges), ("c",), rear)


# mutations, each returning a new graph or None if not applicable

def shuffle_ids(rng: random.Random, g: Graph) -> Graph:
    """Same graph up to isomorphism: fresh node names, shuffled node and edge order."""
    names = [f"n{i}" for i in range(len(g.nodes))]
    rng.shuffle(names)
    ren = dict(zip(g.nodes, names))
    nodes = [ren[v] for v in g.nodes]
    rng.shuffle(nodes)
    edges = [Edge(0, e.label, tuple(ren[v] for v in e.att)) for e in g.edges]
    rng.shuffle(edges)
    edges = [Edge(i + 1, e.label, e.att) for i, e in enumerate(edges)]
    return Graph(tuple(nodes), tuple(edges), tuple(ren[v] for v in g.front),
                 tuple(ren[v] for v in g.rear))


def relabel_edge(rng: random.Random, g: Graph, sigma: Mapping[str, int]) -> Graph | None:
    if not g.edges:
        return None
    e = rng.choice(g.edges)
    others = [x for x in sigma if x != e.label and sigma[x] == len(e.att)]
    if not others:
        return None
    lab = rng.choice(others)
    return Graph(g.nodes, tuple(Edge(x.id, lab, x.att) if x.id == e.id else x for x in g.edges),
                 g.front, g.rear)


def delete_edge(rng: random.Random, g: Graph) -> Graph | None:
    if not g.edges:
        return None
    e = rng.choice(g.edges)
    return Graph(g.nodes, tuple(x for x in g.edges if x.id != e.id), g.front, g.rear)


def permute_interface(rng: random.Random, g: Graph) -> Graph | None:
    seqs = [s for s in ("front", "rear") if len(getattr(g, s)) >= 2]
    if not seqs:
        return None
    which = rng.choice(seqs)
    seq = list(getattr(g, which))
    while True:
        rng.shuffle(seq)
        if tuple(seq) != getattr(g, which):
            break
    if which == "front":
        return Graph(g.nodes, g.edges, tuple(seq), g.rear)
    return Graph(g.nodes, g.edges, g.front, tuple(seq))


def add_stray_edge(rng: random.Random, g: Graph, sigma: Mapping[str, int]) -> Graph | None:
    labs = [x for x in sigma if sigma[x] <= len(g.nodes)]
    if not labs:
        return None
    lab = rng.choice(labs)
    att = tuple(rng.sample(list(g.nodes), sigma[lab]))
    nid = 1 + max([e.id for e in g.edges if isinstance(e.id, int)] + [0])
    return Graph(g.nodes, g.edges + (Edge(nid, lab, att),), g.front, g.rear)


def mutate(rng: random.Random, g: Graph, sigma: Mapping[str, int]) -> Graph | None:
    kind = rng.choice(["relabel", "delete", "permute", "stray"])
    if kind == "relabel":
        return relabel_edge(rng, g, sigma)
    if kind == "delete":
        return delete_edge(rng, g)
    if kind == "permute":
        return permute_interface(rng, g)
    return add_stray_edge(rng, g, sigma)


def sample_graphs(rng: random.Random, a: Automaton, strings, n_walks: int = 20, max_len: int = 6):
    """Graphs of the given accepted strings plus random-walk strings."""
    out = [interpret_string(w) for w in strings]
    for _ in range(n_walks):
        w = random_walk_string(rng, a, max_len)
        if w:
            out.append(interpret_string(w))
    return out
