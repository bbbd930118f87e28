"""Atom and blank symbols of the canonical alphabet and their graphs.

An atom ``a[φ|ρ]`` stands for a graph with one ``a``-edge attached to
nodes ``1..rank(a)``; front-only nodes are numbered after the attached
ones, in front order.  A blank ``~n[ρ]`` is the discrete graph on
``1..n`` whose front lists every node.  With that numbering every basic
graph has exactly one symbol, so similarity of symbols is plain equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence, Union

from graphfa.errors import GraphFAError, PreconditionError, TypeMismatchError
from graphfa.graph import Edge, Graph, compose, id_key, isomorphic

# When set, compose_symbols double-checks its result by graph isomorphism.
DEBUG = False


def _repetition_free(seq) -> bool:
    return len(set(seq)) == len(seq)


def _fmt(seq) -> str:
    return ",".join(map(str, seq))


@dataclass(frozen=True)
class AtomSymbol:
    label: str
    rank: int
    phi: tuple[int, ...]
    rho: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "phi", tuple(self.phi))
        object.__setattr__(self, "rho", tuple(self.rho))
        problem = atom_problem(self.rank, self.phi, self.rho)
        if problem:
            raise ValueError(f"{self.label}[{_fmt(self.phi)}|{_fmt(self.rho)}]: {problem}")

    is_blank = False

    @property
    def n(self) -> int:
        return max([self.rank, *self.phi])

    @property
    def type(self) -> tuple[int, int]:
        return len(self.phi), len(self.rho)

    def __str__(self):
        return f"{self.label}[{_fmt(self.phi)}|{_fmt(self.rho)}]"


@dataclass(frozen=True)
class BlankSymbol:
    n: int
    rho: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rho", tuple(self.rho))
        if self.n < 0:
            raise ValueError("blank needs a non-negative node count")
        if not _repetition_free(self.rho) or any(not 1 <= x <= self.n for x in self.rho):
            raise ValueError(f"~{self.n}[{_fmt(self.rho)}]: rear must be a repetition-free "
                             f"sequence over 1..{self.n}")

    is_blank = True

    @property
    def type(self) -> tuple[int, int]:
        return self.n, len(self.rho)

    @property
    def is_identity(self) -> bool:
        return self.rho == tuple(range(1, self.n + 1))

    def __str__(self):
        return f"~{self.n}[{_fmt(self.rho)}]"


Symbol = Union[AtomSymbol, BlankSymbol]


def atom_problem(rank: int, phi: Sequence[int], rho: Sequence[int]) -> str:
    """Why ``(rank, φ, ρ)`` is not a canonical atom, or '' if it is."""
    if rank < 0:
        return "negative rank"
    if any(x < 1 for x in phi) or any(x < 1 for x in rho):
        return "indices start at 1"
    if not _repetition_free(phi):
        return "front has a repetition"
    if not _repetition_free(rho):
        return "rear has a repetition"
    n = max([rank, *phi])
    extra = [x for x in phi if x > rank]
    if sorted(extra) != list(range(rank + 1, n + 1)):
        return f"nodes 1..{n} are not all attached or in the front"
    if extra != sorted(extra):
        canon = sorted(extra)
        it = iter(canon)
        fixed = [x if x <= rank else next(it) for x in phi]
        return (f"front-only nodes must be numbered in front order; "
                f"the canonical front is [{_fmt(fixed)}] with the rear renumbered to match")
    if any(x > n for x in rho):
        return f"rear mentions a node outside 1..{n}"
    return ""


def symbol_key(s: Symbol):
    """Total order on symbols, used for reproducible iteration."""
    if s.is_blank:
        return (0, "", s.n, (), s.rho)
    return (1, s.label, s.rank, s.phi, s.rho)


def identity_blank(n: int) -> BlankSymbol:
    return BlankSymbol(n, tuple(range(1, n + 1)))


def symbol_type(s: Symbol) -> tuple[int, int]:
    return s.type


def check_typed(w: Sequence[Symbol]) -> tuple[int, int]:
    """Type of a symbol string; raises on an empty or badly chained string."""
    if not w:
        raise TypeMismatchError("the empty string has no type and no graph")
    for i in range(1, len(w)):
        if w[i - 1].type[1] != w[i].type[0]:
            raise TypeMismatchError(
                f"untyped string: symbol {i} ({w[i - 1]}) has rear rank {w[i - 1].type[1]} "
                f"but symbol {i + 1} ({w[i]}) has front rank {w[i].type[0]}")
    return w[0].type[0], w[-1].type[1]


def _check_label(s: Symbol, sigma: Mapping[str, int] | None):
    if sigma is None or s.is_blank:
        return
    if s.label not in sigma:
        raise GraphFAError(f"unknown label {s.label!r} in {s}")
    if sigma[s.label] != s.rank:
        raise GraphFAError(f"rank mismatch in {s}: {s.label!r} has rank {sigma[s.label]}")


def interpret(s: Symbol, sigma: Mapping[str, int] | None = None) -> Graph:
    """The canonical graph of a symbol, on nodes ``1..n``."""
    _check_label(s, sigma)
    if s.is_blank:
        nodes = tuple(range(1, s.n + 1))
        return Graph(nodes, (), nodes, s.rho)
    return Graph(tuple(range(1, s.n + 1)),
                 (Edge(1, s.label, tuple(range(1, s.rank + 1))),),
                 s.phi, s.rho)


def interpret_string(w: Sequence[Symbol], sigma: Mapping[str, int] | None = None) -> Graph:
    """Graph of a typed string: the left fold of composition.

    Built incrementally in one pass, with the same numbering a fold of
    :func:`compose` would produce.
    """
    check_typed(w)
    nodes: list[int] = []
    edges: list[Edge] = []
    front: tuple = ()
    rear: list[int] = []
    for pos, s in enumerate(w):
        _check_label(s, sigma)
        n = s.n
        local = [0] * (n + 1)
        glued = s.phi if not s.is_blank else range(1, n + 1)
        if pos == 0:
            for k in range(1, n + 1):
                nodes.append(len(nodes) + 1)
                local[k] = nodes[-1]
            front = tuple(local[k] for k in glued)
        else:
            for i, k in enumerate(glued):
                local[k] = rear[i]
            for k in range(1, n + 1):
                if not local[k]:
                    nodes.append(len(nodes) + 1)
                    local[k] = nodes[-1]
        if not s.is_blank:
            edges.append(Edge(len(edges) + 1, s.label, tuple(local[1:s.rank + 1])))
        rear = [local[k] for k in s.rho]
    return Graph(tuple(nodes), tuple(edges), front, tuple(rear))


def canonicalize(g: Graph) -> Symbol:
    """The unique symbol whose graph is isomorphic to ``g``.

    ``g`` must have at most one edge and every node must be attached to it
    or lie in the front.
    """
    if len(g.edges) > 1:
        raise PreconditionError(f"canonicalize needs at most one edge, got {len(g.edges)}")
    front_set = set(g.front)
    if g.edges:
        e = g.edges[0]
        order = list(e.att) + [v for v in g.front if v not in set(e.att)]
        index = {v: i for i, v in enumerate(order, 1)}
        stray = [v for v in g.nodes if v not in index]
        if stray:
            raise PreconditionError(f"node {stray[0]!r} is neither attached nor in the front")
        return AtomSymbol(e.label, len(e.att),
                          tuple(index[v] for v in g.front), tuple(index[v] for v in g.rear))
    stray = [v for v in g.nodes if v not in front_set]
    if stray:
        raise PreconditionError(f"edge-free graph has node {stray[0]!r} outside its front")
    index = {v: i for i, v in enumerate(g.front, 1)}
    return BlankSymbol(len(g.front), tuple(index[v] for v in g.rear))


@lru_cache(maxsize=65536)
def _compose_cached(x: Symbol, y: Symbol) -> Symbol:
    return canonicalize(compose(interpret(x), interpret(y)))


def compose_symbols(x: Symbol, y: Symbol) -> Symbol:
    """The symbol similar to ``x y``; at least one of them must be a blank."""
    if not (x.is_blank or y.is_blank):
        raise PreconditionError(f"cannot merge two atoms {x} and {y} into one symbol")
    if x.type[1] != y.type[0]:
        raise TypeMismatchError(f"cannot compose {x} (rear rank {x.type[1]}) "
                                f"with {y} (front rank {y.type[0]})")
    c = _compose_cached(x, y)
    if DEBUG:
        assert isomorphic(interpret(c), compose(interpret(x), interpret(y))), (x, y, c)
    return c


def similar(u: Sequence[Symbol], v: Sequence[Symbol],
            sigma: Mapping[str, int] | None = None) -> bool:
    return isomorphic(interpret_string(u, sigma), interpret_string(v, sigma))


def erase_rear_form(a: AtomSymbol) -> AtomSymbol:
    """``a`` with its rear dropped; atoms that agree here differ only in their rears."""
    return AtomSymbol(a.label, a.rank, a.phi, ())


def all_blanks(n: int, j: int | None = None):
    """Every blank with ``n`` nodes (and rear length ``j`` if given)."""
    lengths = [j] if j is not None else range(n + 1)
    for k in lengths:
        for rho in itertools.permutations(range(1, n + 1), k):
            yield BlankSymbol(n, rho)


def permutation_blanks(j: int):
    for rho in itertools.permutations(range(1, j + 1)):
        yield BlankSymbol(j, rho)


def decompose(g: Graph) -> list[Symbol]:
    """A string of atoms and one final blank whose graph is isomorphic to ``g``.

    One edge is peeled per step, lowest identifier first.  The front of the
    remainder lists the peeled edge's attached nodes in attachment order,
    then the old front-only nodes in front order; that is exactly the
    atom's own node numbering, so every atom's rear is the identity.
    """
    deg = g.degree
    loose = [v for v in g.nodes if deg[v] == 0 and v not in set(g.front)]
    if loose:
        raise PreconditionError(f"isolated node {loose[0]!r} is not in the front")
    out: list[Symbol] = []
    front = list(g.front)
    for e in sorted(g.edges, key=lambda e: id_key(e.id)):
        att = set(e.att)
        order = list(e.att) + [v for v in front if v not in att]
        index = {v: i for i, v in enumerate(order, 1)}
        out.append(AtomSymbol(e.label, len(e.att), tuple(index[v] for v in front),
                              tuple(range(1, len(order) + 1))))
        front = order
    index = {v: i for i, v in enumerate(front, 1)}
    out.append(BlankSymbol(len(front), tuple(index[v] for v in g.rear)))
    return out


def format_string(w: Sequence[Symbol]) -> str:
    return " ".join(map(str, w))
