"""Finite automata over graph symbols and their two semantics.

On strings an automaton accepts when a path spells the string.  On graphs
it works with configurations ``(state, graph)``: a move peels off a
subgraph isomorphic to the symbol's graph at the front interface.
:func:`recognize_backtracking` explores all moves and serves as the
reference recognizer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from graphfa.errors import PreconditionError, ResourceLimitExceeded, TypeMismatchError
from graphfa.graph import Edge, Graph, RankedAlphabet, id_key, validate_graph
from graphfa.symbols import Symbol, identity_blank, interpret_string, similar


@dataclass(frozen=True)
class Transition:
    source: str
    symbol: Symbol
    target: str

    def __str__(self):
        return f"({self.source}, {self.symbol}, {self.target})"


@dataclass(frozen=True, eq=False)
class Automaton:
    alphabet: RankedAlphabet
    states: dict  # name -> rank, in declaration order
    transitions: tuple[Transition, ...]
    initial: str
    finals: tuple[str, ...]
    name: str = ""
    comments: dict = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, Automaton):
            return NotImplemented
        return (self.alphabet == other.alphabet and self.states == other.states
                and self.transitions == other.transitions and self.initial == other.initial
                and set(self.finals) == set(other.finals))

    __hash__ = object.__hash__

    def rank(self, q: str) -> int:
        return self.states[q]

    @property
    def type(self) -> tuple[int, int]:
        fr = self.states[self.finals[0]] if self.finals else 0
        return self.states[self.initial], fr

    @cached_property
    def outgoing(self) -> dict:
        out = {q: [] for q in self.states}
        for t in self.transitions:
            out.setdefault(t.source, []).append(t)
        return out

    def out(self, q: str) -> list[Transition]:
        return self.outgoing.get(q, [])

    @cached_property
    def index(self) -> dict:
        """Position of each transition in file order."""
        return {t: i for i, t in enumerate(self.transitions)}

    @cached_property
    def final_set(self) -> frozenset:
        return frozenset(self.finals)

    def symbols(self) -> list[Symbol]:
        seen = {}
        for t in self.transitions:
            seen.setdefault(t.symbol, None)
        return list(seen)

    def label(self, t: Transition) -> str:
        """Short name ``δk`` (1-based file position) for reports."""
        return f"δ{self.index[t] + 1}"

    def replace(self, **kw) -> Automaton:
        data = dict(alphabet=self.alphabet, states=self.states, transitions=self.transitions,
                    initial=self.initial, finals=self.finals, name=self.name,
                    comments=self.comments)
        data.update(kw)
        return Automaton(**data)


def validate_automaton(a: Automaton) -> list[str]:
    out = []
    if a.initial not in a.states:
        out.append(f"initial state {a.initial!r} is not declared")
    if not a.finals:
        out.append("no final state")
    if a.initial in a.finals:
        out.append(f"initial in finals: {a.initial!r} may not be final")
    for q in a.finals:
        if q not in a.states:
            out.append(f"final state {q!r} is not declared")
    franks = {a.states[q] for q in a.finals if q in a.states}
    if len(franks) > 1:
        out.append(f"final states have unequal ranks {sorted(franks)}")
    for t in a.transitions:
        s = t.symbol
        if t.source not in a.states or t.target not in a.states:
            out.append(f"transition {t} uses an undeclared state")
            continue
        if not s.is_blank:
            if s.label not in a.alphabet:
                out.append(f"transition {t}: unknown label {s.label!r}")
            elif a.alphabet[s.label] != s.rank:
                out.append(f"transition {t}: label {s.label!r} has rank {a.alphabet[s.label]}")
        i, j = s.type
        if i != a.states[t.source]:
            out.append(f"type mismatch in {t}: front rank {i} != rank({t.source})={a.states[t.source]}")
        if j != a.states[t.target]:
            out.append(f"type mismatch in {t}: rear rank {j} != rank({t.target})={a.states[t.target]}")
    return out


def require_valid(a: Automaton):
    problems = validate_automaton(a)
    if problems:
        raise PreconditionError("invalid automaton: " + "; ".join(problems))


def accepts_string(a: Automaton, w: Sequence[Symbol]) -> bool:
    current = {a.initial}
    for s in w:
        current = {t.target for q in current for t in a.out(q) if t.symbol == s}
        if not current:
            return False
    return bool(current & a.final_set)


def enumerate_accepted(a: Automaton, max_len: int) -> set[tuple]:
    """Every accepted string with at most ``max_len`` symbols."""
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    found = set()
    layer = {(a.initial, ())}
    for _ in range(max_len):
        nxt = set()
        for q, w in layer:
            for t in a.out(q):
                item = (t.target, w + (t.symbol,))
                nxt.add(item)
                if t.target in a.final_set:
                    found.add(item[1])
        layer = nxt
    return found


# graph semantics

@dataclass(frozen=True)
class GraphConfiguration:
    state: str
    graph: Graph


@dataclass(frozen=True)
class Inapplicable:
    reason: str  # label, arity, front-mismatch, injectivity, dangling-node, rear-violation
    detail: str = ""

    def __bool__(self):
        return False

    def __str__(self):
        return f"{self.reason}: {self.detail}" if self.detail else self.reason


@dataclass(frozen=True)
class Move:
    transition: Transition
    edge: object  # edge id, or None for a blank
    nodes: tuple  # nodes[k-1] is the graph node matched to symbol node k

    def format(self, k: int) -> str:
        t = self.transition
        edge = "-" if self.edge is None else self.edge
        mp = " ".join(f"{i}:{v}" for i, v in enumerate(self.nodes, 1))
        return f"step {k}: {t.source} --{t.symbol}--> {t.target} edge={edge} map=[{mp}]"

    def as_json(self, k: int) -> dict:
        t = self.transition
        return {"step": k, "source": t.source, "symbol": str(t.symbol), "target": t.target,
                "edge": self.edge, "map": {str(i): v for i, v in enumerate(self.nodes, 1)}}


def match_move(g: Graph, t: Transition, e=None):
    """The node map of the move, or an :class:`Inapplicable` reason."""
    s = t.symbol
    front = g.front
    if s.is_blank:
        if e is not None:
            return Inapplicable("arity", "a blank reads no edge")
        if len(front) != s.n:
            return Inapplicable("front-mismatch", f"front has {len(front)} nodes, blank needs {s.n}")
        keep = set(s.rho)
        deg = g.degree
        rear = set(g.rear)
        for i, v in enumerate(front, 1):
            if i not in keep:
                if deg[v]:
                    return Inapplicable("dangling-node", f"dropped node {v} still has edges")
                if v in rear:
                    return Inapplicable("rear-violation", f"dropped node {v} is in the rear")
        return tuple(front)
    if e is None:
        return Inapplicable("arity", "an atom must read an edge")
    edge = e if isinstance(e, Edge) else g.edge_map.get(e)
    if edge is None:
        return Inapplicable("label", f"no edge {e!r}")
    if edge.label != s.label:
        return Inapplicable("label", f"edge {edge.id} has label {edge.label}, symbol reads {s.label}")
    if len(edge.att) != s.rank:
        return Inapplicable("arity", f"edge {edge.id} has {len(edge.att)} tentacles")
    if len(front) != len(s.phi):
        return Inapplicable("front-mismatch",
                            f"front has {len(front)} nodes, symbol expects {len(s.phi)}")
    m = [None] * (s.n + 1)
    for k, v in enumerate(edge.att, 1):
        m[k] = v
    for i, k in enumerate(s.phi):
        if k <= s.rank:
            if m[k] != front[i]:
                return Inapplicable("front-mismatch",
                                    f"front node {i + 1} ({front[i]}) is not tentacle {k} of edge {edge.id}")
        else:
            m[k] = front[i]
    if len(set(m[1:])) != s.n:
        return Inapplicable("injectivity", "two symbol nodes would map to one graph node")
    keep = set(s.rho)
    rear = set(g.rear)
    deg = g.degree
    for k in range(1, s.n + 1):
        if k in keep:
            continue
        v = m[k]
        if deg[v] != (1 if k <= s.rank else 0):
            return Inapplicable("dangling-node",
                                f"removing node {v} would leave another edge dangling")
        if v in rear:
            return Inapplicable("rear-violation", f"node {v} is in the rear and cannot be removed")
    return tuple(m[1:])


def _apply(g: Graph, t: Transition, e, nodes: tuple) -> Graph:
    s = t.symbol
    keep = set(s.rho)
    dropped = {nodes[k - 1] for k in range(1, len(nodes) + 1) if k not in keep}
    eid = None if e is None else (e.id if isinstance(e, Edge) else e)
    return Graph(
        tuple(v for v in g.nodes if v not in dropped),
        tuple(x for x in g.edges if x.id != eid),
        tuple(nodes[k - 1] for k in s.rho),
        g.rear,
        g.name,
    )


def graph_move(c: GraphConfiguration, t: Transition, e=None, aut: Automaton | None = None):
    """Apply ``t`` to ``c`` reading edge ``e``; returns the new configuration
    or an :class:`Inapplicable` with a reason code."""
    if t.source != c.state:
        raise PreconditionError(f"transition leaves {t.source}, configuration is in {c.state}")
    if aut is not None and t not in aut.index:
        raise PreconditionError(f"{t} is not a transition of the automaton")
    nodes = match_move(c.graph, t, e)
    if isinstance(nodes, Inapplicable):
        return nodes
    return GraphConfiguration(t.target, _apply(c.graph, t, e, nodes))


def is_identity_graph(g: Graph) -> bool:
    return not g.edges and g.front == g.rear and len(g.nodes) == len(g.front)


def is_accepting(a: Automaton, c: GraphConfiguration) -> bool:
    return c.state in a.final_set and is_identity_graph(c.graph)


def is_final_blank_accepting(c: GraphConfiguration, t: Transition, aut: Automaton | None = None) -> bool:
    """Does the blank move ``t`` turn ``c`` into an identity blank?"""
    s = t.symbol
    if not s.is_blank:
        raise PreconditionError(f"{t} does not read a blank")
    if aut is not None and t.target not in aut.final_set:
        raise PreconditionError(f"{t} does not lead into a final state")
    g = c.graph
    if g.edges or len(g.front) != s.n or len(g.nodes) != s.n or len(g.rear) != len(s.rho):
        return False
    return all(g.rear[j] == g.front[k - 1] for j, k in enumerate(s.rho))


@dataclass
class SearchResult:
    accepted: bool
    trace: list[Move] | None = None
    explored: int = 0

    def __bool__(self):
        return self.accepted


def recognize_backtracking(a: Automaton, g: Graph, budget: int = 200_000) -> SearchResult:
    """Exhaustive depth-first search over all moves.

    Transitions are tried in file order and edges in ascending identifier
    order.  Configurations already explored are not explored again, which
    also makes blank cycles terminate.  Raises
    :class:`ResourceLimitExceeded` after ``budget`` configurations.
    """
    by_label: dict = {}
    for e in sorted(g.edges, key=lambda e: id_key(e.id)):
        by_label.setdefault(e.label, []).append(e)

    def key(c: GraphConfiguration):
        gr = c.graph
        return (c.state, gr.front, frozenset(e.id for e in gr.edges), frozenset(gr.nodes))

    start = GraphConfiguration(a.initial, g)
    seen = {key(start)}
    explored = 0
    def successors(c: GraphConfiguration):
        alive = {e.id for e in c.graph.edges}
        for t in a.out(c.state):
            if t.symbol.is_blank:
                cand = [None]
            else:
                cand = [e for e in by_label.get(t.symbol.label, ()) if e.id in alive]
            for e in cand:
                nodes = match_move(c.graph, t, e)
                if isinstance(nodes, Inapplicable):
                    continue
                nxt = GraphConfiguration(t.target, _apply(c.graph, t, e, nodes))
                yield Move(t, None if e is None else e.id, nodes), nxt

    stack = [(start, successors(start))]
    path: list[Move] = []
    while stack:
        c, it = stack[-1]
        step = next(it, None)
        if step is None:
            stack.pop()
            if path:
                path.pop()
            continue
        move, nxt = step
        k = key(nxt)
        if k in seen:
            continue
        seen.add(k)
        explored += 1
        if explored > budget:
            raise ResourceLimitExceeded(budget, explored)
        path.append(move)
        if is_accepting(a, nxt):
            return SearchResult(True, list(path), explored)
        stack.append((nxt, successors(nxt)))
    return SearchResult(False, None, explored)


def trace_symbols(trace: Sequence[Move]) -> list[Symbol]:
    return [m.transition.symbol for m in trace]


def equivalent_bounded(a: Automaton, b: Automaton, max_len: int = 6):
    """Check both language inclusions on strings up to ``max_len``.

    Each accepted string of one automaton is turned into its graph and
    handed to the reference recognizer of the other; the witness string it
    returns is confirmed similar.  Returns ``(True, None)`` or
    ``(False, (which, string))``.
    """
    if a.type != b.type:
        raise TypeMismatchError(f"automata have types {a.type} and {b.type}")
    m = a.type[0]
    for name, x, y in (("left", a, b), ("right", b, a)):
        for w in sorted(enumerate_accepted(x, max_len), key=lambda w: (len(w), list(map(str, w)))):
            lead = (identity_blank(m),) + tuple(w)
            res = recognize_backtracking(y, interpret_string(lead))
            if not res.accepted:
                return False, (name, w)
            if not similar(lead, (identity_blank(m),) + tuple(trace_symbols(res.trace))):
                return False, (name, w)
    return True, None


def check_graph_for(a: Automaton, g: Graph) -> list[str]:
    return validate_graph(g, a.alphabet)
