"""Recognition without backtracking.

At every state the transitions are tried in a fixed order and the first
one that applies is taken for good; among several edges it might read,
the first one found is taken.  Both choices are safe when the automaton
passes the TS check and the FEC test.  The graph lives in a
:class:`WorkGraph` whose indexes make each applicability test cost
O(symbol size) once a candidate edge is in hand.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from graphfa.analysis import fec_test, ts_check
from graphfa.automaton import (Automaton, GraphConfiguration, Inapplicable, Move, Transition,
                               graph_move, is_accepting, trace_symbols)
from graphfa.determinize import is_deterministic
from graphfa.errors import PreconditionError
from graphfa.graph import Graph, isomorphic
from graphfa.symbols import interpret_string


class WorkGraph:
    """Mutable, indexed copy of a graph that shrinks move by move.

    Nodes and edges are renumbered densely.  ``inc[(v, label, k)]`` holds
    the edges with label ``label`` whose ``k``-th tentacle is ``v``; it is
    built for ``v`` the first time ``v`` is asked about, and dead entries
    are dropped lazily.  ``loose[label]`` holds the alive edges
    with no tentacle on the front.
    """

    def __init__(self, g: Graph):
        self.base = g
        self.node_ids = list(g.nodes)
        num = {v: i for i, v in enumerate(g.nodes)}
        self.num = num
        es = g.edges
        self.edge_ids = [e.id for e in es]
        self.label = labels = [e.label for e in es]
        self.att = atts = [tuple([num[v] for v in e.att]) for e in es]
        nn = len(g.nodes)
        self.edge_alive = bytearray(b"\x01") * len(es)
        self.node_alive = bytearray(b"\x01") * nn
        self.alive_edges = len(es)
        self.alive_nodes = nn
        deg = [0] * nn
        for att in atts:
            for v in att:
                deg[v] += 1
        # incidence in one flat array: edges at v are flat[off[v]:off[v + 1]], ascending
        off = [0] * (nn + 1)
        acc = 0
        for v in range(nn):
            off[v] = acc
            acc += deg[v]
        off[nn] = acc
        flat = [0] * acc
        fill = off[:nn]
        for e, att in enumerate(atts):
            for v in att:
                flat[fill[v]] = e
                fill[v] += 1
        self.deg, self.off, self.flat = deg, off, flat
        self.grouped = bytearray(nn)
        self.inc: dict = {}
        self.in_rear = bytearray(nn)
        for v in g.rear:
            self.in_rear[num[v]] = 1
        self.rear = [num[v] for v in g.rear]
        self.front = [num[v] for v in g.front]
        self.in_front = in_front = bytearray(nn)
        for v in self.front:
            in_front[v] = 1
        self.front_count = fc = [0] * len(es)
        self.loose: dict = {}
        for e, att in enumerate(atts):
            c = 0
            for v in att:
                c += in_front[v]
            if c:
                fc[e] = c
            else:
                self.loose.setdefault(labels[e], {})[e] = None

    def incident(self, v: int):
        return self.flat[self.off[v]:self.off[v + 1]]

    def _group(self, v: int):
        """Split the edges at ``v`` by (label, tentacle number), largest id first."""
        inc, labels, atts = self.inc, self.label, self.att
        flat = self.flat
        for x in range(self.off[v + 1] - 1, self.off[v] - 1, -1):
            e = flat[x]
            att = atts[e]
            for k in range(len(att)):
                if att[k] == v:
                    key = (v, labels[e], k + 1)
                    lst = inc.get(key)
                    if lst is None:
                        inc[key] = [e]
                    else:
                        lst.append(e)
        self.grouped[v] = 1

    def anchor_list(self, v: int, label: str, k: int) -> list:
        """Alive edges labelled ``label`` with tentacle ``k`` on ``v``, largest id first."""
        if not self.grouped[v]:
            self._group(v)
        d = self.inc.get((v, label, k))
        if d is None:
            return []
        alive = self.edge_alive
        while d and not alive[d[-1]]:
            d.pop()
        return d

    def check(self, e: int, c: "Compiled", m: list) -> bool:
        """Full applicability test of compiled atom ``c`` on edge ``e``; fills ``m``."""
        att = self.att[e]
        rank = c.rank
        if self.label[e] != c.label or len(att) != rank:
            return False
        m[1:rank + 1] = att
        front = self.front
        for i, k in enumerate(c.phi):
            if k <= rank:
                if m[k] != front[i]:
                    return False
            else:
                m[k] = front[i]
        # front-only symbol nodes are front nodes; they must not be tentacles of e
        for k in range(rank + 1, c.n + 1):
            if m[k] in att:
                return False
        deg, in_rear = self.deg, self.in_rear
        for k, need in c.dropped:
            v = m[k]
            if deg[v] != need or in_rear[v]:
                return False
        return True

    def apply(self, e: int | None, c: "Compiled", m: list):
        if e is not None:
            self.edge_alive[e] = 0
            self.alive_edges -= 1
            deg = self.deg
            for v in self.att[e]:
                deg[v] -= 1
            lab = self.loose.get(self.label[e])
            if lab is not None:
                lab.pop(e, None)
        in_front = self.in_front
        for k, _ in c.dropped:
            v = m[k]
            self.node_alive[v] = 0
            in_front[v] = 0
            self.alive_nodes -= 1
        new_front = [m[k] for k in c.rho]
        for v in new_front:
            if not in_front[v]:
                in_front[v] = 1
                for x in range(self.off[v], self.off[v + 1]):
                    e2 = self.flat[x]
                    if self.edge_alive[e2]:
                        if not self.front_count[e2]:
                            self.loose[self.label[e2]].pop(e2, None)
                        self.front_count[e2] += 1
        self.front = new_front

    def recount_ok(self) -> bool:
        """Recompute the counters from scratch and compare (debugging aid)."""
        deg = [0] * len(self.node_ids)
        for e, att in enumerate(self.att):
            if self.edge_alive[e]:
                for v in att:
                    deg[v] += 1
        fc_ok = all(self.front_count[e] == sum(self.in_front[v] for v in self.att[e])
                    for e in range(len(self.att)) if self.edge_alive[e])
        return (deg == self.deg and fc_ok and len(set(self.front)) == len(self.front)
                and all(self.node_alive[v] for v in self.front)
                and self.alive_edges == sum(self.edge_alive)
                and self.alive_nodes == sum(self.node_alive))

    def snapshot(self) -> Graph:
        """The current remainder as a plain graph (original identifiers)."""
        from graphfa.graph import Edge

        ids = self.node_ids
        return Graph(
            tuple(ids[v] for v in range(len(ids)) if self.node_alive[v]),
            tuple(Edge(self.edge_ids[e], self.label[e], tuple(ids[v] for v in self.att[e]))
                  for e in range(len(self.att)) if self.edge_alive[e]),
            tuple(ids[v] for v in self.front),
            tuple(ids[v] for v in self.rear),
        )


@dataclass(frozen=True)
class Compiled:
    """Plain-field view of a symbol for the hot loop.

    ``dropped`` pairs each symbol node that leaves the front with the
    degree it must have (1 if it is a tentacle of the edge, else 0).
    ``anchors`` pairs tentacle numbers with the front positions they sit on.
    """
    label: str | None
    rank: int
    n: int
    phi: tuple
    rho: tuple
    dropped: tuple
    anchors: tuple


def compile_symbol(s) -> Compiled:
    keep = set(s.rho)
    if s.is_blank:
        phi = tuple(range(1, s.n + 1))
        return Compiled(None, 0, s.n, phi, s.rho,
                        tuple((k, 0) for k in phi if k not in keep), ())
    dropped = tuple((k, 1 if k <= s.rank else 0) for k in range(1, s.n + 1) if k not in keep)
    anchors = tuple((k, i) for i, k in enumerate(s.phi) if k <= s.rank)
    return Compiled(s.label, s.rank, s.n, s.phi, s.rho, dropped, anchors)


def build_index(g: Graph) -> WorkGraph:
    return WorkGraph(g)


@dataclass
class Probe:
    probes: int = 0


def try_transition(w: WorkGraph, t: Transition, stats: Probe | None = None):
    """First edge ``t`` can read, with the node map, or ``None``."""
    if t.symbol.is_blank:
        raise PreconditionError(f"{t} reads a blank")
    return _try(w, compile_symbol(t.symbol), stats)


def _try(w: WorkGraph, c: Compiled, stats: Probe | None):
    front = w.front
    if len(front) != len(c.phi):
        return None
    if c.anchors:
        best = None
        for k, i in c.anchors:
            d = w.anchor_list(front[i], c.label, k)
            if not d:
                return None
            if best is None or len(d) < len(best):
                best = d
        cands = reversed(best)
    else:
        cands = w.loose.get(c.label, ())
    m = [0] * (c.n + 1)
    alive = w.edge_alive
    for e in cands:
        if not alive[e]:
            continue
        if stats is not None:
            stats.probes += 1
        if w.check(e, c, m):
            return e, m
    return None


def _blank_ok(w: WorkGraph, c: Compiled) -> bool:
    if w.alive_edges or len(w.front) != c.n or w.alive_nodes != c.n:
        return False
    if len(w.rear) != len(c.rho):
        return False
    return all(w.rear[j] == w.front[k - 1] for j, k in enumerate(c.rho))


@dataclass
class RecognitionResult:
    verdict: str  # accept, reject, not-applicable
    trace: list[Move] = field(default_factory=list)
    reason: str = ""
    step: int | None = None
    moves: int = 0
    probes: int = 0
    elapsed: float = 0.0

    @property
    def accepted(self) -> bool:
        return self.verdict == "accept"

    def __bool__(self):
        return self.accepted


@dataclass
class Plan:
    """Precomputed per-state transition orders for an automaton."""
    orders: dict
    safe: bool
    notes: list = field(default_factory=list)


def plan_for(a: Automaton) -> Plan:
    notes = []
    if not is_deterministic(a):
        notes.append("not deterministic")
    ts = ts_check(a)
    if not ts.holds:
        notes.append("TS property fails")
    fec = fec_test(a)
    if not fec.passes:
        notes.append("FEC test fails")
    return Plan(ts.orders, not notes, notes)


def recognize_deterministic(a: Automaton, g: Graph, orders: dict | None = None,
                            unsafe: bool = False, trace: bool = True) -> RecognitionResult:
    """Recognize ``g`` in linear time, never undoing a move.

    Without ``orders`` the automaton is analysed first; if it is not
    deterministic, lacks the TS property or fails the FEC test, a
    :class:`PreconditionError` is raised unless ``unsafe`` is set (the
    verdict is then only advisory).
    """
    if orders is None:
        plan = plan_for(a)
        if not plan.safe and not unsafe:
            raise PreconditionError("deterministic recognition needs " + ", ".join(
                {"not deterministic": "a deterministic automaton",
                 "TS property fails": "the TS property",
                 "FEC test fails": "a passing FEC test"}[n] for n in plan.notes))
        orders = plan.orders
    t0 = time.perf_counter()
    res = RecognitionResult("reject")
    stats = Probe()
    q = a.initial
    if len(g.front) != a.rank(q):
        res.reason = f"front length mismatch: graph has {len(g.front)}, automaton needs {a.rank(q)}"
        res.step = 0
        res.elapsed = time.perf_counter() - t0
        return res
    w = WorkGraph(g)
    ids = w.node_ids
    finals = a.final_set
    compiled = {}
    for q0, order in orders.items():
        compiled[q0] = ([(t, compile_symbol(t.symbol)) for t in order if not t.symbol.is_blank],
                        [(t, compile_symbol(t.symbol)) for t in order if t.symbol.is_blank])
    empty = ((), ())
    moves = 0
    steps: list[Move] = []
    while True:
        atoms, blanks = compiled.get(q, empty)
        if not w.alive_edges:
            if q in finals and _identity_remainder(w):
                break
            taken = None
            for t, c in blanks:
                if t.target in finals and _blank_ok(w, c):
                    taken = (t, c)
                    break
            if taken is not None:
                t, c = taken
                moves += 1
                if trace:
                    steps.append(Move(t, None, tuple(ids[v] for v in w.front)))
                w.apply(None, c, [0] + list(w.front))
                q = t.target
                break
            res.reason = f"no final blank transition applies in state {q}"
            res.step = moves + 1
            break
        taken = None
        for t, c in atoms:
            hit = _try(w, c, stats)
            if hit is not None:
                taken = (t, c, hit)
                break
        if taken is None:
            res.reason = f"no transition applies in state {q} ({w.alive_edges} edges left)"
            res.step = moves + 1
            break
        t, c, (e, m) = taken
        moves += 1
        if trace:
            steps.append(Move(t, w.edge_ids[e], tuple(ids[v] for v in m[1:])))
        w.apply(e, c, m)
        q = t.target
    if not res.reason:
        res.verdict = "accept"
        res.trace = steps
    res.moves = moves
    res.probes = stats.probes
    res.elapsed = time.perf_counter() - t0
    return res


def _identity_remainder(w: WorkGraph) -> bool:
    return not w.alive_edges and w.alive_nodes == len(w.front) and w.front == w.rear


def verify_trace(a: Automaton, g: Graph, trace) -> bool:
    """Replay ``trace`` with :func:`graph_move` and check it ends accepting and
    that the spelled string denotes ``g``."""
    if not trace:
        return False
    c = GraphConfiguration(a.initial, g)
    for mv in trace:
        t = mv.transition
        if t not in a.index or t.source != c.state:
            return False
        if t.symbol.is_blank != (mv.edge is None):
            return False
        nxt = graph_move(c, t, mv.edge)
        if isinstance(nxt, Inapplicable):
            return False
        c = nxt
    if not is_accepting(a, c):
        return False
    return isomorphic(interpret_string(trace_symbols(trace)), g)
