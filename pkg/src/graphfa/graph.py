"""Hypergraphs with front and rear interfaces.

A graph carries labeled hyperedges, each attached to a repetition-free
sequence of nodes, plus two repetition-free node sequences, the front and
the rear interface.  Graphs are immutable values; node and edge
identifiers live in separate namespaces and may be ints or strings.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Mapping, Sequence

from graphfa.errors import TypeMismatchError

NAME_RE = re.compile(r"^[\w']+$")


def id_key(x):
    """Sort key putting ints (numerically) before strings."""
    if isinstance(x, int):
        return (0, x, "")
    return (1, 0, str(x))


class RankedAlphabet(Mapping):
    """Edge labels with their ranks."""

    def __init__(self, entries: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        data = dict(entries)
        for name, rank in data.items():
            if not isinstance(name, str) or not NAME_RE.match(name):
                raise ValueError(f"invalid label name {name!r}")
            if not isinstance(rank, int) or rank < 0:
                raise ValueError(f"label {name!r} needs a non-negative integer rank, got {rank!r}")
        self._data = data

    def __getitem__(self, name):
        return self._data[name]

    def __iter__(self):
        return iter(self._data)

    def __len__(self):
        return len(self._data)

    def __eq__(self, other):
        if isinstance(other, RankedAlphabet):
            return self._data == other._data
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._data.items()))

    def __repr__(self):
        body = " ".join(f"{k}:{v}" for k, v in self._data.items())
        return f"RankedAlphabet({{{body}}})"

    def union(self, other: Mapping[str, int]) -> RankedAlphabet:
        merged = dict(self._data)
        for k, v in other.items():
            if k in merged and merged[k] != v:
                raise ValueError(f"label {k!r} has rank {merged[k]} and {v}")
            merged[k] = v
        return RankedAlphabet(merged)


@dataclass(frozen=True)
class Edge:
    id: Hashable
    label: str
    att: tuple


@dataclass(frozen=True)
class Graph:
    nodes: tuple
    edges: tuple[Edge, ...] = ()
    front: tuple = ()
    rear: tuple = ()
    name: str = field(default="", compare=False)

    @classmethod
    def build(cls, nodes: Iterable, edges: Iterable[tuple[str, Sequence]] = (),
              front: Iterable = (), rear: Iterable = (), name: str = "") -> Graph:
        """Make a graph from ``(label, attachment)`` pairs, numbering edges from 1."""
        es = tuple(Edge(i, lab, tuple(att)) for i, (lab, att) in enumerate(edges, 1))
        return cls(tuple(nodes), es, tuple(front), tuple(rear), name)

    @property
    def type(self) -> tuple[int, int]:
        return len(self.front), len(self.rear)

    @cached_property
    def edge_map(self) -> dict:
        return {e.id: e for e in self.edges}

    @cached_property
    def degree(self) -> Counter:
        deg = Counter()
        for e in self.edges:
            deg.update(e.att)
        return deg

    def edge(self, eid) -> Edge:
        return self.edge_map[eid]

    def isolated_nodes(self) -> list:
        deg = self.degree
        return [v for v in self.nodes if deg[v] == 0]

    def label_counts(self) -> Counter:
        return Counter(e.label for e in self.edges)

    def alphabet(self) -> RankedAlphabet:
        """The ranked alphabet implied by the edges (first occurrence wins)."""
        ranks = {}
        for e in self.edges:
            ranks.setdefault(e.label, len(e.att))
        return RankedAlphabet(ranks)

    def relabeled(self, node_fn=None, edge_fn=None) -> Graph:
        nf = node_fn or (lambda v: v)
        ef = edge_fn or (lambda e: e)
        return Graph(
            tuple(nf(v) for v in self.nodes),
            tuple(Edge(ef(e.id), e.label, tuple(nf(v) for v in e.att)) for e in self.edges),
            tuple(nf(v) for v in self.front),
            tuple(nf(v) for v in self.rear),
            self.name,
        )

    def normalized(self) -> Graph:
        """String node ids, edges renumbered 1.. in their current order."""
        g = self.relabeled(node_fn=str)
        es = tuple(Edge(i, e.label, e.att) for i, e in enumerate(g.edges, 1))
        return Graph(g.nodes, es, g.front, g.rear, self.name)

    def __str__(self):
        es = ", ".join(f"{e.label}({' '.join(map(str, e.att))})" for e in self.edges)
        f = " ".join(map(str, self.front))
        r = " ".join(map(str, self.rear))
        return f"<{es} | front {f} | rear {r}>"


def empty_graph() -> Graph:
    return Graph(())


def _repeats(seq) -> list:
    seen, dup = set(), []
    for x in seq:
        if x in seen and x not in dup:
            dup.append(x)
        seen.add(x)
    return dup


def validate_graph(g: Graph, sigma: Mapping[str, int] | None = None) -> list[str]:
    """Every violated well-formedness condition of ``g``; empty means valid.

    Without ``sigma`` the alphabet is taken from the edges themselves, so
    only inconsistent arities are reported for labels.
    """
    out = []
    node_set = set(g.nodes)
    for v in _repeats(g.nodes):
        out.append(f"duplicate node identifier {v!r}")
    for eid in _repeats([e.id for e in g.edges]):
        out.append(f"duplicate edge identifier {eid!r}")
    implied = {}
    for e in g.edges:
        if sigma is not None:
            if e.label not in sigma:
                out.append(f"edge {e.id!r}: unknown label {e.label!r}")
            elif sigma[e.label] != len(e.att):
                out.append(f"edge {e.id!r}: rank mismatch, label {e.label!r} has rank "
                           f"{sigma[e.label]} but {len(e.att)} attached nodes")
        else:
            r = implied.setdefault(e.label, len(e.att))
            if r != len(e.att):
                out.append(f"edge {e.id!r}: rank mismatch, label {e.label!r} used with "
                           f"{r} and {len(e.att)} attached nodes")
        for v in _repeats(e.att):
            out.append(f"edge {e.id!r}: repetition in attachment (node {v!r})")
        for v in e.att:
            if v not in node_set:
                out.append(f"edge {e.id!r}: dangling attachment to unknown node {v!r}")
    for which, seq in (("front", g.front), ("rear", g.rear)):
        for v in _repeats(seq):
            out.append(f"repetition in {which} interface (node {v!r})")
        for v in seq:
            if v not in node_set:
                out.append(f"{which} interface names unknown node {v!r}")
    return out


def compose(g: Graph, h: Graph) -> Graph:
    """Glue the rear of ``g`` onto the front of ``h``.

    The result is numbered afresh: nodes of ``g`` become 1..|V_g| in order,
    the nodes of ``h`` outside its front follow; edges likewise.
    """
    if len(g.rear) != len(h.front):
        raise TypeMismatchError(
            f"cannot compose: rear of left operand has {len(g.rear)} nodes, "
            f"front of right operand has {len(h.front)}")
    gmap = {v: i for i, v in enumerate(g.nodes, 1)}
    hmap = {v: gmap[r] for v, r in zip(h.front, g.rear)}
    nxt = len(g.nodes) + 1
    extra = []
    for v in h.nodes:
        if v not in hmap:
            hmap[v] = nxt
            extra.append(nxt)
            nxt += 1
    edges = [Edge(i, e.label, tuple(gmap[v] for v in e.att)) for i, e in enumerate(g.edges, 1)]
    base = len(edges)
    edges += [Edge(base + i, e.label, tuple(hmap[v] for v in e.att)) for i, e in enumerate(h.edges, 1)]
    return Graph(
        tuple(range(1, len(g.nodes) + 1)) + tuple(extra),
        tuple(edges),
        tuple(gmap[v] for v in g.front),
        tuple(hmap[v] for v in h.rear),
    )


def _signatures(g: Graph) -> dict:
    sig = {v: [] for v in g.nodes}
    for e in g.edges:
        for k, v in enumerate(e.att, 1):
            sig[v].append((e.label, k))
    return {v: tuple(sorted(s)) for v, s in sig.items()}


def _edge_order(g: Graph) -> list[Edge]:
    # Edges touching already-fixed nodes first, so candidates are pinned early.
    covered = set(g.front) | set(g.rear)
    remaining = list(g.edges)
    order = []
    while remaining:
        best = max(range(len(remaining)),
                   key=lambda i: (sum(v in covered for v in remaining[i].att), -i))
        e = remaining.pop(best)
        order.append(e)
        covered.update(e.att)
    return order


def isomorphic(g: Graph, h: Graph, witness: bool = False):
    """Decide ``g`` ≅ ``h`` (interfaces preserved position by position).

    With ``witness=True`` returns ``(flag, (node_map, edge_map))``; the maps
    are ``None`` when the graphs are not isomorphic.
    """
    def result(ok, maps=None):
        return (ok, maps) if witness else ok

    if (g.type != h.type or len(g.nodes) != len(h.nodes) or len(g.edges) != len(h.edges)
            or g.label_counts() != h.label_counts()):
        return result(False)
    sg, sh = _signatures(g), _signatures(h)
    if Counter(sg.values()) != Counter(sh.values()):
        return result(False)

    nmap: dict = {}
    used: set = set()

    def bind(a, b, trail):
        if a in nmap:
            return nmap[a] == b
        if b in used or sg[a] != sh[b]:
            return False
        nmap[a] = b
        used.add(b)
        trail.append(a)
        return True

    def undo(trail):
        for a in trail:
            used.discard(nmap.pop(a))

    trail0: list = []
    for a, b in list(zip(g.front, h.front)) + list(zip(g.rear, h.rear)):
        if not bind(a, b, trail0):
            return result(False)

    order = _edge_order(g)
    by_label: dict = {}
    for f in h.edges:
        by_label.setdefault(f.label, []).append(f)
    emap: dict = {}
    used_edges: set = set()

    def search(i):
        if i == len(order):
            return True
        e = order[i]
        for f in by_label[e.label]:
            if f.id in used_edges:
                continue
            trail: list = []
            if all(bind(a, b, trail) for a, b in zip(e.att, f.att)):
                emap[e.id] = f.id
                used_edges.add(f.id)
                if search(i + 1):
                    return True
                used_edges.discard(f.id)
                del emap[e.id]
            undo(trail)
        return False

    if not search(0):
        return result(False)
    if not witness:
        return True
    # Whatever is left unmapped is isolated on both sides.
    rest_h = [v for v in h.nodes if v not in used]
    rest_g = [v for v in g.nodes if v not in nmap]
    for a, b in zip(rest_g, rest_h):
        nmap[a] = b
    return True, (dict(nmap), dict(emap))
