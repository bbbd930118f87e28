"""Which edge can a transition read, and what can be read after it.

Port maps are partial maps stored as sorted tuples of pairs.  ``next(δ)``
says which tentacles of the edge read by ``δ`` sit on which front
positions; ``follow(δ)`` collects the same information for every edge a
move sequence starting with ``δ`` may read, relative to the front where
``δ`` started.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from graphfa.automaton import Automaton, Transition
from graphfa.errors import PreconditionError

PortMap = tuple  # sorted ((source, target), ...)


def check_shape(a: Automaton):
    """Blank transitions may only lead into final states without outgoing transitions."""
    for t in a.transitions:
        if t.symbol.is_blank:
            if t.target not in a.final_set or a.out(t.target):
                raise PreconditionError(
                    f"{t} is a blank transition that does not end in a final sink; "
                    f"determinize the automaton first")


def next_of(t: Transition) -> tuple[str, PortMap]:
    s = t.symbol
    if s.is_blank:
        raise PreconditionError(f"{t} reads a blank and has no next edge")
    xi = tuple(sorted((k, i) for i, k in enumerate(s.phi, 1) if k <= s.rank))
    return s.label, xi


def _step(t: Transition, mu: PortMap):
    """What ``t`` emits and propagates under port map ``mu``."""
    s = t.symbol
    xi = []
    mu2 = []
    for i, j in mu:
        k = s.phi[j - 1]
        if k <= s.rank:
            xi.append((k, i))
        if k in s.rho:
            mu2.append((i, s.rho.index(k) + 1))
    return (s.label, tuple(sorted(xi))), tuple(sorted(mu2))


def _propagate(a: Automaton, seeds, emitted: set):
    done = set()
    frontier = deque()
    for item in seeds:
        if item not in done:
            done.add(item)
            frontier.append(item)
    while frontier:
        t, mu = frontier.popleft()
        if t.symbol.is_blank:
            continue
        pair, mu2 = _step(t, mu)
        emitted.add(pair)
        for t2 in a.out(t.target):
            if (t2, mu2) not in done:
                done.add((t2, mu2))
                frontier.append((t2, mu2))


def follow_of(a: Automaton, t0: Transition) -> frozenset:
    check_shape(a)
    nu = tuple((i, i) for i in range(1, a.rank(t0.source) + 1))
    out: set = set()
    _propagate(a, [(t0, nu)], out)
    return frozenset(out)


def format_portmap(xi: PortMap) -> str:
    return "{" + ", ".join(f"{k}↦{i}" for k, i in xi) + "}"


def format_follow(fs) -> str:
    return "{" + ", ".join(f"({lab}, {format_portmap(xi)})" for lab, xi in sorted(fs)) + "}"


@dataclass
class TSResult:
    holds: bool
    orders: dict = field(default_factory=dict)      # state -> transitions, atoms then blanks
    cycle: list | None = None                       # transitions along a ≺ cycle
    cycle_state: str | None = None
    precedes: dict = field(default_factory=dict)    # state -> {(δ, δ')}

    def __bool__(self):
        return self.holds


def _find_cycle(nodes, succ):
    color = {v: 0 for v in nodes}
    parent = {}

    for root in nodes:
        if color[root]:
            continue
        stack = [(root, iter(succ[root]))]
        color[root] = 1
        while stack:
            v, it = stack[-1]
            w = next(it, None)
            if w is None:
                color[v] = 2
                stack.pop()
                continue
            if color[w] == 1:
                cyc = [v]
                while cyc[-1] != w:
                    cyc.append(parent[cyc[-1]])
                cyc.reverse()
                return cyc + [w]
            if color[w] == 0:
                color[w] = 1
                parent[w] = v
                stack.append((w, iter(succ[w])))
    return None


def ts_check(a: Automaton) -> TSResult:
    """Per state, relate ``δ ≺ δ'`` (distinct) when ``next(δ')`` is in ``follow(δ)``
    and topologically sort; ties go to file order."""
    check_shape(a)
    follows = {t: follow_of(a, t) for t in a.transitions if not t.symbol.is_blank}
    res = TSResult(True)
    for q in a.states:
        atoms = [t for t in a.out(q) if not t.symbol.is_blank]
        blanks = [t for t in a.out(q) if t.symbol.is_blank]
        succ = {t: [] for t in atoms}
        rel = set()
        for d in atoms:
            for d2 in atoms:
                if d is not d2 and d != d2 and next_of(d2) in follows[d]:
                    succ[d].append(d2)
                    rel.add((d, d2))
        res.precedes[q] = rel
        indeg = {t: 0 for t in atoms}
        for d, d2 in rel:
            indeg[d2] += 1
        ready = [t for t in atoms if indeg[t] == 0]
        order = []
        while ready:
            ready.sort(key=lambda t: a.index[t])
            t = ready.pop(0)
            order.append(t)
            for t2 in succ[t]:
                indeg[t2] -= 1
                if indeg[t2] == 0:
                    ready.append(t2)
        if len(order) < len(atoms):
            res.holds = False
            if res.cycle is None:
                res.cycle = _find_cycle(atoms, succ)
                res.cycle_state = q
            order += [t for t in atoms if t not in order]
        res.orders[q] = order + blanks
    return res


def deferrable(a: Automaton, t: Transition) -> bool:
    """Can the edge read by ``t`` also be read later, after ``t`` reads another edge?

    Port maps are propagated from the successors of ``t``, seeded with the
    map ``t`` itself leaves behind; ``t`` is deferrable when its own
    ``next`` pair shows up.
    """
    check_shape(a)
    if t.symbol.is_blank:
        raise PreconditionError(f"{t} reads a blank")
    nu = tuple((i, i) for i in range(1, a.rank(t.source) + 1))
    _, mu = _step(t, nu)
    out: set = set()
    _propagate(a, [(t2, mu) for t2 in a.out(t.target)], out)
    return next_of(t) in out


@dataclass
class FECResult:
    passes: bool
    deferrable: list
    offending: list

    def __bool__(self):
        return self.passes


def fec_test(a: Automaton) -> FECResult:
    """Sufficient test: every deferrable ``a[φ|ρ]`` must have ``[ρ] ⊆ [φ]``."""
    check_shape(a)
    defer = [t for t in a.transitions if not t.symbol.is_blank and deferrable(a, t)]
    bad = [t for t in defer if not set(t.symbol.rho) <= set(t.symbol.phi)]
    return FECResult(not bad, defer, bad)


def fec_reason(t: Transition) -> str:
    s = t.symbol
    rho = "{" + ",".join(map(str, sorted(set(s.rho)))) + "}"
    phi = "{" + ",".join(map(str, sorted(set(s.phi)))) + "}"
    return f"{rho} ⊄ {phi}"
