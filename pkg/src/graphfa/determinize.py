"""Blank closures, the powerset construction, and ambiguity removal.

Powerset states are sets of ``(blank, state)`` pairs: the pair says that
``state`` is reachable after a (possibly composite) blank.  States that
differ only by a permutation of their front are merged, and the
permutation is pushed into the symbol of the incoming transition.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass

from graphfa.automaton import Automaton, Transition, require_valid
from graphfa.errors import TypeMismatchError
from graphfa.graph import RankedAlphabet
from graphfa.symbols import (AtomSymbol, BlankSymbol, compose_symbols, erase_rear_form,
                             identity_blank, permutation_blanks, symbol_key)

SINK = "Sf"


@dataclass(frozen=True)
class PSPair:
    blank: BlankSymbol
    state: str

    def __str__(self):
        return f"({self.blank}, {self.state})"


@dataclass(frozen=True)
class PSState:
    pairs: frozenset
    rank: int

    @property
    def is_final_sink(self) -> bool:
        return not self.pairs

    def sorted_pairs(self) -> list[PSPair]:
        return sorted(self.pairs, key=lambda p: (p.state, symbol_key(p.blank)))

    def __str__(self):
        return "{" + ", ".join(map(str, self.sorted_pairs())) + "}"


def closure(a: Automaton, q, start: BlankSymbol | None = None) -> frozenset:
    """All ``(β, q')`` with ``q'`` reachable from ``q`` by blank moves composing to ``β``.

    ``q`` may also be an iterable of states, giving the union of closures.
    """
    roots = [q] if isinstance(q, str) else list(q)
    seen: dict = {}
    work = deque()
    for r in roots:
        p = PSPair(identity_blank(a.rank(r)), r)
        if p not in seen:
            seen[p] = None
            work.append(p)
    while work:
        p = work.popleft()
        for t in a.out(p.state):
            if t.symbol.is_blank:
                nxt = PSPair(compose_symbols(p.blank, t.symbol), t.target)
                if nxt not in seen:
                    seen[nxt] = None
                    work.append(nxt)
    return frozenset(seen)


def left_compose_state(beta: BlankSymbol, c) -> frozenset:
    """``βC``: prefix every blank in ``c`` with ``beta``."""
    out = set()
    for p in c:
        if beta.type[1] != p.blank.type[0]:
            raise TypeMismatchError(f"{beta} cannot precede {p.blank}")
        out.add(PSPair(compose_symbols(beta, p.blank), p.state))
    return frozenset(out)


def find_quotient(y, existing, j: int):
    """First existing state ``Y'`` of rank ``j`` and permutation ``β'`` with ``β'Y' = y``."""
    y = frozenset(y)
    want = Counter(p.state for p in y)
    for cand in existing:
        pairs = cand.pairs if isinstance(cand, PSState) else frozenset(cand)
        rank = cand.rank if isinstance(cand, PSState) else j
        if not pairs or rank != j or len(pairs) != len(y):
            continue
        if Counter(p.state for p in pairs) != want:
            continue
        for beta in permutation_blanks(j):
            if left_compose_state(beta, pairs) == y:
                return cand, beta
    return None


def powerset(a: Automaton, name: str | None = None) -> Automaton:
    """The powerset construction, with a FIFO frontier.

    New states are named ``S0, S1, ...`` in creation order; the final sink
    is ``Sf``.  ``comments`` maps each state to its pair set.
    """
    require_valid(a)
    m, n = a.type
    s0 = PSState(closure(a, a.initial), m)
    sink = PSState(frozenset(), n)
    states: list[PSState] = [s0]
    names = {s0: "S0", sink: SINK}
    trans: list[Transition] = []
    seen_trans: set = set()
    finals = a.final_set
    order = {q: i for i, q in enumerate(a.states)}

    def emit(t: Transition):
        if t not in seen_trans:
            seen_trans.add(t)
            trans.append(t)

    frontier = deque([s0])
    while frontier:
        x = frontier.popleft()
        pairs = sorted(x.pairs, key=lambda p: (order[p.state], symbol_key(p.blank)))
        for p in pairs:
            if p.state in finals:
                emit(Transition(names[x], p.blank, SINK))
        psi: dict = {}
        for p in pairs:
            for t in a.out(p.state):
                if t.symbol.is_blank:
                    continue
                sym = compose_symbols(p.blank, t.symbol)
                psi.setdefault(sym, {})[t.target] = None
        for a0, targets in psi.items():
            j = a0.type[1]
            y = closure(a, list(targets))
            hit = find_quotient(y, states, j)
            if hit is not None:
                y_prime, beta = hit
                emit(Transition(names[x], compose_symbols(a0, beta), names[y_prime]))
            else:
                ys = PSState(y, j)
                names[ys] = f"S{len(states)}"
                states.append(ys)
                frontier.append(ys)
                emit(Transition(names[x], a0, names[ys]))
    used = {}
    for t in trans:
        if not t.symbol.is_blank:
            used.setdefault(t.symbol.label, t.symbol.rank)
    state_ranks = {names[s]: s.rank for s in states}
    state_ranks[SINK] = n
    comments = {names[s]: str(s) for s in states}
    comments[SINK] = "{}"
    out = Automaton(RankedAlphabet(used) if used else RankedAlphabet(),
                    state_ranks, tuple(trans), "S0", (SINK,),
                    name if name is not None else (a.name + "_det" if a.name else "det"),
                    comments)
    require_valid(out)
    return out


def is_deterministic(a: Automaton) -> bool:
    seen: dict = {}
    for t in a.transitions:
        k = (t.source, t.symbol)
        if seen.setdefault(k, t.target) != t.target:
            return False
    return True


def ambiguous_pairs(a: Automaton) -> list[tuple[AtomSymbol, AtomSymbol]]:
    atoms = [s for s in a.symbols() if not s.is_blank]
    out = []
    for i, x in enumerate(atoms):
        for y in atoms[i + 1:]:
            if erase_rear_form(x) == erase_rear_form(y):
                out.append((x, y))
    return out


def disambiguate(a: Automaton) -> Automaton:
    """Split every ambiguous atom ``b[φ|ρ]`` into ``b[φ|1..n]`` then ``~n[ρ]``."""
    while True:
        pairs = ambiguous_pairs(a)
        if not pairs:
            return a
        bad = {x for p in pairs for x in p}
        states = dict(a.states)
        trans: list[Transition] = []
        for t in a.transitions:
            s = t.symbol
            if s.is_blank or s not in bad:
                trans.append(t)
                continue
            mid = t.target + "'"
            while mid in states:
                mid += "'"
            states[mid] = s.n
            general = AtomSymbol(s.label, s.rank, s.phi, tuple(range(1, s.n + 1)))
            trans.append(Transition(t.source, general, mid))
            trans.append(Transition(mid, BlankSymbol(s.n, s.rho), t.target))
        a = a.replace(states=states, transitions=tuple(trans), comments={})
        require_valid(a)
