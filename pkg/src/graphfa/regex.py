"""Typed regular expressions to automata, Thompson style.

Every fragment has a start and an end state; the glue between fragments
is an identity blank of the right rank, so every transition stays typed.
"""

from __future__ import annotations

from graphfa.automaton import Automaton, Transition, require_valid
from graphfa.errors import TypeMismatchError
from graphfa.graph import RankedAlphabet
from graphfa.symbols import identity_blank
from graphfa.textio import Regex


def regex_type(r: Regex) -> tuple[int, int]:
    """Type of an expression; raises naming the offending subexpression."""
    where = f"line {r.line}, col {r.col}" if r.line else "expression"
    if r.op == "sym":
        return r.symbol.type
    if r.op in ("star", "plus"):
        i, j = regex_type(r.args[0])
        if i != j:
            raise TypeMismatchError(f"{where}: {r} repeats a subexpression of type ({i},{j}); "
                                    f"repetition needs equal ranks")
        return i, j
    types = [regex_type(x) for x in r.args]
    if r.op == "alt":
        if len(set(types)) != 1:
            raise TypeMismatchError(f"{where}: alternatives of {r} have types {types}")
        return types[0]
    for (x, tx), (y, ty) in zip(zip(r.args, types), zip(r.args[1:], types[1:])):
        if tx[1] != ty[0]:
            raise TypeMismatchError(f"{where}: cannot concatenate {x} of type {tx} "
                                    f"with {y} of type {ty}")
    return types[0][0], types[-1][1]


def from_regex(r: Regex, sigma: RankedAlphabet, name: str = "") -> Automaton:
    m, n = regex_type(r)
    states: dict[str, int] = {}
    trans: list[Transition] = []

    def fresh(rank: int) -> str:
        q = f"q{len(states)}"
        states[q] = rank
        return q

    def glue(p: str, q: str):
        trans.append(Transition(p, identity_blank(states[p]), q))

    def build(x: Regex) -> tuple[str, str]:
        if x.op == "sym":
            i, j = x.symbol.type
            s = fresh(i)
            e = fresh(j)
            trans.append(Transition(s, x.symbol, e))
            return s, e
        if x.op == "cat":
            first_s, prev_e = build(x.args[0])
            for y in x.args[1:]:
                s, e = build(y)
                glue(prev_e, s)
                prev_e = e
            return first_s, prev_e
        i, j = regex_type(x)
        s = fresh(i)
        if x.op == "alt":
            ends = []
            for y in x.args:
                ys, ye = build(y)
                glue(s, ys)
                ends.append(ye)
            e = fresh(j)
            for ye in ends:
                glue(ye, e)
            return s, e
        ys, ye = build(x.args[0])
        e = fresh(j)
        glue(s, ys)
        glue(ye, e)
        glue(ye, ys)
        if x.op == "star":
            glue(s, e)
        return s, e

    start, end = build(r)
    a = Automaton(sigma, states, tuple(trans), start, (end,), name)
    require_valid(a)
    return a
