"""GraphViz DOT text for automata and graphs."""

from __future__ import annotations

from graphfa.automaton import Automaton
from graphfa.graph import Graph


def _q(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def automaton_to_dot(a: Automaton) -> str:
    lines = [f"digraph {_q(a.name or 'A')} {{", "  rankdir=LR;",
             "  node [shape=circle];", '  __start [shape=point, label=""];']
    for q, r in a.states.items():
        shape = "doublecircle" if q in a.final_set else "circle"
        lines.append(f"  {_q(q)} [shape={shape}, xlabel={_q(r)}];")
    lines.append(f"  __start -> {_q(a.initial)};")
    for i, t in enumerate(a.transitions, 1):
        lines.append(f"  {_q(t.source)} -> {_q(t.target)} [label={_q(str(t.symbol))}, "
                     f"tooltip={_q(f'δ{i}')}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dot(g: Graph) -> str:
    """Nodes as circles, hyperedges as boxes with numbered tentacles.

    Front nodes are marked with their front positions in the label,
    rear nodes likewise.
    """
    fpos = {v: i for i, v in enumerate(g.front, 1)}
    rpos = {v: i for i, v in enumerate(g.rear, 1)}
    lines = [f"graph {_q(g.name or 'G')} {{", "  node [shape=circle];"]
    for v in g.nodes:
        tags = []
        if v in fpos:
            tags.append(f"f{fpos[v]}")
        if v in rpos:
            tags.append(f"r{rpos[v]}")
        label = f"{v}" + (f" ({','.join(tags)})" if tags else "")
        style = ", style=bold" if tags else ""
        lines.append(f"  {_q('n:' + str(v))} [label={_q(label)}{style}];")
    for e in g.edges:
        eid = _q(f"e:{e.id}")
        lines.append(f"  {eid} [shape=box, label={_q(e.label)}];")
        for k, v in enumerate(e.att, 1):
            lines.append(f"  {eid} -- {_q('n:' + str(v))} [label={_q(k)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
