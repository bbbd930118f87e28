"""Text formats for graphs, automata, regular expressions and symbols.

All formats share one lexer: ``#`` starts a line comment, whitespace is
insignificant, and names are runs of letters, digits, ``_`` and ``'``.
Errors carry the line and column of the offending token.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from graphfa.errors import ParseError
from graphfa.graph import Graph, RankedAlphabet

TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<arrow>->)
  | (?P<name>[\w']+)
  | (?P<punct>[{}\[\]|(),;:~.*+])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str, source: str | None = None) -> list[Token]:
    out = []
    line, start, pos = 1, 0, 0
    while pos < len(text):
        m = TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - start + 1, source)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            start = m.end()
        elif kind == "name":
            out.append(Token("name", m.group(), line, pos - start + 1))
        elif kind in ("punct", "arrow"):
            out.append(Token(m.group(), m.group(), line, pos - start + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - start + 1))
    return out


class Parser:
    def __init__(self, text: str, source: str | None = None):
        self.toks = tokenize(text, source)
        self.i = 0
        self.source = source

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: Token | None = None) -> ParseError:
        t = tok or self.tok
        return ParseError(msg, t.line, t.col, self.source)

    def at(self, kind: str, text: str | None = None) -> bool:
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def accept(self, kind: str, text: str | None = None) -> Token | None:
        if self.at(kind, text):
            t = self.tok
            self.i += 1
            return t
        return None

    def expect(self, kind: str, text: str | None = None, what: str | None = None) -> Token:
        t = self.accept(kind, text)
        if t is None:
            want = what or repr(text or kind)
            got = repr(self.tok.text) if self.tok.kind != "eof" else "end of input"
            raise self.error(f"expected {want}, got {got}")
        return t

    def keyword(self, word: str) -> Token:
        return self.expect("name", word, what=f"'{word}'")

    def name(self, what: str = "a name") -> Token:
        return self.expect("name", what=what)

    def integer(self, what: str = "an integer") -> int:
        t = self.expect("name", what=what)
        if not t.text.isdigit():
            raise self.error(f"expected {what}, got {t.text!r}", t)
        return int(t.text)

    def names_until(self, stop: str) -> list[Token]:
        out = []
        while self.at("name"):
            out.append(self.accept("name"))
        self.expect(stop)
        return out

    def done(self):
        if not self.at("eof"):
            raise self.error(f"unexpected {self.tok.text!r} after the end of the definition")

    # ranked alphabet: alphabet { a:2 b:1 }
    def alphabet(self) -> RankedAlphabet:
        self.keyword("alphabet")
        self.expect("{")
        entries: dict[str, int] = {}
        while not self.accept("}"):
            t = self.name("a label name")
            self.expect(":")
            r = self.integer("a rank")
            if t.text in entries:
                raise self.error(f"label {t.text!r} declared twice", t)
            entries[t.text] = r
        return RankedAlphabet(entries)

    # symbol literals: a[1,3|1,2,3]  ~4[4]
    def index_list(self, closers: str) -> tuple[int, ...]:
        out = []
        if self.tok.kind in closers:
            return ()
        while True:
            t = self.tok
            v = self.integer("an index")
            if v < 1:
                raise self.error("indices start at 1", t)
            out.append(v)
            if not self.accept(","):
                return tuple(out)

    def symbol(self, sigma: Mapping[str, int] | None):
        from graphfa.symbols import AtomSymbol, BlankSymbol

        start = self.tok
        if self.accept("~"):
            n = self.integer("a node count")
            self.expect("[")
            rho = self.index_list("]")
            self.expect("]")
            try:
                return BlankSymbol(n, rho)
            except ValueError as exc:
                raise self.error(str(exc), start) from None
        t = self.name("a symbol")
        self.expect("[")
        phi = self.index_list("|")
        self.expect("|")
        rho = self.index_list("]")
        self.expect("]")
        if sigma is None or t.text not in sigma:
            raise self.error(f"unknown label {t.text!r}", t)
        try:
            return AtomSymbol(t.text, sigma[t.text], phi, rho)
        except ValueError as exc:
            raise self.error(str(exc), start) from None


def _read(path) -> tuple[str, str]:
    p = Path(path)
    return p.read_text(encoding="utf-8"), str(p)


# graphs

def parse_graph(text: str, source: str | None = None) -> tuple[Graph, RankedAlphabet | None]:
    """Parse a graph file; returns the graph and its alphabet header, if any."""
    p = Parser(text, source)
    sigma = p.alphabet() if p.at("name", "alphabet") else None
    g = _graph_body(p)
    p.done()
    return g, sigma


def _graph_body(p: Parser) -> Graph:
    from graphfa.graph import Edge

    p.keyword("graph")
    name = p.name("a graph name").text if p.at("name") else ""
    p.expect("{")
    nodes: list[str] = []
    front: list[str] | None = None
    rear: list[str] | None = None
    edges: list[Edge] = []
    while not p.accept("}"):
        t = p.expect("name", what="'nodes', 'front', 'rear' or 'edge'")
        if t.text == "nodes":
            nodes += [x.text for x in p.names_until(";")]
        elif t.text in ("front", "rear"):
            seq = [x.text for x in p.names_until(";")]
            if (front if t.text == "front" else rear) is not None:
                raise p.error(f"{t.text} interface given twice", t)
            if t.text == "front":
                front = seq
            else:
                rear = seq
        elif t.text == "edge":
            lab = p.name("an edge label").text
            p.expect("(")
            att = [x.text for x in p.names_until(")")]
            p.expect(";")
            edges.append(Edge(len(edges) + 1, lab, tuple(att)))
        else:
            raise p.error(f"unknown graph clause {t.text!r}", t)
    return Graph(tuple(nodes), tuple(edges), tuple(front or ()), tuple(rear or ()), name)


def load_graph(path) -> tuple[Graph, RankedAlphabet | None]:
    return parse_graph(*_read(path))


def format_graph(g: Graph, sigma: Mapping[str, int] | None = None, name: str | None = None) -> str:
    lines = []
    if sigma is not None:
        lines.append(format_alphabet(sigma))
    lines.append(f"graph {name or g.name or 'G'} {{")
    lines.append("  nodes " + " ".join(map(str, g.nodes)) + " ;")
    lines.append("  front " + " ".join(map(str, g.front)) + " ;")
    lines.append("  rear " + " ".join(map(str, g.rear)) + " ;")
    for e in g.edges:
        lines.append(f"  edge {e.label} ( {' '.join(map(str, e.att))} ) ;")
    lines.append("}")
    return "\n".join(line.replace("  ;", " ;") for line in lines) + "\n"


def format_alphabet(sigma: Mapping[str, int]) -> str:
    return "alphabet { " + " ".join(f"{k}:{v}" for k, v in sigma.items()) + " }"


# symbols and strings

def parse_symbol(text: str, sigma: Mapping[str, int] | None = None):
    p = Parser(text)
    s = p.symbol(sigma)
    p.done()
    return s


def parse_string(text: str, sigma: Mapping[str, int] | None = None) -> list:
    p = Parser(text)
    out = []
    while not p.at("eof"):
        out.append(p.symbol(sigma))
    return out


# automata

def parse_automaton(text: str, source: str | None = None):
    from graphfa.automaton import Automaton, Transition

    p = Parser(text, source)
    sigma = p.alphabet()
    p.keyword("automaton")
    name = p.name("an automaton name").text if p.at("name") else ""
    p.expect("{")
    states: dict[str, int] = {}
    initial = None
    finals: list[str] = []
    trans: list = []
    while not p.accept("}"):
        t = p.name("a state declaration or transition")
        if t.text in ("init", "state", "final") and p.toks[p.i + 1].kind == ":":
            q = p.name("a state name")
            p.expect(":")
            r = p.integer("a state rank")
            p.expect(";")
            if q.text in states:
                raise p.error(f"state {q.text!r} declared twice", q)
            states[q.text] = r
            if t.text == "init":
                if initial is not None:
                    raise p.error("more than one initial state", t)
                initial = q.text
            elif t.text == "final":
                finals.append(q.text)
            continue
        p.expect("->")
        tgt = p.name("a target state")
        p.expect(":")
        sym = p.symbol(sigma)
        p.expect(";")
        for q in (t, tgt):
            if q.text not in states:
                raise p.error(f"undeclared state {q.text!r}", q)
        trans.append(Transition(t.text, sym, tgt.text))
    p.done()
    if initial is None:
        raise p.error("no initial state declared")
    return Automaton(sigma, states, tuple(trans), initial, tuple(finals), name)


def load_automaton(path):
    return parse_automaton(*_read(path))


def format_automaton(a, comments: Mapping[str, str] | None = None) -> str:
    comments = comments if comments is not None else a.comments
    lines = [format_alphabet(a.alphabet), f"automaton {a.name or 'A'} {{"]
    for q, r in a.states.items():
        kind = "init" if q == a.initial else "final" if q in a.finals else "state"
        note = f"  # {comments[q]}" if q in comments else ""
        lines.append(f"  {kind} {q}:{r} ;{note}")
    for t in a.transitions:
        lines.append(f"  {t.source} -> {t.target} : {t.symbol} ;")
    lines.append("}")
    return "\n".join(lines) + "\n"


# typed regular expressions

@dataclass(frozen=True)
class Regex:
    op: str  # "sym", "cat", "alt", "star", "plus"
    args: tuple = ()
    symbol: object = None
    line: int = 0
    col: int = 0

    def __str__(self):
        if self.op == "sym":
            return str(self.symbol)
        if self.op in ("star", "plus"):
            return f"({self.args[0]}){'*' if self.op == 'star' else '+'}"
        sep = " " if self.op == "cat" else " | "
        return "(" + sep.join(map(str, self.args)) + ")"


def parse_regex(text: str, source: str | None = None) -> tuple[Regex, RankedAlphabet, str]:
    """Parse ``alphabet {...}`` followed by an expression, optionally
    wrapped as ``regex <name> { ... }``."""
    p = Parser(text, source)
    sigma = p.alphabet()
    name = ""
    wrapped = False
    if p.at("name", "regex"):
        p.keyword("regex")
        if p.at("name"):
            name = p.name().text
        p.expect("{")
        wrapped = True
    expr = _alt(p, sigma)
    if wrapped:
        p.expect("}")
    p.done()
    return expr, sigma, name


def _alt(p: Parser, sigma) -> Regex:
    start = p.tok
    parts = [_cat(p, sigma)]
    while p.accept("|"):
        parts.append(_cat(p, sigma))
    if len(parts) == 1:
        return parts[0]
    return Regex("alt", tuple(parts), line=start.line, col=start.col)


def _starts_atom(p: Parser) -> bool:
    return p.at("name") or p.at("~") or p.at("(")


def _cat(p: Parser, sigma) -> Regex:
    start = p.tok
    parts = [_postfix(p, sigma)]
    while True:
        if p.accept("."):
            parts.append(_postfix(p, sigma))
        elif _starts_atom(p):
            parts.append(_postfix(p, sigma))
        else:
            break
    if len(parts) == 1:
        return parts[0]
    return Regex("cat", tuple(parts), line=start.line, col=start.col)


def _postfix(p: Parser, sigma) -> Regex:
    start = p.tok
    if p.accept("("):
        r = _alt(p, sigma)
        p.expect(")")
    elif p.at("name") or p.at("~"):
        r = Regex("sym", symbol=p.symbol(sigma), line=start.line, col=start.col)
    else:
        raise p.error("expected a symbol or '('")
    while True:
        if p.accept("*"):
            r = Regex("star", (r,), line=start.line, col=start.col)
        elif p.accept("+"):
            r = Regex("plus", (r,), line=start.line, col=start.col)
        else:
            return r


def load_regex(path):
    return parse_regex(*_read(path))


def sniff_kind(text: str) -> str:
    """'graph', 'automaton' or 'regex', judged by the first keyword after the alphabet."""
    try:
        toks = tokenize(text)
    except ParseError:
        return "unknown"
    i = 0
    if toks and toks[0].text == "alphabet":
        while i < len(toks) and toks[i].kind != "}":
            i += 1
        i += 1
    if i < len(toks) and toks[i].text in ("graph", "automaton", "regex"):
        return toks[i].text
    return "unknown"


def iter_strings(lines: Iterable[str], sigma) -> Iterable[list]:
    for line in lines:
        line = line.split("#", 1)[0].strip()
        if line:
            yield parse_string(line, sigma)
