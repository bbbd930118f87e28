"""Command-line front end.

Exit codes: 0 for success or acceptance, 1 for rejection or a failed
analysis, 2 for unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from graphfa.analysis import check_shape, fec_reason, fec_test, format_follow, follow_of, next_of, ts_check
from graphfa.automaton import (enumerate_accepted, recognize_backtracking, validate_automaton)
from graphfa.determinize import ambiguous_pairs, disambiguate, is_deterministic, powerset
from graphfa.dot import automaton_to_dot, graph_to_dot
from graphfa.errors import GraphFAError, PreconditionError, ResourceLimitExceeded
from graphfa.generate import random_walk_string
from graphfa.graph import validate_graph
from graphfa.recognizer import plan_for, recognize_deterministic
from graphfa.regex import from_regex
from graphfa.symbols import decompose, format_string, interpret_string
from graphfa.textio import (format_automaton, format_graph, load_automaton, load_graph,
                            load_regex, sniff_kind)


class UsageError(GraphFAError):
    pass


def _kind(path: str) -> str:
    return sniff_kind(Path(path).read_text(encoding="utf-8"))


def _write(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_validate(args) -> int:
    kind = _kind(args.input)
    if kind == "graph":
        g, sigma = load_graph(args.input)
        problems = validate_graph(g, sigma)
    elif kind == "automaton":
        problems = validate_automaton(load_automaton(args.input))
    else:
        raise UsageError(f"{args.input}: neither a graph nor an automaton file")
    if problems:
        for p in problems:
            print(f"{args.input}: {p}")
        return 2
    print(f"{args.input}: valid {kind}")
    return 0


def cmd_determinize(args) -> int:
    a = load_automaton(args.input)
    problems = validate_automaton(a)
    if problems:
        raise UsageError("; ".join(problems))
    if args.disambiguate or ambiguous_pairs(a):
        if not args.disambiguate:
            print("# ambiguous input: splitting ambiguous atoms first", file=sys.stderr)
        a = disambiguate(a)
    d = powerset(a)
    summary = f"{len(d.states)} states, {len(d.transitions)} transitions"
    if args.output:
        _write(format_automaton(d), args.output)
        print(summary)
    else:
        sys.stdout.write(format_automaton(d))
        print(f"# {summary}")
    return 0


def analysis_report(a) -> tuple[dict, list[str]]:
    """Key-value facts and human-readable lines for ``analyze``."""
    facts: dict = {"automaton": a.name or "A", "deterministic": is_deterministic(a)}
    lines = [f"automaton: {facts['automaton']}",
             f"deterministic: {'yes' if facts['deterministic'] else 'no'}"]
    try:
        check_shape(a)
    except PreconditionError as exc:
        facts.update(ts="n/a", fec="n/a", ok=False)
        lines.append(f"TS: n/a ({exc})")
        lines.append("FEC test: n/a")
        return facts, lines
    ts = ts_check(a)
    facts["ts"] = ts.holds
    if ts.holds:
        lines.append("TS: holds")
        for q, order in ts.orders.items():
            atoms = [t for t in order if not t.symbol.is_blank]
            if len(atoms) > 1:
                lines.append(f"  order {q}: " + " < ".join(a.label(t) for t in atoms))
                facts[f"order.{q}"] = ",".join(a.label(t) for t in atoms)
    else:
        cyc = " ≺ ".join(a.label(t) for t in ts.cycle)
        lines.append(f"TS: fails in state {ts.cycle_state} (cycle {cyc})")
        facts["ts.cycle"] = cyc
    for t in a.transitions:
        if not t.symbol.is_blank:
            lab, xi = next_of(t)
            lines.append(f"  {a.label(t)} {t}: next=({lab}, {{"
                         + ", ".join(f"{k}↦{i}" for k, i in xi) + "}) follow="
                         + format_follow(follow_of(a, t)))
    fec = fec_test(a)
    defer = [a.label(t) for t in fec.deferrable]
    facts["deferrable"] = ",".join(defer)
    lines.append("deferrable: " + (", ".join(f"{a.label(t)} {t}" for t in fec.deferrable) or "none"))
    facts["fec"] = fec.passes
    if fec.passes:
        lines.append("FEC test: PASS")
    else:
        why = "; ".join(f"{a.label(t)}: {fec_reason(t)}" for t in fec.offending)
        lines.append(f"FEC test: FAIL ({why})")
        facts["fec.offending"] = ",".join(a.label(t) for t in fec.offending)
    facts["ok"] = bool(facts["deterministic"] and ts.holds and fec.passes)
    return facts, lines


def cmd_analyze(args) -> int:
    a = load_automaton(args.input)
    problems = validate_automaton(a)
    if problems:
        raise UsageError("; ".join(problems))
    facts, lines = analysis_report(a)
    if args.machine:
        for k, v in facts.items():
            if isinstance(v, bool):
                v = "true" if v else "false"
            print(f"{k}={v}")
    else:
        print("\n".join(lines))
    return 0 if facts["ok"] else 1


def _write_trace(trace, path: str, jsonl: bool):
    with open(path, "w", encoding="utf-8") as fh:
        for k, mv in enumerate(trace, 1):
            if jsonl:
                fh.write(json.dumps(mv.as_json(k)) + "\n")
            else:
                fh.write(mv.format(k) + "\n")


def cmd_recognize(args) -> int:
    a = load_automaton(args.automaton)
    problems = validate_automaton(a)
    if problems:
        raise UsageError("; ".join(problems))
    graphs = []
    for path in args.graphs:
        g, _ = load_graph(path)
        bad = validate_graph(g, a.alphabet)
        if bad:
            raise UsageError(f"{path}: " + "; ".join(bad))
        graphs.append((path, g))
    orders = None
    if not args.backtrack:
        plan = plan_for(a)
        if not plan.safe and not args.unsafe:
            raise UsageError("deterministic recognition is not safe for this automaton ("
                             + ", ".join(plan.notes)
                             + "); use --backtrack, or --unsafe for an advisory verdict")
        orders = plan.orders
    code = 0
    for path, g in graphs:
        if args.backtrack:
            try:
                res = recognize_backtracking(a, g, budget=args.budget)
            except ResourceLimitExceeded as exc:
                print(f"{path}: gave up ({exc})")
                code = 2
                continue
            ok, trace = res.accepted, res.trace or []
            detail = f"{len(trace)} moves, {res.explored} configurations" if ok else \
                f"{res.explored} configurations explored"
        else:
            res = recognize_deterministic(a, g, orders=orders, unsafe=True)
            ok, trace = res.accepted, res.trace
            detail = f"{res.moves} moves" if ok else f"{res.reason} at step {res.step}"
        print(f"{path}: {'accept' if ok else 'reject'} ({detail})")
        if ok and args.trace:
            _write_trace(trace, args.trace, args.jsonl)
            print("  trace: " + format_string([m.transition.symbol for m in trace]))
        if not ok:
            code = max(code, 1)
    return code


def cmd_decompose(args) -> int:
    g, _ = load_graph(args.input)
    bad = validate_graph(g)
    if bad:
        raise UsageError("; ".join(bad))
    print(format_string(decompose(g)))
    return 0


def cmd_compile(args) -> int:
    expr, sigma, name = load_regex(args.input)
    a = from_regex(expr, sigma, name or Path(args.input).stem)
    _write(format_automaton(a), args.output)
    return 0


def cmd_sample(args) -> int:
    a = load_automaton(args.input)
    problems = validate_automaton(a)
    if problems:
        raise UsageError("; ".join(problems))
    strings = sorted(enumerate_accepted(a, args.max_len), key=lambda w: (len(w), list(map(str, w))))
    rng = random.Random(args.seed)
    extra = []
    for _ in range(args.walks):
        w = random_walk_string(rng, a, args.max_len * 2)
        if w:
            extra.append(tuple(w))
    outdir = Path(args.graphs) if args.graphs else None
    if outdir:
        outdir.mkdir(parents=True, exist_ok=True)
    for k, w in enumerate(strings + extra, 1):
        print(format_string(w))
        if outdir:
            g = interpret_string(w).normalized()
            (outdir / f"sample{k:04d}.graph").write_text(
                format_graph(g, name=f"sample{k:04d}"), encoding="utf-8")
    return 0


def cmd_export_dot(args) -> int:
    kind = _kind(args.input)
    if kind == "graph":
        g, _ = load_graph(args.input)
        _write(graph_to_dot(g), args.output)
    elif kind == "automaton":
        _write(automaton_to_dot(load_automaton(args.input)), args.output)
    else:
        raise UsageError(f"{args.input}: neither a graph nor an automaton file")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="graphfa", description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a graph or automaton file")
    s.add_argument("input")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("determinize", help="powerset construction")
    s.add_argument("input")
    s.add_argument("-o", "--output")
    s.add_argument("--disambiguate", action="store_true",
                   help="split ambiguous atoms first (done anyway when needed)")
    s.set_defaults(func=cmd_determinize)

    s = sub.add_parser("analyze", help="determinism, TS property, deferrable transitions, FEC test")
    s.add_argument("input")
    s.add_argument("--machine", action="store_true", help="key=value output")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("recognize", help="decide membership of graphs")
    s.add_argument("automaton")
    s.add_argument("graphs", nargs="+")
    s.add_argument("--backtrack", action="store_true", help="use the exhaustive recognizer")
    s.add_argument("--unsafe", action="store_true",
                   help="run the deterministic recognizer even if the analysis fails")
    s.add_argument("--trace", help="write the accepting move sequence here")
    s.add_argument("--jsonl", action="store_true", help="write the trace as JSON lines")
    s.add_argument("--budget", type=int, default=200_000,
                   help="configuration budget of the exhaustive recognizer")
    s.set_defaults(func=cmd_recognize)

    s = sub.add_parser("decompose", help="symbol string of a graph")
    s.add_argument("input")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("compile", help="regular expression to automaton")
    s.add_argument("input")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_compile)

    s = sub.add_parser("sample", help="enumerate accepted strings")
    s.add_argument("input")
    s.add_argument("--max-len", type=int, required=True)
    s.add_argument("--graphs", metavar="DIR", help="also write one graph file per string")
    s.add_argument("--walks", type=int, default=0, help="extra random-walk strings (seeded)")
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("export-dot", help="GraphViz DOT for a graph or automaton")
    s.add_argument("input")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_export_dot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphFAError, OSError, ValueError) as exc:
        print(f"graphfa {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
