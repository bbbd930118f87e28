import json
import subprocess
import sys

import pytest

from graphfa import corpus
from graphfa.cli import main
from graphfa.determinize import powerset
from graphfa.textio import load_automaton, load_graph, parse_string
from oracles import automata_isomorphic


def P(name):
    return str(corpus.path(name))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_recognize_with_trace(capsys, tmp_path):
    t = tmp_path / "t.txt"
    code, out, _ = run(capsys, "recognize", P("stars_det.aut"), P("star.graph"), "--trace", str(t))
    assert code == 0
    assert "trace: a[1|1] a[1|1] b[1|2] ~1[1]" in out
    lines = t.read_text().splitlines()
    assert len(lines) == 4 and lines[0].startswith("step 1: S0 --a[1|1]--> S1 edge=")


def test_recognize_jsonl(capsys, tmp_path):
    t = tmp_path / "t.jsonl"
    code, _, _ = run(capsys, "recognize", P("stars_det.aut"), P("star.graph"), "--trace", str(t),
                     "--jsonl")
    assert code == 0
    recs = [json.loads(x) for x in t.read_text().splitlines()]
    assert [r["symbol"] for r in recs] == ["a[1|1]", "a[1|1]", "b[1|2]", "~1[1]"]
    assert recs[-1]["edge"] is None


def test_recognize_reject(capsys, tmp_path):
    g = tmp_path / "lonely.graph"
    g.write_text("graph g { nodes c y ; front c ; rear y ; edge b ( c y ) ; }\n")
    code, out, _ = run(capsys, "recognize", P("stars_det.aut"), str(g))
    assert code == 1 and "reject" in out


def test_recognize_unsafe_needs_flag(capsys):
    code, _, err = run(capsys, "recognize", P("fec.aut"), P("fec_left.graph"))
    assert code == 2 and "FEC" in err
    code, out, _ = run(capsys, "recognize", P("fec.aut"), P("fec_left.graph"), "--backtrack")
    assert code == 0 and "accept" in out
    code, _, _ = run(capsys, "recognize", P("fec.aut"), P("fec_left.graph"), "--unsafe")
    assert code in (0, 1)


def test_recognize_many_graphs(capsys):
    code, out, _ = run(capsys, "recognize", P("stars.aut"), P("star.graph"), P("star.graph"),
                       "--backtrack")
    assert code == 0 and out.count("accept") == 2


def test_analyze_fec(capsys):
    code, out, _ = run(capsys, "analyze", P("fec.aut"))
    assert code != 0
    assert "FEC test: FAIL (δ1: {1,2} ⊄ {1})" in out


def test_analyze_stars(capsys):
    code, out, _ = run(capsys, "analyze", P("stars_det.aut"))
    assert code == 0
    assert "deterministic: yes" in out and "TS: holds" in out and "FEC test: PASS" in out
    assert "order S1: δ2 < δ3" in out


def test_analyze_machine(capsys):
    code, out, _ = run(capsys, "analyze", P("stars_det.aut"), "--machine")
    facts = dict(line.split("=", 1) for line in out.splitlines())
    assert facts["ok"] == "true" and facts["fec"] == "true" and facts["order.S1"] == "δ2,δ3"


def test_analyze_raw_automaton(capsys):
    code, out, _ = run(capsys, "analyze", P("ambiguous.aut"))
    assert code == 1 and "n/a" in out


def test_determinize_counts(capsys, tmp_path):
    out_file = tmp_path / "s.aut"
    code, out, _ = run(capsys, "determinize", P("stars.aut"), "-o", str(out_file))
    assert code == 0 and out.strip() == "4 states, 4 transitions"
    assert automata_isomorphic(load_automaton(out_file), corpus.automaton("stars_det.aut"))


def test_determinize_to_stdout(capsys):
    code, out, _ = run(capsys, "determinize", P("stars.aut"))
    assert code == 0 and out.rstrip().endswith("# 4 states, 4 transitions")


def test_determinize_ambiguous(capsys, tmp_path):
    out_file = tmp_path / "bd.aut"
    code, out, err = run(capsys, "determinize", P("ambiguous.aut"), "-o", str(out_file))
    assert code == 0 and out.strip() == "4 states, 4 transitions" and "ambiguous" in err


@pytest.mark.parametrize("name", corpus.names(".aut"))
def test_determinize_idempotent(capsys, tmp_path, name):
    once, twice = tmp_path / "1.aut", tmp_path / "2.aut"
    assert run(capsys, "determinize", P(name), "-o", str(once))[0] == 0
    assert run(capsys, "determinize", str(once), "-o", str(twice))[0] == 0
    a1, a2 = load_automaton(once), load_automaton(twice)
    assert automata_isomorphic(a1, a2)
    assert a1 == powerset(a1) or automata_isomorphic(a1, powerset(a1))


def test_validate(capsys, tmp_path):
    assert run(capsys, "validate", P("star.graph"))[0] == 0
    assert run(capsys, "validate", P("stars.aut"))[0] == 0
    bad = tmp_path / "bad.graph"
    bad.write_text("alphabet { a:2 }\ngraph g { nodes w ; edge a ( w w ) ; }\n")
    code, out, _ = run(capsys, "validate", str(bad))
    assert code == 2 and "repetition" in out


def test_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.aut"
    bad.write_text("alphabet { a:2 }\nautomaton A {\n init p:1 ;\n p -> q : a[1|1] ;\n}\n")
    code, _, err = run(capsys, "recognize", str(bad), P("star.graph"))
    assert code == 2 and "bad.aut:4:" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "decompose", "/nonexistent.graph")
    assert code == 2 and err


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", P("star.graph"))
    assert code == 0 and out.strip() == "b[1|1,2] a[1,3|1,2,3] a[1,3,4|1,2,3,4] ~4[4]"


def test_compile(capsys, tmp_path):
    out_file = tmp_path / "r.aut"
    assert run(capsys, "compile", P("stars.regex"), "-o", str(out_file))[0] == 0
    a = load_automaton(out_file)
    assert a.name == "stars"


def test_sample(capsys, tmp_path):
    code, out, _ = run(capsys, "sample", P("stars.aut"), "--max-len", "3", "--graphs",
                       str(tmp_path))
    assert code == 0
    assert out.splitlines() == ["a[1|1] b[1|2]", "a[1|1] a[1|1] b[1|2]"]
    files = sorted(tmp_path.glob("*.graph"))
    assert len(files) == 2
    g, _ = load_graph(files[1])
    assert len(g.edges) == 3


def test_sample_seeded_walks(capsys):
    a = run(capsys, "--seed", "3", "sample", P("stars.aut"), "--max-len", "2", "--walks", "5")[1]
    b = run(capsys, "--seed", "3", "sample", P("stars.aut"), "--max-len", "2", "--walks", "5")[1]
    assert a == b
    sigma = corpus.automaton("stars.aut").alphabet
    assert all(parse_string(line, sigma) for line in a.splitlines())


def test_export_dot(capsys):
    code, out, _ = run(capsys, "export-dot", P("stars_det.aut"))
    assert code == 0 and out.startswith("digraph") and "doublecircle" in out and "a[1|1]" in out
    code, out, _ = run(capsys, "export-dot", P("star.graph"))
    assert code == 0 and out.startswith("graph") and "shape=box" in out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "graphfa", "determinize", P("stars.aut"), "-o",
                        "/dev/null"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "4 states, 4 transitions"
