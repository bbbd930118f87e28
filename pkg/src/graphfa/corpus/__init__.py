"""Example automata and graphs shipped with the package."""

from importlib.resources import as_file, files


def path(name: str):
    """Filesystem path of a corpus file (valid for the life of the process)."""
    ref = files(__name__) / name
    with as_file(ref) as p:
        return p


def automaton(name: str):
    from graphfa.textio import load_automaton
    return load_automaton(path(name if "." in name else name + ".aut"))


def graph(name: str):
    from graphfa.textio import load_graph
    return load_graph(path(name if "." in name else name + ".graph"))[0]


def names(suffix: str) -> list[str]:
    return sorted(p.name for p in files(__name__).iterdir() if p.name.endswith(suffix))
