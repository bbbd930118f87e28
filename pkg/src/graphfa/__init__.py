"""Finite automata over typed graph symbols.

Build, determinize and analyze automata whose symbols denote small
hypergraphs, and recognize hypergraphs with them, either by exhaustive
search or, for automata passing the transition-selection and
free-edge-choice tests, in linear time without backtracking.
"""

from graphfa.errors import (
    GraphFAError,
    ParseError,
    PreconditionError,
    ResourceLimitExceeded,
    TypeMismatchError,
)
from graphfa.graph import Edge, Graph, RankedAlphabet, compose, isomorphic, validate_graph
from graphfa.symbols import (
    AtomSymbol,
    BlankSymbol,
    canonicalize,
    compose_symbols,
    decompose,
    erase_rear_form,
    identity_blank,
    interpret,
    interpret_string,
    similar,
)
from graphfa.automaton import (
    Automaton,
    GraphConfiguration,
    Move,
    Transition,
    accepts_string,
    enumerate_accepted,
    equivalent_bounded,
    graph_move,
    is_final_blank_accepting,
    recognize_backtracking,
    validate_automaton,
)
from graphfa.regex import from_regex
from graphfa.determinize import (
    ambiguous_pairs,
    closure,
    disambiguate,
    find_quotient,
    is_deterministic,
    left_compose_state,
    powerset,
)
from graphfa.analysis import deferrable, fec_test, follow_of, next_of, ts_check
from graphfa.recognizer import build_index, recognize_deterministic, try_transition, verify_trace

__version__ = "0.1.0"

__all__ = [
    "GraphFAError", "ParseError", "PreconditionError", "ResourceLimitExceeded",
    "TypeMismatchError", "Edge", "Graph", "RankedAlphabet", "compose", "isomorphic",
    "validate_graph", "AtomSymbol", "BlankSymbol", "canonicalize", "compose_symbols",
    "decompose", "erase_rear_form", "identity_blank", "interpret", "interpret_string",
    "similar", "Automaton", "GraphConfiguration", "Move", "Transition", "accepts_string",
    "enumerate_accepted", "equivalent_bounded", "graph_move", "is_final_blank_accepting",
    "recognize_backtracking", "validate_automaton", "from_regex", "ambiguous_pairs", "closure",
    "disambiguate", "find_quotient", "is_deterministic", "left_compose_state", "powerset",
    "deferrable", "fec_test", "follow_of", "next_of", "ts_check", "build_index",
    "recognize_deterministic", "try_transition", "verify_trace", "__version__",
]
