"""Toolkit for synchronizing automata.

Exact shortest reset words and avoiding words by subset BFS, the classical
reset-length bounds, a mechanical check of the short-avoiding-words claim,
and exhaustive or randomized censuses of small automata.
"""

from .avoid import (
    AvoidanceRecord,
    LemmaVerdict,
    Part2Failure,
    avoidance_profile,
    check_lemma3,
    max_avoidance_ratio,
    shortest_avoiding_word,
)
from .core import (
    Dfa,
    StateSet,
    Word,
    apply_letter,
    apply_word,
    canonical_form,
    dfa_from_json,
    dfa_to_json,
    format_word,
    is_strongly_connected,
    load_dfa,
    parse_dfa,
    parse_word,
    relabel,
    serialize_dfa,
    to_dot,
)
from .errors import AutomataError, ParseError, PreconditionError, SizeGuardError
from .search import (
    SearchParams,
    SearchReport,
    enumerate_dfas,
    gen_cerny,
    random_dfa,
    run_search,
)
from .sync import BoundsTable, SyncResult, bounds, is_synchronizing, shortest_sync_word

__version__ = "0.1.0"

__all__ = [
    "AutomataError",
    "AvoidanceRecord",
    "BoundsTable",
    "Dfa",
    "LemmaVerdict",
    "ParseError",
    "Part2Failure",
    "PreconditionError",
    "SearchParams",
    "SearchReport",
    "SizeGuardError",
    "StateSet",
    "SyncResult",
    "Word",
    "apply_letter",
    "apply_word",
    "avoidance_profile",
    "bounds",
    "canonical_form",
    "check_lemma3",
    "dfa_from_json",
    "dfa_to_json",
    "enumerate_dfas",
    "format_word",
    "gen_cerny",
    "is_strongly_connected",
    "is_synchronizing",
    "load_dfa",
    "max_avoidance_ratio",
    "parse_dfa",
    "parse_word",
    "random_dfa",
    "relabel",
    "run_search",
    "serialize_dfa",
    "shortest_avoiding_word",
    "shortest_sync_word",
    "to_dot",
]
