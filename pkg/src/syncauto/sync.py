"""Synchronization: existence test, exact shortest reset word, length bounds."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from . import _subset
from .core import Dfa, Word
from .errors import SizeGuardError

__all__ = [
    "SyncResult",
    "BoundsTable",
    "is_synchronizing",
    "shortest_sync_word",
    "bounds",
    "DEFAULT_MAX_BFS_STATES",
]

# The subset BFS keys its visited map by bitmask, a 2^n space.
DEFAULT_MAX_BFS_STATES = 24


@dataclass(frozen=True)
class SyncResult:
    """Outcome of the shortest-reset-word search.

    `word` is present iff the automaton synchronizes; it is then a
    minimum-length reset word, lexicographically least (in letter-index
    order) among those, and `final_state` is the single state it reaches.
    """

    synchronizing: bool
    word: Word | None = None
    length: int | None = None
    final_state: int | None = None


@dataclass(frozen=True)
class BoundsTable:
    """The classical reset-length bounds for an n-state automaton, exactly.

    `trahtman_claimed` is the n(7n^2+6n-16)/48 value once announced as an
    improvement; its proof did not survive, so it is reported as a claim,
    kept as an exact rational since it need not be an integer.
    """

    n: int
    cerny: int
    pin_frankl: int
    trahtman_claimed: Fraction


def bounds(n: int) -> BoundsTable:
    """Exact values of (n-1)^2, (n^3-n)/6 and n(7n^2+6n-16)/48."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return BoundsTable(
        n=n,
        cerny=(n - 1) ** 2,
        pin_frankl=(n**3 - n) // 6,
        trahtman_claimed=Fraction(n * (7 * n * n + 6 * n - 16), 48),
    )


def is_synchronizing(dfa: Dfa) -> bool:
    """True iff some word maps every state to a single state.

    Uses the pairwise-merge criterion: the automaton synchronizes iff every
    unordered state pair can reach a merged pair in the pair graph, checked
    by one backward BFS from the diagonal in O(n^2 k).
    """
    n, k, delta = dfa.n, dfa.k, dfa.delta
    if n == 1:
        return True

    rev: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for p in range(n):
        for q in range(p, n):
            for l in range(k):
                a, b = delta[p][l], delta[q][l]
                if a > b:
                    a, b = b, a
                rev.setdefault((a, b), []).append((p, q))

    merged = [(q, q) for q in range(n)]
    good = set(merged)
    queue = deque(merged)
    while queue:
        pair = queue.popleft()
        for source in rev.get(pair, ()):
            if source not in good:
                good.add(source)
                queue.append(source)
    return all((p, q) in good for p in range(n) for q in range(p + 1, n))


def shortest_sync_word(dfa: Dfa, *, max_states: int = DEFAULT_MAX_BFS_STATES) -> SyncResult:
    """Minimum-length reset word, or a negative result if none exists.

    Exact BFS from the full set over the reachable image family; raises
    SizeGuardError (distinct from "not synchronizing") past `max_states`.
    """
    _subset.check_guard(dfa, max_states)
    target, parents = _subset.search(dfa, lambda m: m & (m - 1) == 0)
    if target is None:
        return SyncResult(synchronizing=False)
    letters = _subset.word_to(parents, target)
    return SyncResult(
        synchronizing=True,
        word=Word(letters),
        length=len(letters),
        final_state=target.bit_length() - 1,
    )
