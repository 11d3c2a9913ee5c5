"""Avoiding words: shortest words whose image misses a given state.

A word w avoids state q when q is outside the image of the full state set
under w.  This module computes per-state shortest avoiding words, whole
profiles, the per-automaton worst avoiding-length/n ratio, and a mechanical
verdict on the two-clause claim that avoiding words are always short (every
state within n letters; for every k < n, at least k states within k
letters).  The claim is false in general, so the verdict is computed, never
assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from . import _subset
from .core import Dfa, Word, is_strongly_connected
from .errors import AutomataError, PreconditionError
from .sync import DEFAULT_MAX_BFS_STATES, is_synchronizing

__all__ = [
    "AvoidanceRecord",
    "Part2Failure",
    "LemmaVerdict",
    "shortest_avoiding_word",
    "avoidance_profile",
    "check_lemma3",
    "max_avoidance_ratio",
]


@dataclass(frozen=True)
class AvoidanceRecord:
    """Shortest word avoiding `state`; word/length are absent when no word does.

    When present the word is minimum length and lexicographically least among
    the minimum-length avoiding words.  Length is always >= 1: the empty
    word's image is the full set.
    """

    state: int
    word: Word | None = None
    length: int | None = None


class Part2Failure(NamedTuple):
    """A threshold k < n with fewer than k states of avoiding length <= k."""

    k: int
    count: int


@dataclass(frozen=True)
class LemmaVerdict:
    """Verdict on both clauses of the short-avoiding-words claim."""

    part1_holds: bool
    part1_violators: tuple[AvoidanceRecord, ...]
    part2_holds: bool
    part2_failures: tuple[Part2Failure, ...]

    @property
    def holds(self) -> bool:
        return self.part1_holds and self.part2_holds


def shortest_avoiding_word(
    dfa: Dfa, state: int, *, max_states: int = DEFAULT_MAX_BFS_STATES
) -> AvoidanceRecord:
    """Shortest word whose image misses `state` (absent if the state is in
    every reachable image, as happens for n = 1)."""
    if not 0 <= state < dfa.n:
        raise ValueError(f"state {state} out of range [0, {dfa.n})")
    _subset.check_guard(dfa, max_states)
    target, parents = _subset.search(dfa, lambda m: not m >> state & 1)
    if target is None:
        return AvoidanceRecord(state)
    letters = _subset.word_to(parents, target)
    return AvoidanceRecord(state, Word(letters), len(letters))


def avoidance_profile(dfa: Dfa, *, max_states: int = DEFAULT_MAX_BFS_STATES) -> list[AvoidanceRecord]:
    """Shortest avoiding word for every state, from one shared traversal.

    The BFS visits images in (length, lexicographic) order, so the first
    image missing a state yields exactly the record a dedicated search for
    that state would return.
    """
    _subset.check_guard(dfa, max_states)
    full = (1 << dfa.n) - 1
    first: dict[int, int] = {}
    pending = full

    def harvest(mask: int) -> bool:
        nonlocal pending
        new = pending & ~mask
        while new:
            low = new & -new
            first[low.bit_length() - 1] = mask
            new ^= low
        pending &= mask
        return pending == 0

    _, parents = _subset.search(dfa, harvest)
    records = []
    for q in range(dfa.n):
        if q in first:
            letters = _subset.word_to(parents, first[q])
            records.append(AvoidanceRecord(q, Word(letters), len(letters)))
        else:
            records.append(AvoidanceRecord(q))
    return records


def _require_hypotheses(dfa: Dfa, what: str) -> None:
    if not is_strongly_connected(dfa):
        raise PreconditionError(f"{what} requires a strongly connected automaton")
    if not is_synchronizing(dfa):
        raise PreconditionError(f"{what} requires a synchronizing automaton")


def check_lemma3(dfa: Dfa, *, max_states: int = DEFAULT_MAX_BFS_STATES) -> LemmaVerdict:
    """Evaluate both clauses of the short-avoiding-words claim.

    The claim is only about strongly connected synchronizing automata, so
    anything else is rejected as a precondition error rather than given a
    meaningless verdict.  Clause 1: every state has an avoiding word of
    length <= n.  Clause 2: for every k < n, at least k states have avoiding
    words of length <= k.
    """
    _require_hypotheses(dfa, "check_lemma3")
    profile = avoidance_profile(dfa, max_states=max_states)
    violators = tuple(r for r in profile if r.length is None or r.length > dfa.n)
    lengths = sorted(r.length for r in profile if r.length is not None)
    failures = []
    for k in range(1, dfa.n):
        count = sum(1 for m in lengths if m <= k)
        if count < k:
            failures.append(Part2Failure(k, count))
    return LemmaVerdict(
        part1_holds=not violators,
        part1_violators=violators,
        part2_holds=not failures,
        part2_failures=tuple(failures),
    )


def max_avoidance_ratio(dfa: Dfa, *, max_states: int = DEFAULT_MAX_BFS_STATES) -> Fraction:
    """Worst avoiding length divided by n, as an exact rational.

    Defined for strongly connected synchronizing automata with n >= 2, where
    every state is guaranteed an avoiding word (append to a reset word one
    letter that moves its final state).
    """
    if dfa.n < 2:
        raise PreconditionError("max_avoidance_ratio requires at least two states")
    _require_hypotheses(dfa, "max_avoidance_ratio")
    profile = avoidance_profile(dfa, max_states=max_states)
    worst = 0
    for record in profile:
        if record.length is None:
            raise AutomataError(
                f"state {record.state} has no avoiding word despite the hypotheses; "
                f"this indicates a bug in the search"
            )
        worst = max(worst, record.length)
    return Fraction(worst, dfa.n)
