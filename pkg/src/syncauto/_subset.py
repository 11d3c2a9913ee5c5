"""Breadth-first search over the image sets reachable from the full state set.

Internal machinery shared by the reset-word and avoiding-word searches.
The frontier expands letters in ascending index order from a FIFO queue and
the first parent pointer recorded for an image is never replaced, so the
word rebuilt for any image is the lexicographically least among the shortest
words producing it.  Images are raw bitmasks keyed into the visited map.
"""

from __future__ import annotations

from collections import deque
from typing import Callable

from .core import Dfa
from .errors import SizeGuardError

# Parent links: mask -> (previous mask, letter), None at the root.
Parents = dict


def check_guard(dfa: Dfa, max_states: int) -> None:
    if dfa.n > max_states:
        raise SizeGuardError(
            f"subset search guard exceeded: {dfa.n} states with a visited-set keyspace of 2^{dfa.n} "
            f"(limit max_states={max_states})"
        )


def shift_tables(dfa: Dfa) -> list[list[int]]:
    """Per letter, the table q -> bitmask of delta[q][letter]."""
    return [[1 << dfa.delta[q][l] for q in range(dfa.n)] for l in range(dfa.k)]


def image(shift: list[int], mask: int) -> int:
    bits = 0
    while mask:
        low = mask & -mask
        bits |= shift[low.bit_length() - 1]
        mask ^= low
    return bits


def search(dfa: Dfa, accept: Callable[[int], bool]) -> tuple[int | None, Parents]:
    """First image in BFS order satisfying `accept` (None if none exists).

    `accept` is called exactly once per discovered image, starting with the
    full set; stateful predicates may rely on that to harvest every image.
    """
    full = (1 << dfa.n) - 1
    parents: Parents = {full: None}
    if accept(full):
        return full, parents
    shifts = shift_tables(dfa)
    queue = deque([full])
    while queue:
        mask = queue.popleft()
        for l in range(dfa.k):
            child = image(shifts[l], mask)
            if child in parents:
                continue
            parents[child] = (mask, l)
            if accept(child):
                return child, parents
            queue.append(child)
    return None, parents


def word_to(parents: Parents, mask: int) -> tuple[int, ...]:
    """Letters along the recorded shortest path from the full set to `mask`."""
    out = []
    step = parents[mask]
    while step is not None:
        mask, letter = step
        out.append(letter)
        step = parents[mask]
    out.reverse()
    return tuple(out)
