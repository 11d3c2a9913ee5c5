"""Brute-force oracles and shared fixtures for the test suite.

The oracles fold transition tables over plain Python sets and enumerate all
words in increasing length (lexicographic within a length), so they share no
code with the bitmask BFS they are used to check.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations, product

from syncauto import (
    Dfa,
    StateSet,
    Word,
    apply_letter,
    apply_word,
    avoidance_profile,
    is_strongly_connected,
    is_synchronizing,
    max_avoidance_ratio,
    shortest_avoiding_word,
    shortest_sync_word,
)

# The 4-state binary automaton whose state q0 needs a length-6 avoiding word.
# Rows per state, columns (a, b): a: 0->1, 1->0, 2->2, 3->0; b: 0->0, 1->2, 2->3, 3->1.
CEX_DELTA = ((1, 0), (0, 2), (2, 3), (0, 1))
CEX_TEXT = "4 2\n1 0\n0 2\n2 3\n0 1\n"
CEX_SYNC_WORD = "abbababba"
CEX_AVOID_WORD = "abbaba"


def make_cex() -> Dfa:
    return Dfa(4, 2, CEX_DELTA)


def set_image(dfa: Dfa, states, letters) -> set[int]:
    """Image of a plain set of states under a letter sequence."""
    out = set(states)
    for l in letters:
        out = {dfa.delta[q][l] for q in out}
    return out


def brute_shortest_sync(dfa: Dfa, max_len: int):
    """First (length, word) over all words of length <= max_len whose image is
    a singleton, enumerating lexicographically within each length."""
    full = set(range(dfa.n))
    for m in range(max_len + 1):
        for w in product(range(dfa.k), repeat=m):
            if len(set_image(dfa, full, w)) == 1:
                return m, w
    return None


def brute_shortest_avoid(dfa: Dfa, state: int, max_len: int):
    """First (length, word) whose image misses `state`, same enumeration order."""
    full = set(range(dfa.n))
    for m in range(max_len + 1):
        for w in product(range(dfa.k), repeat=m):
            if state not in set_image(dfa, full, w):
                return m, w
    return None


def find_isomorphism(a: Dfa, b: Dfa):
    """A (state_perm, letter_perm) relabeling a onto b, or None."""
    if (a.n, a.k) != (b.n, b.k):
        return None
    for sp in permutations(range(a.n)):
        for lp in permutations(range(a.k)):
            if all(
                sp[a.delta[q][l]] == b.delta[sp[q]][lp[l]]
                for q in range(a.n)
                for l in range(a.k)
            ):
                return sp, lp
    return None


def orbit_class_count(n: int, k: int) -> int:
    """Number of isomorphism classes by direct orbit computation on all tables."""
    classes = set()
    for flat in product(range(n), repeat=n * k):
        orbit = set()
        for sp in permutations(range(n)):
            for lp in permutations(range(k)):
                cand = [0] * (n * k)
                for q in range(n):
                    for l in range(k):
                        cand[sp[q] * k + lp[l]] = sp[flat[q * k + l]]
                orbit.add(tuple(cand))
        classes.add(min(orbit))
    return len(classes)


def draw_dfa(rng: random.Random, n: int, k: int) -> Dfa:
    return Dfa(n, k, tuple(tuple(rng.randrange(n) for _ in range(k)) for _ in range(n)))


def draw_word(rng: random.Random, k: int, max_len: int = 6) -> Word:
    return Word(tuple(rng.randrange(k) for _ in range(rng.randint(0, max_len))))


# ---------------------------------------------------------------------------
# Randomized property suites, shared between the development property tests
# and the acceptance gate.  Each returns the number of cases actually checked.
# ---------------------------------------------------------------------------


def suite_monoid_action(cases: int = 1000, seed: int = 101) -> int:
    rng = random.Random(seed)
    for _ in range(cases):
        n, k = rng.randint(1, 6), rng.randint(1, 3)
        d = draw_dfa(rng, n, k)
        s = StateSet(n, rng.randrange(1 << n))
        u, v = draw_word(rng, k), draw_word(rng, k)
        assert apply_word(d, s, u + v) == apply_word(d, apply_word(d, s, u), v)
    return cases


def suite_monotonicity(cases: int = 1000, seed: int = 102) -> int:
    rng = random.Random(seed)
    for _ in range(cases):
        n, k = rng.randint(1, 6), rng.randint(1, 3)
        d = draw_dfa(rng, n, k)
        t = StateSet(n, rng.randrange(1 << n))
        s = StateSet(n, t.bits & rng.randrange(1 << n))  # s is a subset of t
        w = draw_word(rng, k)
        assert apply_word(d, s, w).issubset(apply_word(d, t, w))
    return cases


def suite_cardinality(cases: int = 1000, seed: int = 103) -> int:
    rng = random.Random(seed)
    for _ in range(cases):
        n, k = rng.randint(1, 6), rng.randint(1, 3)
        d = draw_dfa(rng, n, k)
        s = StateSet(n, rng.randrange(1 << n))
        assert len(apply_letter(d, s, rng.randrange(k))) <= len(s)
    return cases


def suite_prepend_closure(cases: int = 1000, seed: int = 104) -> int:
    # image of the full set under u.v is contained in its image under v, so
    # any state avoided by v stays avoided under every prefix u
    rng = random.Random(seed)
    for _ in range(cases):
        n, k = rng.randint(1, 6), rng.randint(1, 3)
        d = draw_dfa(rng, n, k)
        full = d.full_set()
        u, v = draw_word(rng, k), draw_word(rng, k)
        assert apply_word(d, full, u + v).issubset(apply_word(d, full, v))
    return cases


def suite_avoid_vs_sync_bound(cases: int = 1000, seed: int = 105) -> int:
    # on strongly connected synchronizing automata every state has an
    # avoiding word, no longer than the shortest reset word plus one letter
    rng = random.Random(seed)
    checked = 0
    while checked < cases:
        n, k = rng.randint(2, 6), rng.randint(1, 3)
        d = draw_dfa(rng, n, k)
        if not (is_strongly_connected(d) and is_synchronizing(d)):
            continue
        sync_len = shortest_sync_word(d).length
        worst = 0
        for record in avoidance_profile(d):
            assert record.length is not None and record.length >= 1
            assert record.state not in apply_word(d, d.full_set(), record.word)
            worst = max(worst, record.length)
        assert worst <= sync_len + 1
        assert max_avoidance_ratio(d) == Fraction(worst, n)
        checked += 1
    return checked


def suite_minimality(cases: int = 1000, seed: int = 106, max_brute_words: int = 20000) -> tuple[int, int]:
    """BFS against brute-force enumeration for both searches at n <= 5.

    Equality of the (length, word) pair also checks the lexicographically
    least contract, since the brute force enumerates words in that order.
    Pathological automata whose enumeration would exceed `max_brute_words`
    words are skipped and do not count.
    """
    rng = random.Random(seed)
    sync_checked = avoid_checked = 0
    while sync_checked < cases or avoid_checked < cases:
        n, k = rng.randint(1, 5), rng.randint(1, 2)
        d = draw_dfa(rng, n, k)
        result = shortest_sync_word(d)
        if sync_checked < cases and result.synchronizing:
            size = sum(k**m for m in range(result.length + 1))
            if size <= max_brute_words:
                assert brute_shortest_sync(d, result.length) == (
                    result.length,
                    tuple(result.word),
                )
                sync_checked += 1
        if avoid_checked < cases:
            record = shortest_avoiding_word(d, rng.randrange(n))
            if record.length is not None:
                size = sum(k**m for m in range(record.length + 1))
                if size <= max_brute_words:
                    assert brute_shortest_avoid(d, record.state, record.length) == (
                        record.length,
                        tuple(record.word),
                    )
                    avoid_checked += 1
    return sync_checked, avoid_checked
