"""Complete deterministic finite automata and the action of words on state sets.

States are the indices 0..n-1 and letters the indices 0..k-1; a transition
table is a tuple of n rows, row q listing the target of each letter.  All
types are immutable after construction and every operation is a pure
function, so values can be shared freely between threads and processes.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from itertools import permutations
from operator import index as _int
from typing import Iterable, Iterator, Sequence

from .errors import ParseError, SizeGuardError

__all__ = [
    "Dfa",
    "StateSet",
    "Word",
    "apply_letter",
    "apply_word",
    "is_strongly_connected",
    "parse_dfa",
    "serialize_dfa",
    "dfa_from_json",
    "dfa_to_json",
    "load_dfa",
    "to_dot",
    "canonical_form",
    "relabel",
    "parse_word",
    "format_word",
]

# Brute-force canonicalization tries all n!*k! relabelings; keep it on a leash.
MAX_CANONICAL_STATES = 8
MAX_CANONICAL_LETTERS = 3


def default_state_names(n: int) -> tuple[str, ...]:
    return tuple(f"q{i}" for i in range(n))


def default_letter_names(k: int) -> tuple[str, ...]:
    if k <= 26:
        return tuple(chr(ord("a") + i) for i in range(k))
    return tuple(f"l{i}" for i in range(k))


@dataclass(frozen=True)
class Dfa:
    """A complete DFA: ``delta[q][l]`` is the state reached from q on letter l.

    Display names are cosmetic; they take no part in equality, hashing or
    serialization.
    """

    n: int
    k: int
    delta: tuple[tuple[int, ...], ...]
    state_names: tuple[str, ...] | None = field(default=None, compare=False)
    letter_names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"need at least one state, got n={self.n}")
        if self.k < 1:
            raise ValueError(f"need at least one letter, got k={self.k}")
        rows = tuple(tuple(_int(t) for t in row) for row in self.delta)
        if len(rows) != self.n:
            raise ValueError(f"expected {self.n} transition rows, got {len(rows)}")
        for q, row in enumerate(rows):
            if len(row) != self.k:
                raise ValueError(f"state {q}: expected {self.k} entries, got {len(row)}")
            for l, target in enumerate(row):
                if not 0 <= target < self.n:
                    raise ValueError(f"delta[{q}][{l}] = {target} is not a state in [0, {self.n})")
        object.__setattr__(self, "delta", rows)
        for attr, count, what in (("state_names", self.n, "state"), ("letter_names", self.k, "letter")):
            names = getattr(self, attr)
            if names is not None:
                names = tuple(str(name) for name in names)
                if len(names) != count:
                    raise ValueError(f"expected {count} {what} names, got {len(names)}")
                object.__setattr__(self, attr, names)

    def step(self, q: int, letter: int) -> int:
        """Target of one transition."""
        return self.delta[q][letter]

    def full_set(self) -> StateSet:
        """The set of all states."""
        return StateSet(self.n, (1 << self.n) - 1)

    def state_name(self, q: int) -> str:
        if not 0 <= q < self.n:
            raise ValueError(f"state {q} out of range [0, {self.n})")
        return self.state_names[q] if self.state_names is not None else f"q{q}"

    def letter_name(self, letter: int) -> str:
        if not 0 <= letter < self.k:
            raise ValueError(f"letter {letter} out of range [0, {self.k})")
        if self.letter_names is not None:
            return self.letter_names[letter]
        return default_letter_names(self.k)[letter]

    def state_index(self, text: str) -> int:
        """Resolve a state given by display name or by decimal index."""
        text = text.strip()
        names = self.state_names or default_state_names(self.n)
        if text in names:
            return names.index(text)
        try:
            q = int(text)
        except ValueError:
            raise ValueError(f"unknown state {text!r}") from None
        if not 0 <= q < self.n:
            raise ValueError(f"state {q} out of range [0, {self.n})")
        return q


@dataclass(frozen=True)
class StateSet:
    """A subset of the states 0..universe-1, stored as a bitmask.

    Iteration is in ascending state order, which keeps everything built on
    top of it deterministic.
    """

    universe: int
    bits: int = 0

    def __post_init__(self):
        if self.universe < 0:
            raise ValueError(f"universe size must be nonnegative, got {self.universe}")
        if not 0 <= self.bits < (1 << self.universe):
            raise ValueError(f"bitmask {self.bits:#x} does not fit a universe of {self.universe}")

    @classmethod
    def of(cls, universe: int, members: Iterable[int]) -> StateSet:
        bits = 0
        for q in members:
            q = _int(q)
            if not 0 <= q < universe:
                raise ValueError(f"state {q} out of range [0, {universe})")
            bits |= 1 << q
        return cls(universe, bits)

    @classmethod
    def full(cls, universe: int) -> StateSet:
        return cls(universe, (1 << universe) - 1)

    def __contains__(self, q: int) -> bool:
        return 0 <= q < self.universe and bool(self.bits >> q & 1)

    def __iter__(self) -> Iterator[int]:
        m = self.bits
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def issubset(self, other: StateSet) -> bool:
        if self.universe != other.universe:
            raise ValueError(f"universe mismatch: {self.universe} vs {other.universe}")
        return self.bits & ~other.bits == 0

    def members(self) -> tuple[int, ...]:
        return tuple(self)

    def __str__(self) -> str:
        return "{" + ",".join(str(q) for q in self) + "}"


@dataclass(frozen=True)
class Word:
    """A finite sequence of letter indices.

    Letter indices carry no alphabet size of their own; they are range
    checked against an automaton at application time.
    """

    letters: tuple[int, ...] = ()

    def __post_init__(self):
        letters = tuple(_int(l) for l in self.letters)
        if any(l < 0 for l in letters):
            raise ValueError(f"negative letter index in {letters}")
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __add__(self, other: Word) -> Word:
        return Word(self.letters + other.letters)


def parse_word(dfa: Dfa, text: str) -> Word:
    """Parse a word over the automaton's letter names ('' is the empty word).

    Single-character alphabets such as the default a, b, c, ... are read one
    character at a time; otherwise the text is split on whitespace.
    """
    names = dfa.letter_names if dfa.letter_names is not None else default_letter_names(dfa.k)
    by_name = {name: i for i, name in enumerate(names)}
    tokens = list(text.strip()) if all(len(name) == 1 for name in names) else text.split()
    letters = []
    for tok in tokens:
        if tok.isspace():
            continue
        if tok not in by_name:
            raise ValueError(f"unknown letter {tok!r} (alphabet: {', '.join(names)})")
        letters.append(by_name[tok])
    return Word(tuple(letters))


def format_word(dfa: Dfa, word: Word) -> str:
    """Render a word with the automaton's letter names."""
    names = dfa.letter_names if dfa.letter_names is not None else default_letter_names(dfa.k)
    pieces = []
    for l in word:
        if not 0 <= l < dfa.k:
            raise ValueError(f"letter {l} out of range [0, {dfa.k})")
        pieces.append(names[l])
    sep = "" if all(len(name) == 1 for name in names) else " "
    return sep.join(pieces)


def apply_letter(dfa: Dfa, s: StateSet, letter: int) -> StateSet:
    """Image of s under one letter: { delta[q][letter] : q in s }."""
    if s.universe != dfa.n:
        raise ValueError(f"state set over universe {s.universe} applied to an automaton with {dfa.n} states")
    if not 0 <= letter < dfa.k:
        raise ValueError(f"letter {letter} out of range [0, {dfa.k})")
    delta = dfa.delta
    bits = 0
    m = s.bits
    while m:
        low = m & -m
        bits |= 1 << delta[low.bit_length() - 1][letter]
        m ^= low
    return StateSet(dfa.n, bits)


def apply_word(dfa: Dfa, s: StateSet, word: Word | str | Sequence[int]) -> StateSet:
    """Image of s under a word: left fold of apply_letter (empty word is identity)."""
    if isinstance(word, str):
        word = parse_word(dfa, word)
    for letter in word:
        s = apply_letter(dfa, s, letter)
    return s


def is_strongly_connected(dfa: Dfa) -> bool:
    """True iff every state reaches every other along transition edges."""
    n, k, delta = dfa.n, dfa.k, dfa.delta
    if n == 1:
        return True
    full = (1 << n) - 1

    seen = 1
    stack = [0]
    while stack:
        row = delta[stack.pop()]
        for l in range(k):
            t = row[l]
            if not seen >> t & 1:
                seen |= 1 << t
                stack.append(t)
    if seen != full:
        return False

    rev: list[list[int]] = [[] for _ in range(n)]
    for q in range(n):
        for l in range(k):
            rev[delta[q][l]].append(q)
    seen = 1
    stack = [0]
    while stack:
        for s in rev[stack.pop()]:
            if not seen >> s & 1:
                seen |= 1 << s
                stack.append(s)
    return seen == full


_TOKEN = re.compile(r"\S+")


def parse_dfa(text: str) -> Dfa:
    """Parse the plain-text table format.

    Lines starting with '#' and blank lines are ignored.  The first
    significant line is the header ``n k``; each of the next n lines lists
    the k targets of one state.
    """
    significant = [
        (lineno, raw)
        for lineno, raw in enumerate(text.splitlines(), start=1)
        if raw.strip() and not raw.lstrip().startswith("#")
    ]
    if not significant:
        raise ParseError("empty input: missing 'n k' header", line=1)

    header_line, header_raw = significant[0]
    tokens = list(_TOKEN.finditer(header_raw))
    if len(tokens) != 2:
        raise ParseError(f"malformed header: expected 'n k', got {len(tokens)} tokens", line=header_line)
    dims = []
    for tok in tokens:
        try:
            dims.append(int(tok.group()))
        except ValueError:
            raise ParseError(
                f"malformed header: {tok.group()!r} is not an integer",
                line=header_line,
                column=tok.start() + 1,
            ) from None
    n, k = dims
    if n < 1 or k < 1:
        raise ParseError(f"malformed header: need n >= 1 and k >= 1, got n={n} k={k}", line=header_line)

    body = significant[1:]
    if len(body) < n:
        raise ParseError(f"expected {n} transition rows, found {len(body)}", line=significant[-1][0])
    if len(body) > n:
        raise ParseError(f"unexpected content after {n} transition rows", line=body[n][0])

    rows = []
    for q, (lineno, raw) in enumerate(body):
        tokens = list(_TOKEN.finditer(raw))
        if len(tokens) != k:
            raise ParseError(f"state {q}: expected {k} entries, got {len(tokens)}", line=lineno)
        row = []
        for tok in tokens:
            try:
                value = int(tok.group())
            except ValueError:
                raise ParseError(
                    f"entry {tok.group()!r} is not an integer", line=lineno, column=tok.start() + 1
                ) from None
            if not 0 <= value < n:
                raise ParseError(
                    f"entry {value} out of range [0, {n})", line=lineno, column=tok.start() + 1
                )
            row.append(value)
        rows.append(tuple(row))
    return Dfa(n, k, tuple(rows))


def serialize_dfa(dfa: Dfa) -> str:
    """Inverse of parse_dfa (display names are not part of the format)."""
    lines = [f"{dfa.n} {dfa.k}"]
    lines.extend(" ".join(str(t) for t in row) for row in dfa.delta)
    return "\n".join(lines) + "\n"


def dfa_to_json(dfa: Dfa) -> dict:
    """The automaton as a plain JSON-ready object: {"n", "k", "delta"}."""
    return {"n": dfa.n, "k": dfa.k, "delta": [list(row) for row in dfa.delta]}


def dfa_from_json(data: object) -> Dfa:
    """Build an automaton from the {"n", "k", "delta"} object, validating shape."""
    if not isinstance(data, dict):
        raise ParseError(f"automaton JSON must be an object, got {type(data).__name__}")
    missing = {"n", "k", "delta"} - data.keys()
    if missing:
        raise ParseError(f"automaton JSON missing keys: {', '.join(sorted(missing))}")
    n, k, delta = data["n"], data["k"], data["delta"]
    if not isinstance(n, int) or not isinstance(k, int):
        raise ParseError("automaton JSON: 'n' and 'k' must be integers")
    if not isinstance(delta, list) or not all(isinstance(row, list) for row in delta):
        raise ParseError("automaton JSON: 'delta' must be a list of rows")
    try:
        return Dfa(n, k, tuple(tuple(row) for row in delta))
    except (TypeError, ValueError) as exc:
        raise ParseError(f"automaton JSON: {exc}") from None


def load_dfa(text: str) -> Dfa:
    """Parse either supported input format, sniffing JSON by a leading '{'."""
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from None
        return dfa_from_json(data)
    return parse_dfa(text)


_DOT_ID = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _dot_id(name: str) -> str:
    if _DOT_ID.match(name):
        return name
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(dfa: Dfa) -> str:
    """GraphViz DOT rendering; parallel edges are merged with comma-joined labels."""
    lines = ["digraph dfa {", "  rankdir=LR;", "  node [shape=circle];"]
    for q in range(dfa.n):
        by_target: dict[int, list[int]] = {}
        for l in range(dfa.k):
            by_target.setdefault(dfa.delta[q][l], []).append(l)
        for target in sorted(by_target):
            label = ",".join(dfa.letter_name(l) for l in by_target[target])
            lines.append(f'  {_dot_id(dfa.state_name(q))} -> {_dot_id(dfa.state_name(target))} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def relabel(dfa: Dfa, state_perm: Sequence[int], letter_perm: Sequence[int] | None = None) -> Dfa:
    """The isomorphic automaton with state q renamed state_perm[q] and letter
    l renamed letter_perm[l]."""
    n, k = dfa.n, dfa.k
    if letter_perm is None:
        letter_perm = tuple(range(k))
    if sorted(state_perm) != list(range(n)):
        raise ValueError(f"state_perm must be a permutation of 0..{n - 1}")
    if sorted(letter_perm) != list(range(k)):
        raise ValueError(f"letter_perm must be a permutation of 0..{k - 1}")
    rows = [[0] * k for _ in range(n)]
    for q in range(n):
        for l in range(k):
            rows[state_perm[q]][letter_perm[l]] = state_perm[dfa.delta[q][l]]
    return Dfa(n, k, tuple(tuple(row) for row in rows))


def _canonical_flat(flat: Sequence[int], n: int, k: int) -> tuple[int, ...]:
    """Lexicographically least row-major table over all joint relabelings."""
    best = None
    for sp in permutations(range(n)):
        for lp in permutations(range(k)):
            cand = [0] * (n * k)
            for q in range(n):
                base = sp[q] * k
                row = q * k
                for l in range(k):
                    cand[base + lp[l]] = sp[flat[row + l]]
            cand_t = tuple(cand)
            if best is None or cand_t < best:
                best = cand_t
    return best


def canonical_form(
    dfa: Dfa,
    *,
    max_states: int = MAX_CANONICAL_STATES,
    max_letters: int = MAX_CANONICAL_LETTERS,
) -> Dfa:
    """Canonical representative of the automaton's isomorphism class.

    Two automata are isomorphic (equal up to jointly renaming states and
    letters) iff their canonical forms are equal.  Brute force over all
    n!*k! relabelings, hence the size guard.
    """
    n, k = dfa.n, dfa.k
    if n > max_states or k > max_letters:
        raise SizeGuardError(
            f"canonicalization guard exceeded: n={n} k={k} vs limits n<={max_states} k<={max_letters}"
        )
    flat = [t for row in dfa.delta for t in row]
    best = _canonical_flat(flat, n, k)
    return Dfa(n, k, tuple(tuple(best[q * k : (q + 1) * k]) for q in range(n)))
