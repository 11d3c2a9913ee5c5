"""Generators, exhaustive/random enumeration, and aggregate census reports.

Exhaustive mode walks every n-state k-letter transition table exactly once,
in the order of a mixed-radix counter over the row-major table entries (last
entry fastest); that order splits into contiguous index ranges, which is what
lets parallel workers share nothing.  Statistics are collected over the
strongly connected synchronizing survivors, the hypotheses under which the
avoiding-word claims make sense.

Randomness is pinned so reports are reproducible anywhere: `random_dfa`
draws table entries row-major from `random.Random(seed).randrange(n)`
(CPython's Mersenne Twister), and random search mode builds sample i with
seed `seed + i`, keeping sample ranges contiguous for workers.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from random import Random
from typing import Iterator

from .core import (
    MAX_CANONICAL_LETTERS,
    MAX_CANONICAL_STATES,
    Dfa,
    _canonical_flat,
    dfa_to_json,
)
from .errors import SizeGuardError
from .sync import bounds

__all__ = [
    "SearchParams",
    "SearchReport",
    "gen_cerny",
    "random_dfa",
    "enumerate_dfas",
    "run_search",
    "DEFAULT_MAX_TABLES",
    "DEFAULT_WITNESS_LIMIT",
]

DEFAULT_MAX_TABLES = 20_000_000
DEFAULT_WITNESS_LIMIT = 16

_MODES = ("exhaustive", "random")


def gen_cerny(n: int) -> Dfa:
    """The classical extremal two-letter family: letter a cycles all states,
    letter b moves state 0 onto state 1 and fixes the rest."""
    if n < 2:
        raise ValueError(f"the cyclic family needs n >= 2, got {n}")
    rows = tuple(((q + 1) % n, 1 if q == 0 else q) for q in range(n))
    return Dfa(n, 2, rows)


def _random_flat(n: int, k: int, seed: int) -> list[int]:
    rng = Random(seed)
    return [rng.randrange(n) for _ in range(n * k)]


def random_dfa(n: int, k: int, seed: int) -> Dfa:
    """Uniform random transition table; a fixed (n, k, seed) always yields the
    identical automaton (entries drawn row-major from random.Random(seed))."""
    if n < 1 or k < 1:
        raise ValueError(f"need n >= 1 and k >= 1, got n={n} k={k}")
    flat = _random_flat(n, k, seed)
    return _dfa_from_flat(n, k, flat)


def _dfa_from_flat(n: int, k: int, flat: list[int]) -> Dfa:
    return Dfa(n, k, tuple(tuple(flat[q * k : (q + 1) * k]) for q in range(n)))


@dataclass(frozen=True)
class SearchParams:
    """What to enumerate and which guards apply.

    Exhaustive mode covers all n^(n*k) tables and requires that count to fit
    under `max_tables`.  Random mode draws `samples` tables seeded from
    `seed`.  With `dedup` on, exactly one representative per isomorphism
    class is kept (exhaustive: the canonical table itself; random: the first
    sample of each class).  `witness_limit` caps how many violating automata
    a report stores (None = keep all).
    """

    n: int
    k: int
    mode: str = "exhaustive"
    samples: int | None = None
    seed: int | None = None
    dedup: bool = False
    max_tables: int = DEFAULT_MAX_TABLES
    witness_limit: int | None = DEFAULT_WITNESS_LIMIT

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise ValueError(f"need n >= 1 and k >= 1, got n={self.n} k={self.k}")
        if self.mode not in _MODES:
            raise ValueError(f"mode must be one of {_MODES}, got {self.mode!r}")
        if self.mode == "random":
            if self.samples is None or self.samples < 0:
                raise ValueError("random mode needs a nonnegative sample count")
            if self.seed is None:
                object.__setattr__(self, "seed", 0)
        else:
            if self.samples is not None or self.seed is not None:
                raise ValueError("samples/seed only apply to random mode")
        if self.witness_limit is not None and self.witness_limit < 0:
            raise ValueError("witness_limit must be nonnegative or None")

    @property
    def table_count(self) -> int:
        """How many tables a full scan visits (before any dedup filtering)."""
        if self.mode == "random":
            return self.samples
        return self.n ** (self.n * self.k)

    def check_guards(self) -> None:
        if self.mode == "exhaustive" and self.n ** (self.n * self.k) > self.max_tables:
            raise SizeGuardError(
                f"exhaustive enumeration of {self.n}^{self.n * self.k} tables exceeds "
                f"max_tables={self.max_tables}"
            )
        if self.dedup and (self.n > MAX_CANONICAL_STATES or self.k > MAX_CANONICAL_LETTERS):
            raise SizeGuardError(
                f"dedup needs canonicalization, guarded at n<={MAX_CANONICAL_STATES} "
                f"k<={MAX_CANONICAL_LETTERS}; got n={self.n} k={self.k}"
            )


def _flat_at(n: int, length: int, index: int) -> list[int]:
    digits = [0] * length
    for pos in range(length - 1, -1, -1):
        index, digits[pos] = divmod(index, n)
    return digits


def _iter_flat(n: int, k: int, start: int, stop: int) -> Iterator[list[int]]:
    """Row-major tables for counter indices [start, stop).

    Yields one list object mutated in place; consumers must copy anything
    they keep across iterations.
    """
    length = n * k
    digits = _flat_at(n, length, start)
    for _ in range(stop - start):
        yield digits
        pos = length - 1
        while pos >= 0:
            digits[pos] += 1
            if digits[pos] < n:
                break
            digits[pos] = 0
            pos -= 1


def enumerate_dfas(params: SearchParams) -> Iterator[Dfa]:
    """Stream the automata selected by `params`.

    Exhaustive mode yields every table exactly once in counter order; with
    dedup on, only tables equal to their canonical form survive, i.e. one
    representative per isomorphism class.
    """
    params.check_guards()
    n, k = params.n, params.k
    if params.mode == "exhaustive":
        for flat in _iter_flat(n, k, 0, params.table_count):
            if params.dedup and tuple(flat) != _canonical_flat(flat, n, k):
                continue
            yield _dfa_from_flat(n, k, flat)
    else:
        seen: set[tuple[int, ...]] = set()
        for i in range(params.samples):
            flat = _random_flat(n, k, params.seed + i)
            if params.dedup:
                canon = _canonical_flat(flat, n, k)
                if canon in seen:
                    continue
                seen.add(canon)
            yield _dfa_from_flat(n, k, flat)


@dataclass(frozen=True)
class SearchReport:
    """Aggregated census over the enumerated automata.

    Counts form a funnel: `total` enumerated, of those `strongly_connected`,
    of those `synchronizing`; all other statistics cover the automata passing
    both filters.  Maxima break ties toward the lexicographically least
    serialized table, so reports are independent of scan order and worker
    count.
    """

    params: SearchParams
    total: int
    strongly_connected: int
    synchronizing: int
    max_sync_length: int | None
    max_sync_witness: Dfa | None
    max_avoidance_ratio: Fraction | None
    max_avoidance_witness: Dfa | None
    max_avoidance_state: int | None
    lemma3_violations: int
    lemma3_witnesses: tuple[Dfa, ...]
    pin_frankl_bound: int
    pin_frankl_ok: bool

    def to_json_dict(self) -> dict:
        """The stable report schema, ready for json.dumps."""
        p = self.params
        max_sync = None
        worst = None
        if self.max_sync_witness is not None:
            automaton = dfa_to_json(self.max_sync_witness)
            max_sync = {"length": self.max_sync_length, "automaton": automaton}
            worst = {
                "length": self.max_sync_length,
                "bound": self.pin_frankl_bound,
                "automaton": automaton,
            }
        max_avoidance = None
        if self.max_avoidance_witness is not None:
            r = self.max_avoidance_ratio
            max_avoidance = {
                "ratio": f"{r.numerator}/{r.denominator}",
                "automaton": dfa_to_json(self.max_avoidance_witness),
                "state": self.max_avoidance_state,
            }
        return {
            "params": {
                "n": p.n,
                "k": p.k,
                "mode": p.mode,
                "samples": p.samples,
                "seed": p.seed,
                "dedup": p.dedup,
                "max_tables": p.max_tables,
                "witness_limit": p.witness_limit,
            },
            "counts": {
                "total": self.total,
                "strongly_connected": self.strongly_connected,
                "synchronizing": self.synchronizing,
            },
            "max_sync": max_sync,
            "max_avoidance": max_avoidance,
            "lemma3": {
                "violations": self.lemma3_violations,
                "witnesses": [dfa_to_json(w) for w in self.lemma3_witnesses],
            },
            "bound_check": {"pin_frankl_ok": self.pin_frankl_ok, "worst": worst},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


@dataclass
class _Partial:
    """Mergeable per-range census accumulator (all fields order-independent)."""

    total: int = 0
    strongly_connected: int = 0
    synchronizing: int = 0
    violations: int = 0
    # (length, flat) / (worst avoid length, flat, state); flat breaks ties.
    max_sync: tuple[int, tuple[int, ...]] | None = None
    max_avoid: tuple[int, tuple[int, ...], int] | None = None
    # (enumeration index, flat), ascending by index, truncated to the cap.
    witnesses: list[tuple[int, tuple[int, ...]]] = field(default_factory=list)


def _sc_flat(flat: list[int], n: int, k: int, full: int) -> bool:
    if n == 1:
        return True
    seen = 1
    stack = [0]
    while stack:
        base = stack.pop() * k
        for l in range(k):
            t = flat[base + l]
            if not seen >> t & 1:
                seen |= 1 << t
                stack.append(t)
    if seen != full:
        return False
    rev: list[list[int]] = [[] for _ in range(n)]
    i = 0
    for q in range(n):
        for l in range(k):
            rev[flat[i]].append(q)
            i += 1
    seen = 1
    stack = [0]
    while stack:
        for s in rev[stack.pop()]:
            if not seen >> s & 1:
                seen |= 1 << s
                stack.append(s)
    return seen == full


def _analyze_flat(flat: list[int], n: int, k: int, full: int):
    """BFS the image family once; return (shortest reset length or None,
    per-state first level whose image misses the state, None if never)."""
    shifts = [[1 << flat[q * k + l] for q in range(n)] for l in range(k)]
    sync_len = 0 if full & (full - 1) == 0 else None
    levels: list[int | None] = [None] * n
    pending = full
    visited = {full}
    order = [(full, 0)]
    head = 0
    while head < len(order):
        mask, depth = order[head]
        head += 1
        d = depth + 1
        for shift in shifts:
            m = mask
            child = 0
            while m:
                low = m & -m
                child |= shift[low.bit_length() - 1]
                m ^= low
            if child in visited:
                continue
            visited.add(child)
            if sync_len is None and child & (child - 1) == 0:
                sync_len = d
            new = pending & ~child
            if new:
                pending &= child
                while new:
                    low = new & -new
                    levels[low.bit_length() - 1] = d
                    new ^= low
            if sync_len is not None and not pending:
                return sync_len, levels
            order.append((child, d))
    return sync_len, levels


def _lemma_holds(levels: list[int | None], n: int) -> bool:
    if any(v is None or v > n for v in levels):
        return False
    for k in range(1, n):
        if sum(1 for v in levels if v is not None and v <= k) < k:
            return False
    return True


def _scan_range(params: SearchParams, start: int, stop: int) -> _Partial:
    """Census over enumeration indices [start, stop) of the parameter space."""
    n, k = params.n, params.k
    full = (1 << n) - 1
    cap = params.witness_limit
    part = _Partial()
    dedup = params.dedup

    if params.mode == "exhaustive":
        tables = zip(range(start, stop), _iter_flat(n, k, start, stop))
    else:
        seed = params.seed
        tables = ((i, _random_flat(n, k, seed + i)) for i in range(start, stop))

    seen: set[tuple[int, ...]] = set()
    for index, flat in tables:
        if dedup:
            canon = _canonical_flat(flat, n, k)
            if params.mode == "exhaustive":
                if tuple(flat) != canon:
                    continue
            elif canon in seen:
                continue
            else:
                seen.add(canon)
        part.total += 1
        if not _sc_flat(flat, n, k, full):
            continue
        part.strongly_connected += 1
        sync_len, levels = _analyze_flat(flat, n, k, full)
        if sync_len is None:
            continue
        part.synchronizing += 1

        flat_t = tuple(flat)
        cur = part.max_sync
        if cur is None or sync_len > cur[0] or (sync_len == cur[0] and flat_t < cur[1]):
            part.max_sync = (sync_len, flat_t)

        if n >= 2 and all(v is not None for v in levels):
            worst = max(levels)
            cur_a = part.max_avoid
            if cur_a is None or worst > cur_a[0] or (worst == cur_a[0] and flat_t < cur_a[1]):
                part.max_avoid = (worst, flat_t, levels.index(worst))

        if not _lemma_holds(levels, n):
            part.violations += 1
            if cap is None or len(part.witnesses) < cap:
                part.witnesses.append((index, flat_t))
    return part


def _scan_worker(args: tuple[SearchParams, int, int]) -> _Partial:
    return _scan_range(*args)


def _merge(a: _Partial, b: _Partial, cap: int | None) -> _Partial:
    out = _Partial(
        total=a.total + b.total,
        strongly_connected=a.strongly_connected + b.strongly_connected,
        synchronizing=a.synchronizing + b.synchronizing,
        violations=a.violations + b.violations,
    )
    for cand in (a.max_sync, b.max_sync):
        cur = out.max_sync
        if cand is not None and (
            cur is None or cand[0] > cur[0] or (cand[0] == cur[0] and cand[1] < cur[1])
        ):
            out.max_sync = cand
    for cand in (a.max_avoid, b.max_avoid):
        cur = out.max_avoid
        if cand is not None and (
            cur is None or cand[0] > cur[0] or (cand[0] == cur[0] and cand[1] < cur[1])
        ):
            out.max_avoid = cand
    merged = sorted(a.witnesses + b.witnesses)
    out.witnesses = merged if cap is None else merged[:cap]
    return out


def _split(total: int, workers: int) -> list[tuple[int, int]]:
    workers = max(1, min(workers, total)) if total else 1
    step, extra = divmod(total, workers)
    ranges = []
    start = 0
    for w in range(workers):
        stop = start + step + (1 if w < extra else 0)
        ranges.append((start, stop))
        start = stop
    return ranges


def run_search(params: SearchParams, *, workers: int = 1) -> SearchReport:
    """Scan the selected automata and aggregate the census.

    The report is a pure function of `params`: worker count only changes
    wall time, never a byte of the serialized result.  Random mode with
    dedup shares a seen-set and therefore always scans sequentially.
    """
    params.check_guards()
    total = params.table_count
    sequential = workers <= 1 or total <= 1 or (params.mode == "random" and params.dedup)
    if sequential:
        part = _scan_range(params, 0, total)
    else:
        ranges = _split(total, workers)
        if len(ranges) == 1:
            part = _scan_range(params, 0, total)
        else:
            with ProcessPoolExecutor(max_workers=len(ranges)) as pool:
                parts = list(pool.map(_scan_worker, [(params, a, b) for a, b in ranges]))
            part = parts[0]
            for other in parts[1:]:
                part = _merge(part, other, params.witness_limit)
    return _finalize(params, part)


def _finalize(params: SearchParams, part: _Partial) -> SearchReport:
    n, k = params.n, params.k
    bound = bounds(n).pin_frankl
    max_sync_length = max_sync_witness = None
    if part.max_sync is not None:
        max_sync_length = part.max_sync[0]
        max_sync_witness = _dfa_from_flat(n, k, list(part.max_sync[1]))
    ratio = ratio_witness = ratio_state = None
    if part.max_avoid is not None:
        ratio = Fraction(part.max_avoid[0], n)
        ratio_witness = _dfa_from_flat(n, k, list(part.max_avoid[1]))
        ratio_state = part.max_avoid[2]
    return SearchReport(
        params=params,
        total=part.total,
        strongly_connected=part.strongly_connected,
        synchronizing=part.synchronizing,
        max_sync_length=max_sync_length,
        max_sync_witness=max_sync_witness,
        max_avoidance_ratio=ratio,
        max_avoidance_witness=ratio_witness,
        max_avoidance_state=ratio_state,
        lemma3_violations=part.violations,
        lemma3_witnesses=tuple(_dfa_from_flat(n, k, list(flat)) for _, flat in part.witnesses),
        pin_frankl_bound=bound,
        pin_frankl_ok=max_sync_length is None or max_sync_length <= bound,
    )
