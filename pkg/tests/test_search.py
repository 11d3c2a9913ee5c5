import json
from fractions import Fraction

import pytest

from helpers import make_cex, orbit_class_count
from syncauto import (
    Dfa,
    SearchParams,
    SizeGuardError,
    avoidance_profile,
    canonical_form,
    check_lemma3,
    dfa_from_json,
    enumerate_dfas,
    gen_cerny,
    is_strongly_connected,
    is_synchronizing,
    max_avoidance_ratio,
    random_dfa,
    run_search,
    shortest_sync_word,
)


def census_oracle(params):
    """Recompute a whole census through the public per-automaton operations.

    Uses the pairwise-merge synchronization test (a different algorithm from
    the census BFS) for the funnel, so agreement genuinely cross-validates
    the scan fast path.
    """
    out = {
        "total": 0,
        "strongly_connected": 0,
        "synchronizing": 0,
        "violations": 0,
        "max_sync": None,
        "max_avoid": None,
        "witness_flats": [],
    }
    for d in enumerate_dfas(params):
        out["total"] += 1
        if not is_strongly_connected(d):
            continue
        out["strongly_connected"] += 1
        if not is_synchronizing(d):
            continue
        out["synchronizing"] += 1
        flat = tuple(t for row in d.delta for t in row)
        length = shortest_sync_word(d).length
        cur = out["max_sync"]
        if cur is None or length > cur[0] or (length == cur[0] and flat < cur[1]):
            out["max_sync"] = (length, flat)
        profile = avoidance_profile(d)
        if d.n >= 2 and all(r.length is not None for r in profile):
            worst = max(r.length for r in profile)
            state = next(r.state for r in profile if r.length == worst)
            cur = out["max_avoid"]
            if cur is None or worst > cur[0] or (worst == cur[0] and flat < cur[1]):
                out["max_avoid"] = (worst, flat, state)
        if not check_lemma3(d).holds:
            out["violations"] += 1
            out["witness_flats"].append(flat)
    return out


def flat_of(dfa):
    return tuple(t for row in dfa.delta for t in row)


def assert_report_matches_oracle(report, oracle, n):
    assert report.total == oracle["total"]
    assert report.strongly_connected == oracle["strongly_connected"]
    assert report.synchronizing == oracle["synchronizing"]
    assert report.lemma3_violations == oracle["violations"]
    if oracle["max_sync"] is None:
        assert report.max_sync_length is None and report.max_sync_witness is None
    else:
        assert report.max_sync_length == oracle["max_sync"][0]
        assert flat_of(report.max_sync_witness) == oracle["max_sync"][1]
    if oracle["max_avoid"] is None:
        assert report.max_avoidance_ratio is None
    else:
        worst, flat, state = oracle["max_avoid"]
        assert report.max_avoidance_ratio == Fraction(worst, n)
        assert flat_of(report.max_avoidance_witness) == flat
        assert report.max_avoidance_state == state
    assert [flat_of(w) for w in report.lemma3_witnesses] == oracle["witness_flats"][
        : len(report.lemma3_witnesses)
    ]


class TestGenCerny:
    def test_table(self):
        d = gen_cerny(4)
        # column a cycles, column b sends 0 to 1 and fixes the rest
        assert [row[0] for row in d.delta] == [1, 2, 3, 0]
        assert [row[1] for row in d.delta] == [1, 1, 2, 3]

    def test_strongly_connected_family(self):
        for n in range(2, 9):
            assert is_strongly_connected(gen_cerny(n))

    def test_too_small(self):
        with pytest.raises(ValueError):
            gen_cerny(1)


class TestRandomDfa:
    def test_deterministic(self):
        assert random_dfa(5, 3, 123) == random_dfa(5, 3, 123)

    def test_validity_sweep(self):
        # constructor validation runs on every draw
        for seed in range(1000):
            d = random_dfa(4, 2, seed)
            assert d.n == 4 and d.k == 2

    def test_seed_variation_smoke(self):
        tables = {random_dfa(4, 2, seed).delta for seed in range(10)}
        assert len(tables) > 1

    def test_invalid(self):
        with pytest.raises(ValueError):
            random_dfa(0, 1, 0)


class TestSearchParams:
    def test_validation(self):
        with pytest.raises(ValueError):
            SearchParams(0, 1)
        with pytest.raises(ValueError):
            SearchParams(2, 2, mode="other")
        with pytest.raises(ValueError):
            SearchParams(2, 2, mode="random")  # missing samples
        with pytest.raises(ValueError):
            SearchParams(2, 2, samples=5)  # samples without random mode
        with pytest.raises(ValueError):
            SearchParams(2, 2, witness_limit=-1)

    def test_random_seed_defaults_to_zero(self):
        assert SearchParams(2, 2, mode="random", samples=3).seed == 0

    def test_table_count(self):
        assert SearchParams(2, 2).table_count == 16
        assert SearchParams(4, 2).table_count == 65536
        assert SearchParams(3, 2, mode="random", samples=7).table_count == 7


class TestEnumerate:
    def test_n2_k1_tables_in_counter_order(self):
        tables = [d.delta for d in enumerate_dfas(SearchParams(2, 1))]
        assert tables == [((0,), (0,)), ((0,), (1,)), ((1,), (0,)), ((1,), (1,))]

    def test_counts(self):
        assert sum(1 for _ in enumerate_dfas(SearchParams(3, 2))) == 729
        assert sum(1 for _ in enumerate_dfas(SearchParams(4, 2))) == 65536

    def test_dedup_matches_orbit_count(self):
        for n, k in ((2, 1), (2, 2), (3, 2)):
            expected = orbit_class_count(n, k)
            got = sum(1 for _ in enumerate_dfas(SearchParams(n, k, dedup=True)))
            assert got == expected

    def test_dedup_yields_canonical_representatives(self):
        for d in enumerate_dfas(SearchParams(2, 2, dedup=True)):
            assert canonical_form(d) == d

    def test_exhaustive_guard(self):
        with pytest.raises(SizeGuardError):
            list(enumerate_dfas(SearchParams(6, 2)))

    def test_dedup_guard(self):
        with pytest.raises(SizeGuardError):
            list(enumerate_dfas(SearchParams(2, 4, dedup=True)))

    def test_random_mode_stream(self):
        params = SearchParams(3, 2, mode="random", samples=20, seed=4)
        dfas = list(enumerate_dfas(params))
        assert len(dfas) == 20
        assert dfas[0] == random_dfa(3, 2, 4)
        assert dfas[7] == random_dfa(3, 2, 11)


class TestRunSearch:
    def test_n2_census_cross_validated(self):
        params = SearchParams(2, 2)
        report = run_search(params)
        oracle = census_oracle(params)
        assert_report_matches_oracle(report, oracle, 2)
        assert (report.total, report.strongly_connected, report.synchronizing) == (16, 9, 6)
        assert report.max_sync_length == 1
        assert report.pin_frankl_ok

    def test_n3_census_cross_validated(self):
        params = SearchParams(3, 2, witness_limit=None)
        report = run_search(params)
        oracle = census_oracle(params)
        assert_report_matches_oracle(report, oracle, 3)
        assert (report.total, report.strongly_connected, report.synchronizing) == (729, 296, 240)
        assert report.max_sync_length == 4
        assert canonical_form(report.max_sync_witness) == canonical_form(gen_cerny(3))

    def test_random_census_cross_validated_n5(self):
        params = SearchParams(5, 2, mode="random", samples=150, seed=9, witness_limit=None)
        report = run_search(params)
        oracle = census_oracle(params)
        assert_report_matches_oracle(report, oracle, 5)
        assert report.total == 150

    def test_single_state_space(self):
        report = run_search(SearchParams(1, 1))
        assert (report.total, report.strongly_connected, report.synchronizing) == (1, 1, 1)
        assert report.max_sync_length == 0
        assert report.max_avoidance_ratio is None
        # the sole state is in every image, so the short-avoiding claim fails
        assert report.lemma3_violations == 1

    def test_guard(self):
        with pytest.raises(SizeGuardError):
            run_search(SearchParams(6, 2))


class TestDedupSoundness:
    def test_stats_invariant_under_dedup(self):
        plain = run_search(SearchParams(3, 2))
        dedup = run_search(SearchParams(3, 2, dedup=True))
        assert dedup.total < plain.total
        assert dedup.max_sync_length == plain.max_sync_length
        assert dedup.max_avoidance_ratio == plain.max_avoidance_ratio
        assert dedup.lemma3_violations <= plain.lemma3_violations
        # the tie-break elects the canonical representative either way
        assert dedup.max_sync_witness == plain.max_sync_witness
        assert dedup.max_avoidance_witness == plain.max_avoidance_witness

    def test_random_dedup_drops_repeats(self):
        params = SearchParams(2, 1, mode="random", samples=50, seed=0, dedup=True)
        report = run_search(params)
        assert report.total == orbit_class_count(2, 1) == 3
        assert len(list(enumerate_dfas(params))) == report.total


class TestDeterminism:
    def test_exhaustive_workers(self):
        texts = {w: run_search(SearchParams(3, 2), workers=w).to_json() for w in (1, 2, 8)}
        assert texts[1] == texts[2] == texts[8]

    def test_random_workers(self):
        params = SearchParams(4, 2, mode="random", samples=400, seed=42)
        texts = {w: run_search(params, workers=w).to_json() for w in (1, 2, 8)}
        assert texts[1] == texts[2] == texts[8]

    def test_dedup_workers(self):
        params = SearchParams(3, 2, dedup=True)
        texts = {w: run_search(params, workers=w).to_json() for w in (1, 2, 8)}
        assert texts[1] == texts[2] == texts[8]


class TestWitnessLimit:
    def test_truncation_is_a_prefix(self):
        full = run_search(SearchParams(4, 2, mode="random", samples=3000, seed=11, witness_limit=None))
        capped = run_search(SearchParams(4, 2, mode="random", samples=3000, seed=11, witness_limit=3))
        assert full.lemma3_violations == capped.lemma3_violations
        assert full.lemma3_violations > 3
        assert len(capped.lemma3_witnesses) == 3
        assert capped.lemma3_witnesses == full.lemma3_witnesses[:3]

    def test_zero_keeps_none(self):
        report = run_search(SearchParams(4, 2, mode="random", samples=3000, seed=11, witness_limit=0))
        assert report.lemma3_witnesses == ()
        assert report.lemma3_violations > 0


class TestWitnessReverification:
    def test_all_stored_witnesses_reproduce_their_statistics(self):
        report = run_search(
            SearchParams(4, 2, mode="random", samples=3000, seed=11, witness_limit=None)
        )
        assert report.lemma3_violations >= 1
        assert len(report.lemma3_witnesses) == report.lemma3_violations
        for w in report.lemma3_witnesses:
            assert is_strongly_connected(w)
            assert is_synchronizing(w)
            assert not check_lemma3(w).holds
        assert shortest_sync_word(report.max_sync_witness).length == report.max_sync_length
        assert max_avoidance_ratio(report.max_avoidance_witness) == report.max_avoidance_ratio
        profile = avoidance_profile(report.max_avoidance_witness)
        worst = max(r.length for r in profile)
        assert profile[report.max_avoidance_state].length == worst


class TestReportJson:
    def test_schema_keys_and_round_trip(self):
        report = run_search(SearchParams(3, 2))
        doc = json.loads(report.to_json())
        assert list(doc) == ["params", "counts", "max_sync", "max_avoidance", "lemma3", "bound_check"]
        assert list(doc["counts"]) == ["total", "strongly_connected", "synchronizing"]
        assert doc["params"]["n"] == 3 and doc["params"]["mode"] == "exhaustive"
        assert doc["max_sync"]["length"] == 4
        witness = dfa_from_json(doc["max_sync"]["automaton"])
        assert shortest_sync_word(witness).length == 4
        ratio = doc["max_avoidance"]["ratio"]
        num, den = map(int, ratio.split("/"))
        assert Fraction(num, den) == report.max_avoidance_ratio
        assert doc["bound_check"]["pin_frankl_ok"] is True
        assert doc["bound_check"]["worst"]["length"] == 4
        assert doc["bound_check"]["worst"]["bound"] == 4  # (27 - 3) / 6
        assert doc["lemma3"]["violations"] == 0 and doc["lemma3"]["witnesses"] == []

    def test_random_params_recorded(self):
        report = run_search(SearchParams(3, 2, mode="random", samples=25, seed=77))
        doc = json.loads(report.to_json())
        assert doc["params"]["mode"] == "random"
        assert doc["params"]["samples"] == 25
        assert doc["params"]["seed"] == 77
        assert doc["counts"]["total"] == 25

    def test_empty_survivor_set_serializes_nulls(self):
        report = run_search(SearchParams(2, 2, mode="random", samples=0))
        doc = json.loads(report.to_json())
        assert doc["max_sync"] is None
        assert doc["max_avoidance"] is None
        assert doc["bound_check"]["worst"] is None
        assert doc["bound_check"]["pin_frankl_ok"] is True


class TestCexInEnumeration:
    def test_cex_table_is_enumerated(self):
        assert make_cex() in enumerate_dfas(SearchParams(4, 2))
