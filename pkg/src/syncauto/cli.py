"""Command-line front end: analyze automaton files, generate fixtures, run censuses.

The file argument accepts '-' for standard input, so generated automata can
be piped straight into any analysis command.  Text output mirrors the JSON
scalars (true/false/null) so the two modes never disagree.  Exit codes:
0 success (verdicts are data, not errors), 1 usage or input errors,
2 size guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .avoid import avoidance_profile, check_lemma3, max_avoidance_ratio, shortest_avoiding_word
from .core import Dfa, dfa_to_json, format_word, is_strongly_connected, load_dfa, serialize_dfa, to_dot
from .errors import AutomataError, PreconditionError, SizeGuardError
from .search import DEFAULT_WITNESS_LIMIT, SearchParams, gen_cerny, random_dfa, run_search
from .sync import bounds, is_synchronizing, shortest_sync_word


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; this tool reserves 2 for size guards.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _scalar(value) -> str:
    if value is True:
        return "true"
    if value is False:
        return "false"
    if value is None:
        return "null"
    return str(value)


def _print_pairs(pairs) -> None:
    for key, value in pairs:
        print(f"{key}: {_scalar(value)}")


def _word_fields(dfa: Dfa, word) -> tuple[str | None, list[int] | None]:
    if word is None:
        return None, None
    return format_word(dfa, word), list(word)


def cmd_verify(args) -> int:
    dfa = load_dfa(_read_input(args.file))
    sc = is_strongly_connected(dfa)
    result = shortest_sync_word(dfa)
    table = bounds(dfa.n)
    word_text, _ = _word_fields(dfa, result.word)
    doc = {
        "n": dfa.n,
        "k": dfa.k,
        "strongly_connected": sc,
        "synchronizing": result.synchronizing,
        "sync_length": result.length,
        "sync_word": word_text,
        "bounds": {
            "cerny": table.cerny,
            "pin_frankl": table.pin_frankl,
            "trahtman_claimed": _scalar(table.trahtman_claimed),
        },
        "within_cerny": None if result.length is None else result.length <= table.cerny,
        "within_pin_frankl": None if result.length is None else result.length <= table.pin_frankl,
    }
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        _print_pairs(
            [
                ("states", doc["n"]),
                ("letters", doc["k"]),
                ("strongly_connected", doc["strongly_connected"]),
                ("synchronizing", doc["synchronizing"]),
                ("sync_length", doc["sync_length"]),
                ("sync_word", doc["sync_word"]),
                ("cerny_bound", table.cerny),
                ("pin_frankl_bound", table.pin_frankl),
                ("trahtman_claimed_bound", table.trahtman_claimed),
                ("within_cerny", doc["within_cerny"]),
                ("within_pin_frankl", doc["within_pin_frankl"]),
            ]
        )
    return 0


def cmd_sync_word(args) -> int:
    dfa = load_dfa(_read_input(args.file))
    result = shortest_sync_word(dfa)
    word_text, letters = _word_fields(dfa, result.word)
    doc = {
        "synchronizing": result.synchronizing,
        "length": result.length,
        "word": word_text,
        "letters": letters,
        "final_state": result.final_state,
    }
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        _print_pairs(
            [
                ("synchronizing", doc["synchronizing"]),
                ("length", doc["length"]),
                ("word", doc["word"]),
                ("final_state", None if result.final_state is None else dfa.state_name(result.final_state)),
            ]
        )
    return 0


def _record_doc(dfa: Dfa, record) -> dict:
    word_text, letters = _word_fields(dfa, record.word)
    return {"state": record.state, "length": record.length, "word": word_text, "letters": letters}


def cmd_avoid(args) -> int:
    dfa = load_dfa(_read_input(args.file))
    if args.state is not None:
        record = shortest_avoiding_word(dfa, dfa.state_index(args.state))
        doc = _record_doc(dfa, record)
        if args.json:
            print(json.dumps(doc, indent=2))
        else:
            _print_pairs(
                [
                    ("state", dfa.state_name(record.state)),
                    ("length", record.length),
                    ("word", doc["word"]),
                ]
            )
        return 0
    profile = avoidance_profile(dfa)
    if args.json:
        print(json.dumps({"profile": [_record_doc(dfa, r) for r in profile]}, indent=2))
    else:
        for record in profile:
            name = dfa.state_name(record.state)
            if record.length is None:
                print(f"{name}: no avoiding word")
            else:
                print(f"{name}: length {record.length} word {format_word(dfa, record.word)}")
    return 0


def cmd_lemma3(args) -> int:
    dfa = load_dfa(_read_input(args.file))
    verdict = check_lemma3(dfa)
    profile = avoidance_profile(dfa)
    if args.json:
        doc = {
            "n": dfa.n,
            "holds": verdict.holds,
            "part1_holds": verdict.part1_holds,
            "part1_violators": [_record_doc(dfa, r) for r in verdict.part1_violators],
            "part2_holds": verdict.part2_holds,
            "part2_failures": [{"k": f.k, "count": f.count} for f in verdict.part2_failures],
            "profile": [_record_doc(dfa, r) for r in profile],
        }
        print(json.dumps(doc, indent=2))
        return 0
    _print_pairs(
        [
            ("n", dfa.n),
            ("part1_holds", verdict.part1_holds),
            ("part2_holds", verdict.part2_holds),
            ("lemma3_holds", verdict.holds),
        ]
    )
    for record in verdict.part1_violators:
        name = dfa.state_name(record.state)
        if record.length is None:
            print(f"VIOLATED (part 1): {name} has no avoiding word")
        else:
            print(f"VIOLATED (part 1): {name} requires length {record.length} > n={dfa.n}")
    for failure in verdict.part2_failures:
        print(
            f"VIOLATED (part 2): only {failure.count} states have avoiding length <= {failure.k}, "
            f"need {failure.k}"
        )
    print("profile:")
    for record in profile:
        name = dfa.state_name(record.state)
        if record.length is None:
            print(f"  {name}: no avoiding word")
        else:
            print(f"  {name}: length {record.length} word {format_word(dfa, record.word)}")
    return 0


def cmd_search(args) -> int:
    params = SearchParams(
        n=args.states,
        k=args.letters,
        mode="random" if args.random is not None else "exhaustive",
        samples=args.random,
        seed=args.seed if args.random is not None else None,
        dedup=args.dedup,
        witness_limit=None if args.witness_limit < 0 else args.witness_limit,
    )
    report = run_search(params, workers=args.workers)
    text = report.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if args.json:
        print(text)
    else:
        ratio = report.max_avoidance_ratio
        _print_pairs(
            [
                ("total", report.total),
                ("strongly_connected", report.strongly_connected),
                ("synchronizing", report.synchronizing),
                ("max_sync_length", report.max_sync_length),
                # same p/q rendering as the JSON report schema
                ("max_avoidance_ratio", None if ratio is None else f"{ratio.numerator}/{ratio.denominator}"),
                ("lemma3_violations", report.lemma3_violations),
                ("pin_frankl_ok", report.pin_frankl_ok),
            ]
        )
    return 0


def cmd_gen(args) -> int:
    if args.generator == "cerny":
        dfa = gen_cerny(args.n)
    else:
        dfa = random_dfa(args.n, args.k, args.seed)
    if args.dot:
        print(to_dot(dfa), end="")
    elif args.json:
        print(json.dumps(dfa_to_json(dfa)))
    else:
        print(serialize_dfa(dfa), end="")
    return 0


def _add_json_flag(parser) -> None:
    parser.add_argument("--json", action="store_true", help="emit machine-readable JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="syncauto", description="Analyze synchronizing automata.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="connectivity, synchronization, and bound comparison")
    p.add_argument("file", help="automaton file ('-' for stdin)")
    _add_json_flag(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sync-word", help="shortest synchronizing word")
    p.add_argument("file", help="automaton file ('-' for stdin)")
    _add_json_flag(p)
    p.set_defaults(func=cmd_sync_word)

    p = sub.add_parser("avoid", help="shortest avoiding word(s)")
    p.add_argument("file", help="automaton file ('-' for stdin)")
    p.add_argument("--state", help="state name or index (omit for the full profile)")
    _add_json_flag(p)
    p.set_defaults(func=cmd_avoid)

    p = sub.add_parser("lemma3", help="check both clauses of the avoiding-length claim")
    p.add_argument("file", help="automaton file ('-' for stdin)")
    _add_json_flag(p)
    p.set_defaults(func=cmd_lemma3)

    p = sub.add_parser("search", help="census over enumerated automata")
    p.add_argument("--states", type=int, required=True, metavar="N")
    p.add_argument("--letters", type=int, required=True, metavar="K")
    p.add_argument("--random", type=int, metavar="SAMPLES", help="sample instead of exhausting")
    p.add_argument("--seed", type=int, default=0, help="base seed for --random (default 0)")
    p.add_argument("--dedup", action="store_true", help="one representative per isomorphism class")
    p.add_argument("--workers", type=int, default=1, help="parallel scan processes (default 1)")
    p.add_argument(
        "--witness-limit",
        type=int,
        default=DEFAULT_WITNESS_LIMIT,
        metavar="R",
        help=f"cap stored violating automata (default {DEFAULT_WITNESS_LIMIT}; negative = keep all)",
    )
    p.add_argument("--out", metavar="FILE", help="also write the JSON report to FILE")
    _add_json_flag(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("gen", help="generate an automaton")
    gen_sub = p.add_subparsers(dest="generator", required=True)
    g = gen_sub.add_parser("cerny", help="the cyclic extremal family")
    g.add_argument("--n", type=int, required=True)
    _add_json_flag(g)
    g.add_argument("--dot", action="store_true", help="emit GraphViz DOT")
    g.set_defaults(func=cmd_gen)
    g = gen_sub.add_parser("random", help="uniform random table")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    _add_json_flag(g)
    g.add_argument("--dot", action="store_true", help="emit GraphViz DOT")
    g.set_defaults(func=cmd_gen)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "json", False) and getattr(args, "dot", False):
        print("syncauto: error: --json and --dot are mutually exclusive", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except SizeGuardError as exc:
        print(f"syncauto: {exc}", file=sys.stderr)
        return 2
    except (AutomataError, PreconditionError, ValueError, OSError) as exc:
        print(f"syncauto: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())
