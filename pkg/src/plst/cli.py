"""Command-line front end.

Subcommands: build (text file -> index file), query (decide/locate a
pattern against an index), stats (report index statistics), gen (write a
corpus text), experiment (write a table as CSV).  Exit codes: 0 success
(query: matched), 1 query did not match, 2 any error.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import __version__
from .corpus import (
    MODES,
    closure_blowup_chars,
    fibonacci,
    period_doubling,
    random_chars,
    thue_morse,
)
from .experiments import (
    FIBONACCI_MAX_N,
    HOMOMORPHIC_MAX_N,
    RANDOM_LENGTHS,
    TABLES,
    closure_rows,
    fibonacci_rows,
    period_doubling_rows,
    random_rows,
    thue_morse_rows,
    write_closure_csv,
    write_node_csv,
)
from .index import build_plst
from .match import PatternError, decide, locate
from .pstr import SENTINEL_CHAR, Alphabet
from .serialize import IndexFormatError, load_index, save_index
from .suffixtrie import DEFAULT_NODE_BUDGET, NodeBudgetExceeded, TextError

EXIT_OK = 0
EXIT_NO_MATCH = 1
EXIT_ERROR = 2


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_ERROR


def _read_text_file(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if text.endswith("\n"):
        text = text[:-1]
    return text


def _print_stats(st) -> None:
    print(f"n {st.n}")
    print(f"type1 {st.type1}")
    print(f"type2 {st.type2}")
    print(f"bad {st.bad}")
    print(f"ref_text_len {st.ref_text_len}")
    print(f"edges {st.edges}")
    print(f"single_edges {st.single_edges}")


def cmd_build(args) -> int:
    try:
        text = _read_text_file(args.text)
    except OSError as exc:
        return _fail(str(exc))
    if SENTINEL_CHAR in text[:-1]:
        return _fail(f"sentinel {SENTINEL_CHAR!r} occurs before the end of the text")
    if not text.endswith(SENTINEL_CHAR):
        text += SENTINEL_CHAR
        print(f"note: sentinel {SENTINEL_CHAR!r} appended to the text")
    if SENTINEL_CHAR in args.params:
        return _fail(f"sentinel {SENTINEL_CHAR!r} cannot be a parameter")
    alphabet = Alphabet.from_text(text, args.params)
    t0 = time.perf_counter()
    try:
        plst = build_plst(alphabet.encode(text), alphabet, args.node_budget)
    except (NodeBudgetExceeded, TextError, ValueError) as exc:
        return _fail(str(exc))
    elapsed = time.perf_counter() - t0
    try:
        save_index(plst, args.out)
    except OSError as exc:
        return _fail(str(exc))
    _print_stats(plst.stats())
    print(f"build_time {elapsed:.3f}s")
    print(f"index {args.out}")
    return EXIT_OK


def cmd_query(args) -> int:
    try:
        plst = load_index(args.index)
    except (OSError, IndexFormatError) as exc:
        return _fail(str(exc))
    if plst.alphabet is None:
        return _fail("index carries no alphabet; cannot encode a text pattern")
    try:
        pattern = plst.alphabet.encode(args.pattern)
        outcome = locate(plst, pattern) if args.locate else decide(plst, pattern)
    except (PatternError, ValueError) as exc:
        return _fail(str(exc))
    print(f"matched {'true' if outcome.matched else 'false'}")
    if args.locate:
        print("occurrences " + " ".join(map(str, outcome.occurrences)))
    print(f"link_follows {outcome.link_follows}")
    print(f"rewrites {outcome.rewrites}")
    return EXIT_OK if outcome.matched else EXIT_NO_MATCH


def cmd_stats(args) -> int:
    try:
        plst = load_index(args.index)
    except (OSError, IndexFormatError) as exc:
        return _fail(str(exc))
    st = plst.stats()
    _print_stats(st)
    print(f"p_suffix_tree_nodes {st.type1}")
    return EXIT_OK


def cmd_gen(args) -> int:
    params = ""
    if args.family == "random":
        if args.length is None:
            return _fail("--length is required for the random family")
        text = random_chars(args.length, args.alphabet_size, args.seed)
        if args.mode == "parameter":
            params = "".join(sorted(set(text)))
    elif args.family == "closure":
        if args.index is None:
            return _fail("--index is required for the closure family")
        try:
            text, params = closure_blowup_chars(args.index)
        except ValueError as exc:
            return _fail(str(exc))
    else:
        if args.index is None:
            return _fail(f"--index is required for the {args.family} family")
        gen = {
            "fibonacci": fibonacci,
            "thue_morse": thue_morse,
            "period_doubling": period_doubling,
        }[args.family]
        try:
            text = gen(args.index)
        except ValueError as exc:
            return _fail(str(exc))
        if args.mode == "parameter":
            params = "".join(sorted(set(text)))
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text + "\n")
    except OSError as exc:
        return _fail(str(exc))
    print(f"text {args.out}")
    print(f"length {len(text)}")
    print(f"params {params}")
    return EXIT_OK


def cmd_experiment(args) -> int:
    try:
        if args.table == "closure":
            rows = closure_rows(args.max_family, args.node_budget)
        elif args.table == "fibonacci":
            rows = fibonacci_rows(args.max_n or FIBONACCI_MAX_N, args.node_budget)
        elif args.table == "thue_morse":
            rows = thue_morse_rows(args.max_n or HOMOMORPHIC_MAX_N, args.node_budget)
        elif args.table == "period_doubling":
            rows = period_doubling_rows(
                args.max_n or HOMOMORPHIC_MAX_N, args.node_budget
            )
        else:
            rows = random_rows(
                max_n=args.max_n or max(RANDOM_LENGTHS),
                trials=args.trials,
                base_seed=args.seed,
                node_budget=args.node_budget,
            )
    except (NodeBudgetExceeded, ValueError) as exc:
        return _fail(str(exc))
    try:
        with open(args.out, "w", encoding="ascii", newline="") as fh:
            if args.table == "closure":
                write_closure_csv(rows, fh)
            else:
                write_node_csv(rows, fh)
    except OSError as exc:
        return _fail(str(exc))
    print(f"csv {args.out}")
    print(f"rows {len(rows)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plst",
        description="Build and query linear-size suffix-trie indexes for "
        "parameterized pattern matching.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build an index from a text file")
    p.add_argument("text", help="input text file (one line, sentinel optional)")
    p.add_argument("-o", "--out", required=True, help="output index file")
    p.add_argument(
        "--params",
        default="",
        help="characters to treat as parameters (everything else is constant)",
    )
    p.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("query", help="match a pattern against an index")
    p.add_argument("index", help="index file from build")
    p.add_argument("pattern", help="pattern string (alphabet of the index)")
    p.add_argument("--locate", action="store_true", help="report occurrences")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("stats", help="print statistics of an index")
    p.add_argument("index", help="index file from build")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("gen", help="write a corpus text file")
    p.add_argument(
        "--family", required=True, choices=sorted(TABLES)
    )
    p.add_argument("--index", type=int, help="family index k (deterministic families)")
    p.add_argument("--length", type=int, help="string length (random family)")
    p.add_argument("--mode", choices=MODES, default="constant")
    p.add_argument("--alphabet-size", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--out", required=True, help="output text file")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("experiment", help="write an experiment table as CSV")
    p.add_argument("table", choices=sorted(TABLES))
    p.add_argument("-o", "--out", required=True, help="output CSV file")
    p.add_argument("--max-n", type=int, default=None, help="cap on text length")
    p.add_argument("--max-family", type=int, default=8, help="closure family cap")
    p.add_argument("--trials", type=int, default=100, help="random trials per length")
    p.add_argument("--seed", type=int, default=0, help="random base seed")
    p.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


def entry() -> None:
    sys.exit(main())
