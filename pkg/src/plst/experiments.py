"""Node-count experiment harness.

Reproduces the benchmark tables: exact type-1/type-2 node counts for the
Fibonacci, Thue-Morse, and Period-doubling families under both alphabet
modes, seeded averages over random strings, and the growth of the suffix-
link-closure excess on the adversarial family.  Deterministic families give
byte-identical CSV output across runs; random trials draw independent PCG64
streams from SeedSequence([base_seed, family, mode, n, trial]).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import IO, Sequence

import numpy as np

from .corpus import (
    closure_blowup,
    append_sentinel,
    fibonacci,
    period_doubling,
    random_chars,
    tag_text,
    thue_morse,
)
from .index import text_stats
from .suffixtrie import DEFAULT_NODE_BUDGET, closure_stats

RANDOM_LENGTHS = (10, 20, 40, 80, 160, 320, 640, 1280, 2560, 5120, 10240)
FIBONACCI_MAX_N = 10947
HOMOMORPHIC_MAX_N = 8193

NODE_TABLES = ("fibonacci", "thue_morse", "period_doubling", "random")
TABLES = NODE_TABLES + ("closure",)

NODE_CSV_HEADER = (
    "family,mode,n,type1,type2,ref_text_len,trials,type1_sd,type2_sd"
)
CLOSURE_CSV_HEADER = "family,n,text_len,excess,closure_size"

_FAMILY_TAG = {f: i for i, f in enumerate(NODE_TABLES)}
_MODE_TAG = {"constant": 0, "parameter": 1}


@dataclass(frozen=True)
class ExperimentRow:
    """One table row; trials and the deviations are set for random rows only."""

    family: str
    mode: str
    n: int
    type1: float
    type2: float
    ref_text_len: float
    trials: int | None = None
    type1_sd: float | None = None
    type2_sd: float | None = None


@dataclass(frozen=True)
class ClosureRow:
    family_index: int
    n: int
    excess: int
    closure_size: int


def _deterministic_rows(family, strings_by_n, node_budget) -> list[ExperimentRow]:
    rows = []
    for n, s in strings_by_n:
        for mode in ("constant", "parameter"):
            st = text_stats(tag_text(s, mode, sentinel=True), node_budget)
            rows.append(
                ExperimentRow(family, mode, n, st.type1, st.type2, st.ref_text_len)
            )
    return rows


def fibonacci_rows(
    max_n: int = FIBONACCI_MAX_N, node_budget: int = DEFAULT_NODE_BUDGET
) -> list[ExperimentRow]:
    """Both-mode node counts for Fibonacci strings, from the 11th up to
    length max_n (sentinel included in n)."""
    strings = []
    k = 11
    while True:
        s = fibonacci(k)
        if len(s) + 1 > max_n:
            break
        strings.append((len(s) + 1, s))
        k += 1
    return _deterministic_rows("fibonacci", strings, node_budget)


def _homomorphic_rows(family, gen, max_n, node_budget) -> list[ExperimentRow]:
    strings = []
    k = 4
    while 2**k + 1 <= max_n:
        strings.append((2**k + 1, gen(k)))
        k += 1
    return _deterministic_rows(family, strings, node_budget)


def thue_morse_rows(
    max_n: int = HOMOMORPHIC_MAX_N, node_budget: int = DEFAULT_NODE_BUDGET
) -> list[ExperimentRow]:
    return _homomorphic_rows("thue_morse", thue_morse, max_n, node_budget)


def period_doubling_rows(
    max_n: int = HOMOMORPHIC_MAX_N, node_budget: int = DEFAULT_NODE_BUDGET
) -> list[ExperimentRow]:
    return _homomorphic_rows("period_doubling", period_doubling, max_n, node_budget)


def trial_seed(base_seed: int, family: str, mode: str, n: int, trial: int):
    return np.random.SeedSequence(
        [base_seed, _FAMILY_TAG[family], _MODE_TAG[mode], n, trial]
    )


def random_rows(
    max_n: int = 2560,
    trials: int = 100,
    base_seed: int = 0,
    alphabet_size: int = 2,
    lengths: Sequence[int] = RANDOM_LENGTHS,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> list[ExperimentRow]:
    """Mean node counts over seeded random strings, per length and mode.

    The n column is the generated string length; the indexed text is one
    symbol longer (the sentinel).  Deterministic families, by contrast,
    report the sentinel-included text length; both follow the labeling
    their reference tables use.
    """
    rows = []
    for n in lengths:
        if n > max_n:
            continue
        for mode in ("constant", "parameter"):
            t1, t2, rl = [], [], []
            for trial in range(trials):
                seed = trial_seed(base_seed, "random", mode, n, trial)
                s = random_chars(n, alphabet_size, seed)
                st = text_stats(tag_text(s, mode, sentinel=True), node_budget)
                t1.append(st.type1)
                t2.append(st.type2)
                rl.append(st.ref_text_len)
            rows.append(
                ExperimentRow(
                    "random",
                    mode,
                    n,
                    float(np.mean(t1)),
                    float(np.mean(t2)),
                    float(np.mean(rl)),
                    trials=trials,
                    type1_sd=float(np.std(t1)),
                    type2_sd=float(np.std(t2)),
                )
            )
    return rows


def closure_rows(
    max_family: int = 8, node_budget: int = DEFAULT_NODE_BUDGET
) -> list[ClosureRow]:
    """Suffix-link-closure excess of the adversarial family, per index."""
    rows = []
    for i in range(2, max_family + 1):
        text = append_sentinel(closure_blowup(i))
        cs = closure_stats(text, node_budget)
        rows.append(ClosureRow(i, len(text), cs.excess, cs.closure_size))
    return rows


def _fmt(value: float | int | None) -> str:
    if value is None:
        return ""
    if isinstance(value, float) and not value.is_integer():
        return f"{value:.2f}"
    return str(int(value))


def write_node_csv(rows: Sequence[ExperimentRow], fh: IO[str]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(NODE_CSV_HEADER.split(","))
    for r in rows:
        writer.writerow(
            [
                r.family,
                r.mode,
                r.n,
                _fmt(r.type1),
                _fmt(r.type2),
                _fmt(r.ref_text_len),
                _fmt(r.trials),
                "" if r.type1_sd is None else f"{r.type1_sd:.2f}",
                "" if r.type2_sd is None else f"{r.type2_sd:.2f}",
            ]
        )


def write_closure_csv(rows: Sequence[ClosureRow], fh: IO[str]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CLOSURE_CSV_HEADER.split(","))
    for r in rows:
        writer.writerow(["closure", r.family_index, r.n, r.excess, r.closure_size])
