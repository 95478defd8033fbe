"""Deterministic text generators for the node-count experiments.

Generators return plain character strings (or code-level p-strings) without
the sentinel; callers append it.  Both alphabet modes produce the identical
character sequence, only the constant/parameter tagging differs.  Everything
here is pure and deterministic in its arguments; the random family uses
numpy's PCG64 stream seeded explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pstr import CONST, PARAM, Alphabet, PStr, PSym

MODES = ("constant", "parameter")


def fibonacci(k: int) -> str:
    """k-th Fibonacci string over {a, b}: "b", "a", then each the previous
    two concatenated; its length is the k-th Fibonacci number."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k == 1:
        return "b"
    prev, cur = "b", "a"
    for _ in range(k - 2):
        prev, cur = cur, cur + prev
    return cur


def _homomorphism_power(rules: dict[str, str], k: int) -> str:
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    s = "a"
    for _ in range(k):
        s = "".join(rules[c] for c in s)
    return s


def thue_morse(k: int) -> str:
    """k-fold image of "a" under a -> ab, b -> ba; length 2**k."""
    return _homomorphism_power({"a": "ab", "b": "ba"}, k)


def period_doubling(k: int) -> str:
    """k-fold image of "a" under a -> ab, b -> aa; length 2**k."""
    return _homomorphism_power({"a": "ab", "b": "aa"}, k)


def tag_text(s: str, mode: str, *, sentinel: bool = False) -> PStr:
    """Tag every character of s as a constant or as a parameter; optionally
    append the sentinel (always a constant)."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    chars = sorted(set(s))
    if mode == "constant":
        alphabet = Alphabet(constants=chars)
    else:
        alphabet = Alphabet(parameters=chars)
    return alphabet.encode(s + (alphabet.sentinel_char if sentinel else ""))


def random_chars(n: int, alphabet_size: int = 2, seed=0) -> str:
    """n i.i.d. uniform characters from a, b, ...; deterministic in seed
    (PCG64)."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if not 1 <= alphabet_size <= 26:
        raise ValueError(f"alphabet_size must be in 1..26, got {alphabet_size}")
    rng = np.random.Generator(np.random.PCG64(seed))
    draws = rng.integers(0, alphabet_size, size=n)
    return "".join(chr(ord("a") + int(d)) for d in draws)


def random_pstring(n: int, alphabet_size: int = 2, mode: str = "constant", seed=0) -> PStr:
    """Uniform random p-string of length n over a small character alphabet,
    tagged per mode; no sentinel."""
    return tag_text(random_chars(n, alphabet_size, seed), mode)


def closure_blowup(n: int) -> PStr:
    """Text family whose type-1 suffix-link closure grows quadratically.

    Block of n distinct parameters interleaved with n distinct constants,
    repeated, then re-interleaved with n fresh parameters, then one final
    fresh parameter: 2n+1 parameters, n constants, length 6n+1 (the caller
    appends the sentinel for 6n+2).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    const = [PSym(CONST, i) for i in range(n)]
    x = [PSym(PARAM, i) for i in range(n)]
    y = [PSym(PARAM, n + i) for i in range(n)]
    z = PSym(PARAM, 2 * n)
    block_x = [s for i in range(n) for s in (x[i], const[i])]
    block_y = [s for i in range(n) for s in (y[i], const[i])]
    return PStr(block_x + block_x + block_y + [z])


def closure_blowup_chars(n: int) -> tuple[str, str]:
    """Character rendering of closure_blowup(n): (text, parameter chars).

    Constants are a, b, ...; parameters are the last 2n+1 letters of the
    alphabet in order, which reproduces the canonical small instances
    (n=3 is "taubvcta...").  Only defined for n <= 8, where the two ranges
    stay disjoint.
    """
    if not 1 <= n <= 8:
        raise ValueError("character rendering is only defined for n in 1..8")
    params = "".join(chr(ord("z") - 2 * n + i) for i in range(2 * n + 1))
    consts = "".join(chr(ord("a") + i) for i in range(n))
    w = closure_blowup(n)
    text = "".join(
        (params if s.kind == PARAM else consts)[s.code] for s in w
    )
    return text, params


def append_sentinel(w: PStr) -> PStr:
    """Append a fresh constant (one past the largest constant code in w)."""
    codes = [s.code for s in w if s.kind == CONST]
    return PStr(tuple(w) + (PSym(CONST, max(codes, default=-1) + 1),))


@dataclass(frozen=True)
class CorpusSpec:
    """One generator invocation: family, its index/length, tagging mode."""

    family: str
    index: int
    mode: str = "constant"
    alphabet_size: int = 2
    seed: int = 0


def generate(spec: CorpusSpec) -> PStr:
    """Generate the text for a spec, tagged, without the sentinel."""
    if spec.family == "fibonacci":
        return tag_text(fibonacci(spec.index), spec.mode)
    if spec.family == "thue_morse":
        return tag_text(thue_morse(spec.index), spec.mode)
    if spec.family == "period_doubling":
        return tag_text(period_doubling(spec.index), spec.mode)
    if spec.family == "random":
        return random_pstring(spec.index, spec.alphabet_size, spec.mode, spec.seed)
    if spec.family == "closure":
        return closure_blowup(spec.index)
    raise ValueError(f"unknown corpus family {spec.family!r}")
