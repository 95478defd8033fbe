"""Shared helpers for the suite: alphabets, trie mapping, text factories."""

from __future__ import annotations

import random

import pytest

from plst import Alphabet, build_plst_with_trie
from plst.index import Plst
from plst.suffixtrie import PsTrie


def make_alphabet(constants: str = "abc", parameters: str = "uvw") -> Alphabet:
    return Alphabet(constants=constants, parameters=parameters)


def encode(text: str, params: str = "") -> tuple:
    """(PStr, Alphabet) for a literal text, declaring params as parameters."""
    alphabet = Alphabet.from_text(text, params)
    return alphabet.encode(text), alphabet


def map_plst_to_trie(plst: Plst, trie: PsTrie) -> dict[int, int]:
    """Map every index node to its trie node without using edge labels.

    From a mapped parent, an edge's first symbol picks the trie child; the
    interior of an edge is a chain of non-branching trie nodes, so the walk
    to the child's depth is forced.
    """
    mapping = {plst.root: trie.root}
    stack = [plst.root]
    while stack:
        pid = stack.pop()
        t = mapping[pid]
        for sym, eid in plst.nodes[pid].children.items():
            edge = plst.edges[eid]
            child = plst.nodes[edge.child]
            cur = trie.children(t).get(sym)
            assert cur is not None, f"edge {eid}: no trie child {sym}"
            while trie.depth[cur] < child.depth:
                kids = trie.children(cur)
                assert len(kids) == 1, f"edge {eid} crosses a branching trie node"
                cur = next(iter(kids.values()))
            assert trie.depth[cur] == child.depth
            mapping[edge.child] = cur
            stack.append(edge.child)
    assert len(mapping) == len(plst.nodes)
    return mapping


def plst_node_strings(plst: Plst, trie: PsTrie) -> dict[int, tuple]:
    mapping = map_plst_to_trie(plst, trie)
    return {pid: tuple(trie.node_string(t)) for pid, t in mapping.items()}


def random_text(rnd: random.Random, max_n: int = 60, max_consts: int = 3,
                max_params: int = 3) -> tuple:
    """Random sentinel-terminated text over a mixed alphabet: (PStr, Alphabet,
    plain string, parameter characters)."""
    n = rnd.randint(1, max_n)
    consts = "abc"[: rnd.randint(1, max_consts)]
    params = "uvw"[: rnd.randint(1, max_params)]
    alphabet = Alphabet(constants=consts, parameters=params)
    s = "".join(rnd.choice(consts + params) for _ in range(n)) + "$"
    return alphabet.encode(s), alphabet, s, params


@pytest.fixture(scope="session")
def fig_index():
    """Index + trie for the running worked example with a reference text."""
    text, alphabet = encode("xyabzwabzxbz$", "xyzw")
    plst, trie = build_plst_with_trie(text, alphabet)
    return text, alphabet, plst, trie
