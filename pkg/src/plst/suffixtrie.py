"""Parameterized suffix trie over flat arrays, plus brute-force oracles.

The trie holds one node per prev-encoded substring of the text, so it is
quadratic in the text length; it is the construction intermediate for the
compacted index and doubles as the ground-truth oracle in tests.  Nodes are
rows of parallel int32 arrays (symbol on the incoming edge, parent, depth,
first child, next sibling, suffix-link target), built by a jitted kernel
that inserts the re-encoded suffixes one by one, longest last.  At the desk
scale this is meant for (n up to ~12,000, tens of millions of nodes) the
arrays stay in the hundreds of MB.

Edge symbols are packed into ints: back-distance d >= 0 maps to d, constant
code c to -(c + 1).

Builds are single-threaded; a finished trie is immutable and may be read
from any number of threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .pstr import CONST, NUM, PStr, PvStr, PvSym, prev_encode

DEFAULT_NODE_BUDGET = 200_000_000

NO_NODE = -1


class TextError(ValueError):
    """The text violates the sentinel-termination requirement."""


class NodeBudgetExceeded(ValueError):
    """Worst-case trie size exceeds the configured node budget."""


def pack_pv(u: PvStr) -> np.ndarray:
    """Pack pv-symbols into int32: Num(d) -> d, Const(c) -> -(c + 1)."""
    return np.array(
        [s.value if s.kind == NUM else -(s.value + 1) for s in u], dtype=np.int32
    )


def unpack_sym(v: int) -> PvSym:
    return PvSym(NUM, int(v)) if v >= 0 else PvSym(CONST, -int(v) - 1)


@njit(cache=True)
def _insert_suffixes(pv, cap):  # pragma: no cover - exercised via build_pstrie
    # Walks re_encode(prev(T)[k:], 1) for k = n..1; the symbol at depth i of
    # suffix k is pv[k+i-1] unless that distance reaches left of the suffix
    # start (value >= i), which re-encodes to 0.  Suffixes are inserted
    # shortest first so that the previous suffix path yields every
    # suffix-link target one depth up.
    n = pv.size
    sym = np.empty(cap, np.int32)
    parent = np.empty(cap, np.int32)
    depth = np.empty(cap, np.int32)
    first = np.empty(cap, np.int32)
    nxt = np.empty(cap, np.int32)
    sl = np.empty(cap, np.int32)
    sym[0] = 0
    parent[0] = NO_NODE
    depth[0] = 0
    first[0] = NO_NODE
    nxt[0] = NO_NODE
    sl[0] = NO_NODE
    count = 1
    prev_path = np.empty(n + 1, np.int32)
    cur_path = np.empty(n + 1, np.int32)
    prev_path[0] = 0
    for k in range(n, 0, -1):
        cur = 0
        cur_path[0] = 0
        m = n - k + 1
        for i in range(1, m + 1):
            v = pv[k + i - 2]
            s = 0 if v >= i else v
            c = first[cur]
            while c != NO_NODE and sym[c] != s:
                c = nxt[c]
            if c == NO_NODE:
                c = count
                count += 1
                sym[c] = s
                parent[c] = cur
                depth[c] = i
                first[c] = NO_NODE
                nxt[c] = first[cur]
                first[cur] = c
                sl[c] = NO_NODE
            cur = c
            cur_path[i] = c
            sl[c] = prev_path[i - 1]
        prev_path, cur_path = cur_path, prev_path
    return count, sym, parent, depth, first, nxt, sl


class PsTrie:
    """Read-only view over the trie arrays with node-level accessors."""

    def __init__(self, text, pv_text, size, sym, parent, depth, first, nxt, sl):
        self.text: PStr = text
        self.pv_text: PvStr = pv_text
        self.n = len(text)
        self.size = int(size)
        self.sym = sym
        self.parent = parent
        self.depth = depth
        self.first_child = first
        self.next_sibling = nxt
        self.suffix_target = sl
        self.root = 0
        self._child_count = None

    def child_counts(self) -> np.ndarray:
        if self._child_count is None:
            self._child_count = np.bincount(
                self.parent[1 : self.size].astype(np.int64), minlength=self.size
            )
        return self._child_count

    def is_leaf(self, x: int) -> bool:
        return self.first_child[x] == NO_NODE

    def is_branching(self, x: int) -> bool:
        return self.child_counts()[x] >= 2

    def children(self, x: int) -> dict[PvSym, int]:
        out: dict[PvSym, int] = {}
        c = self.first_child[x]
        while c != NO_NODE:
            out[unpack_sym(self.sym[c])] = int(c)
            c = self.next_sibling[c]
        return out

    def suffix_number(self, x: int) -> int:
        """Start position of the unique suffix ending at leaf x."""
        if not self.is_leaf(x):
            raise ValueError(f"node {x} is not a leaf")
        return self.n - int(self.depth[x]) + 1

    def node_string(self, x: int) -> PvStr:
        syms = []
        while x != self.root:
            syms.append(unpack_sym(self.sym[x]))
            x = int(self.parent[x])
        return PvStr(reversed(syms))

    def find(self, u: PvStr) -> int | None:
        """Node whose string is u, or None; walks from the root."""
        x = self.root
        for s in u:
            packed = s.value if s.kind == NUM else -(s.value + 1)
            c = self.first_child[x]
            while c != NO_NODE and self.sym[c] != packed:
                c = self.next_sibling[c]
            if c == NO_NODE:
                return None
            x = int(c)
        return x

    def path_label(self, u: int, v: int) -> PvStr:
        """Label of the trie path from u down to its descendant v."""
        syms = []
        x = v
        while x != u:
            if x == self.root:
                raise ValueError(f"{u} is not an ancestor of {v}")
            syms.append(unpack_sym(self.sym[x]))
            x = int(self.parent[x])
        return PvStr(reversed(syms))


def check_sentinel(text: PStr) -> None:
    if len(text) == 0:
        raise TextError("text is empty; a sentinel-terminated text is required")
    last = text.at(len(text))
    if not last.is_const:
        raise TextError("text must end with a constant sentinel symbol")
    if any(s == last for s in text.sub(1, len(text) - 1)):
        raise TextError("sentinel symbol occurs before the end of the text")


def build_pstrie(text: PStr, node_budget: int = DEFAULT_NODE_BUDGET) -> PsTrie:
    """Build the parameterized suffix trie of a sentinel-terminated text.

    The node set is exactly the prev-encodings of all substrings; memory is
    allocated for the worst case n(n+1)/2 + 1 nodes up front (lazily by the
    OS), and texts whose worst case exceeds node_budget are refused.
    """
    check_sentinel(text)
    n = len(text)
    cap = n * (n + 1) // 2 + 1
    if cap > node_budget:
        raise NodeBudgetExceeded(
            f"text of length {n} may need {cap} trie nodes, over the budget "
            f"of {node_budget}"
        )
    pv = prev_encode(text)
    count, sym, parent, depth, first, nxt, sl = _insert_suffixes(pack_pv(pv), cap)
    return PsTrie(text, pv, count, sym, parent, depth, first, nxt, sl)


@dataclass
class NodeClasses:
    """Per-node boolean masks: index nodes and their classification.

    type1 marks leaves and branching nodes (the root is always kept);
    type2 marks other nodes whose suffix-link image is type1; selected is
    their union (the index node set); good marks selected nodes whose
    suffix-link image is itself selected (the root never is).
    """

    leaf: np.ndarray
    branching: np.ndarray
    type1: np.ndarray
    type2: np.ndarray
    selected: np.ndarray
    good: np.ndarray


def classify_nodes(trie: PsTrie) -> NodeClasses:
    size = trie.size
    leaf = trie.first_child[:size] == NO_NODE
    branching = trie.child_counts()[:size] >= 2
    type1 = leaf | branching
    type1[trie.root] = True
    sl = trie.suffix_target[:size]
    type2 = ~type1 & type1[sl]
    type2[trie.root] = False
    selected = type1 | type2
    good = selected & selected[sl]
    good[trie.root] = False
    return NodeClasses(leaf, branching, type1, type2, selected, good)


def naive_pmatch(text: PStr, pattern: PStr) -> list[int]:
    """All start positions whose window p-matches the pattern.

    Sliding-window comparison straight from the prev-encoding definition;
    deliberately independent of the trie and the index.  The empty pattern
    matches at every position 1..n.
    """
    n, m = len(text), len(pattern)
    if m == 0:
        return list(range(1, n + 1))
    if m > n:
        return []
    pat = prev_encode(pattern).syms
    syms = text.syms
    out = []
    for i in range(n - m + 1):
        last: dict[int, int] = {}
        ok = True
        for j in range(m):
            s = syms[i + j]
            if s.kind == CONST:
                got = PvSym(CONST, s.code)
            else:
                k = last.get(s.code)
                got = PvSym(NUM, 0 if k is None else j + 1 - k)
                last[s.code] = j + 1
            if got != pat[j]:
                ok = False
                break
        if ok:
            out.append(i + 1)
    return out


@dataclass(frozen=True)
class ClosureStats:
    """Size of the suffix-link closure of the type-1 nodes.

    closure_size is |C| for C = {sl^i(u) : u type1, 0 <= i <= |u|}; excess
    counts the members of C that are neither type1 nor type2, i.e. the nodes
    a closure-based index would add on top of the compacted one.
    """

    excess: int
    closure_size: int
    type1: int
    type2: int


def closure_stats(text: PStr, node_budget: int = DEFAULT_NODE_BUDGET) -> ClosureStats:
    trie = build_pstrie(text, node_budget)
    classes = classify_nodes(trie)
    sl = trie.suffix_target[: trie.size]
    visited = np.zeros(trie.size, dtype=bool)
    frontier = np.nonzero(classes.type1)[0]
    visited[frontier] = True
    while frontier.size:
        nxt = sl[frontier]
        nxt = nxt[nxt != NO_NODE]
        nxt = np.unique(nxt[~visited[nxt]])
        visited[nxt] = True
        frontier = nxt
    excess = int(np.count_nonzero(visited & ~classes.selected))
    return ClosureStats(
        excess=excess,
        closure_size=int(np.count_nonzero(visited)),
        type1=int(np.count_nonzero(classes.type1)),
        type2=int(np.count_nonzero(classes.type2)),
    )


def closure_excess_count(text: PStr, node_budget: int = DEFAULT_NODE_BUDGET) -> int:
    """Nodes the suffix-link closure of the type-1 set adds beyond the index."""
    return closure_stats(text, node_budget).excess
