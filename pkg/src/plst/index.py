"""Compacted index over the parameterized suffix trie.

The index keeps two kinds of trie nodes: type 1 (leaves and branching nodes)
and type 2 (nodes whose suffix-link image is type 1).  Every other node is
contracted away; an edge stores only the first symbol of its path label.
Labels of longer edges are recovered either through suffix links (both
endpoints "good", i.e. their suffix-link images are themselves index nodes),
guided by a per-node re-encoding sign, or, next to "bad" nodes, through a
triple (i, j, k) into a retained subsequence of the prev-encoded text.

Construction runs over the flat trie arrays (a few jitted linear scans), so
building from texts with tens of millions of trie nodes takes seconds; the
assembled index itself is linear in the text length and the trie can be
dropped afterwards.  A finished index is never mutated by queries and can be
shared across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
from numba import njit

from .pstr import NUM, Alphabet, PStr, PSym, PvStr, PvSym
from .suffixtrie import (
    DEFAULT_NODE_BUDGET,
    NO_NODE,
    NodeClasses,
    PsTrie,
    build_pstrie,
    classify_nodes,
    unpack_sym,
)


@dataclass(frozen=True)
class IndexStats:
    """Node, edge, and reference-text counts of one index."""

    n: int
    type1: int
    type2: int
    bad: int
    ref_text_len: int
    edges: int
    single_edges: int


@dataclass
class PlstNode:
    """Index node: trie string depth, classification, and link data.

    children maps the first symbol of each outgoing edge label to the edge
    id.  suffix_link is present exactly for good nodes.  re_sign is the
    offset (within the incoming edge label) of the unique position whose
    back-distance reaches position 1 of this node's string, or 0.
    """

    id: int
    node_type: int
    depth: int
    good: bool
    suffix_link: int | None
    re_sign: int
    children: dict[PvSym, int] = field(default_factory=dict)
    parent_edge: int | None = None
    leaf_suffixes: tuple[int, ...] = ()


@dataclass
class PlstEdge:
    """Index edge; single means the label is one symbol long.

    Exactly one of sym (first-symbol label) and ref (triple (i, j, k): the
    label is the retained text slice i..j re-encoded relative to k) is set;
    ref is used when the label is longer than one symbol and either endpoint
    is bad.  fast_link is set on non-single edges with two good endpoints.
    """

    id: int
    parent: int
    child: int
    single: bool
    sym: PvSym | None = None
    ref: tuple[int, int, int] | None = None
    fast_link: int | None = None


class RefText:
    """Retained subsequence of the prev-encoded text, in original coordinates.

    Chunks are maximal runs of retained positions, stored as (start, symbols)
    with the symbols exactly as in the prev-encoded text.  resolve() applies
    the window re-encoding on the fly: relative to a window starting at k,
    a back-distance at position t is zeroed iff it reaches left of k.
    """

    def __init__(self, chunks: Iterable[tuple[int, PvStr]] = ()):
        self.chunks: tuple[tuple[int, PvStr], ...] = tuple(
            (int(start), PvStr(syms)) for start, syms in chunks
        )
        prev_end = 0
        self._raw: dict[int, PvSym] = {}
        self._loc: dict[int, tuple[int, int]] = {}
        for ci, (start, syms) in enumerate(self.chunks):
            if start <= prev_end:
                raise ValueError("chunks must be sorted, disjoint, and non-adjacent")
            for off, s in enumerate(syms):
                self._raw[start + off] = s
                self._loc[start + off] = (ci, off)
            prev_end = start + len(syms)

    def __len__(self) -> int:
        return sum(len(syms) for _, syms in self.chunks)

    def __eq__(self, other) -> bool:
        return isinstance(other, RefText) and self.chunks == other.chunks

    def __repr__(self) -> str:
        return f"RefText({list(self.chunks)!r})"

    def raw_at(self, pos: int) -> PvSym | None:
        return self._raw.get(pos)

    def translate(self, pos: int) -> tuple[int, int]:
        """Map an original text position to (chunk index, offset)."""
        try:
            return self._loc[pos]
        except KeyError:
            raise KeyError(f"position {pos} is not retained") from None

    def resolve(self, pos: int, k: int) -> PvSym:
        s = self._raw[pos]
        if s.kind == NUM and s.value >= pos - k + 1:
            return PvSym(NUM, 0)
        return s


class Plst:
    """The compacted index: nodes, edges, reference text, leaf suffixes."""

    def __init__(
        self,
        nodes: list[PlstNode],
        edges: list[PlstEdge],
        ref_text: RefText,
        text_length: int,
        sentinel: PSym,
        alphabet: Alphabet | None = None,
        fast_link_bad_stops: int = 0,
    ):
        self.nodes = nodes
        self.edges = edges
        self.root = 0
        self.ref_text = ref_text
        self.text_length = text_length
        self.sentinel = sentinel
        self.alphabet = alphabet
        self.fast_link_bad_stops = fast_link_bad_stops

    def child_edge(self, node_id: int, sym: PvSym) -> PlstEdge | None:
        eid = self.nodes[node_id].children.get(sym)
        return None if eid is None else self.edges[eid]

    def gap(self, edge: PlstEdge) -> int:
        return self.nodes[edge.child].depth - self.nodes[edge.parent].depth

    def subtree_leaf_suffixes(self, node_id: int) -> list[int]:
        out: list[int] = []
        stack = [node_id]
        while stack:
            x = self.nodes[stack.pop()]
            out.extend(x.leaf_suffixes)
            for eid in x.children.values():
                stack.append(self.edges[eid].child)
        out.sort()
        return out

    def stats(self) -> IndexStats:
        type1 = sum(1 for x in self.nodes if x.node_type == 1)
        type2 = len(self.nodes) - type1
        bad = sum(1 for x in self.nodes if not x.good)
        single = sum(1 for e in self.edges if e.single)
        return IndexStats(
            n=self.text_length,
            type1=type1,
            type2=type2,
            bad=bad,
            ref_text_len=len(self.ref_text),
            edges=len(self.edges),
            single_edges=single,
        )


def compute_re_sign(v_string, parent_depth: int) -> int:
    """Re-encoding sign of a node relative to its parent depth.

    Scans positions parent_depth+1 .. |v| of the node's string for the one
    position i holding back-distance i-1 >= 1 (the reference that a
    suffix-link step re-encodes away); returns i - parent_depth, or 0 if no
    such position exists.  Position 1 never counts: a suffix-link step drops
    it instead of re-encoding it, and treating it as a sign would make the
    offset ambiguous for children of the root.
    """
    length = len(v_string)
    if parent_depth >= length:
        raise ValueError("parent depth must be smaller than the node depth")
    syms = v_string.syms if isinstance(v_string, PvStr) else tuple(v_string)
    for i in range(max(2, parent_depth + 1), length + 1):
        s = syms[i - 1]
        if s.kind == NUM and s.value == i - 1:
            return i - parent_depth
    return 0


@njit(cache=True)
def _scan_topdown(sym, parent, depth, selected):  # pragma: no cover
    # Per node: nearest selected proper ancestor, first symbol below it on
    # the path here, and the depth of the sign position on the root path
    # (at most one exists per node string; 0 when none).
    size = sym.size
    anc = np.empty(size, np.int32)
    first_sym = np.empty(size, np.int32)
    sign_depth = np.empty(size, np.int32)
    anc[0] = NO_NODE
    first_sym[0] = 0
    sign_depth[0] = 0
    for x in range(1, size):
        p = parent[x]
        if selected[p]:
            anc[x] = p
            first_sym[x] = sym[x]
        else:
            anc[x] = anc[p]
            first_sym[x] = first_sym[p]
        if sym[x] >= 1 and sym[x] == depth[x] - 1:
            sign_depth[x] = depth[x]
        else:
            sign_depth[x] = sign_depth[p]
    return anc, first_sym, sign_depth


@njit(cache=True)
def _scan_min_suffix(parent, depth, first_child, n):  # pragma: no cover
    # Smallest suffix start below each node; node ids are topological, so
    # one reverse sweep propagates leaf values up.
    size = parent.size
    inf = np.int32(2**31 - 1)
    minsuf = np.empty(size, np.int32)
    for x in range(size):
        minsuf[x] = n - depth[x] + 1 if first_child[x] == NO_NODE else inf
    for x in range(size - 1, 0, -1):
        p = parent[x]
        if minsuf[x] < minsuf[p]:
            minsuf[p] = minsuf[x]
    return minsuf


@dataclass
class _Selection:
    classes: NodeClasses
    anc: np.ndarray
    first_sym: np.ndarray
    sign_depth: np.ndarray
    min_suffix: np.ndarray
    v_ids: np.ndarray


def _select(trie: PsTrie) -> _Selection:
    size = trie.size
    classes = classify_nodes(trie)
    anc, first_sym, sign_depth = _scan_topdown(
        trie.sym[:size], trie.parent[:size], trie.depth[:size], classes.selected
    )
    min_suffix = _scan_min_suffix(
        trie.parent[:size], trie.depth[:size], trie.first_child[:size], trie.n
    )
    v_ids = np.nonzero(classes.selected)[0]
    return _Selection(classes, anc, first_sym, sign_depth, min_suffix, v_ids)


def _ref_triples(trie: PsTrie, sel: _Selection):
    """(node, i, j, k) arrays for the edges that need a text reference:
    label longer than one symbol with a bad endpoint; the occurrence used is
    the leftmost one below the child node."""
    v = sel.v_ids[1:]
    u = sel.anc[v]
    dv = trie.depth[v]
    du = trie.depth[u]
    good = sel.classes.good
    mask = (dv - du >= 2) & ~(good[v] & good[u])
    v = v[mask]
    s = sel.min_suffix[v]
    i = s + du[mask]
    j = s + dv[mask] - 1
    return v, i, j, s


def _merge_intervals(starts, ends) -> list[tuple[int, int]]:
    order = np.argsort(starts, kind="stable")
    merged: list[tuple[int, int]] = []
    for idx in order:
        a, b = int(starts[idx]), int(ends[idx])
        if merged and a <= merged[-1][1] + 1:
            if b > merged[-1][1]:
                merged[-1] = (merged[-1][0], b)
        else:
            merged.append((a, b))
    return merged


def extract_ref_text(trie: PsTrie, sel: _Selection | None = None) -> RefText:
    """Reference text for the index of this trie: the union of the slices
    referenced by bad-adjacent long edges, merged into maximal chunks."""
    if sel is None:
        sel = _select(trie)
    _, i, j, _ = _ref_triples(trie, sel)
    chunks = [
        (a, trie.pv_text.sub(a, b)) for a, b in _merge_intervals(i, j)
    ]
    return RefText(chunks)


def text_stats(text: PStr, node_budget: int = DEFAULT_NODE_BUDGET) -> IndexStats:
    """Index statistics straight from the trie arrays, without assembling
    node objects; used by the experiment harness."""
    trie = build_pstrie(text, node_budget)
    sel = _select(trie)
    classes = sel.classes
    type1 = int(np.count_nonzero(classes.type1))
    type2 = int(np.count_nonzero(classes.type2))
    bad = int(np.count_nonzero(classes.selected & ~classes.good))
    v = sel.v_ids
    gaps = trie.depth[v[1:]] - trie.depth[sel.anc[v[1:]]]
    _, i, j, _ = _ref_triples(trie, sel)
    ref_len = sum(b - a + 1 for a, b in _merge_intervals(i, j))
    return IndexStats(
        n=trie.n,
        type1=type1,
        type2=type2,
        bad=bad,
        ref_text_len=ref_len,
        edges=len(v) - 1,
        single_edges=int(np.count_nonzero(gaps == 1)),
    )


class ConstructionError(RuntimeError):
    """Internal inconsistency while assembling the index."""


def compute_fast_links(plst: Plst) -> int:
    """Fill fast_link on every non-single good-good edge of an index
    under construction (suffix links and signs must be final).

    The link target is the first suffix-link power of the parent where the
    image of the edge either ends earlier (an extra node appears inside),
    acquires a nonzero re-encoding sign, or meets a bad endpoint (from where
    the label is resolved through the reference text).  Between those events
    the image edge persists unchanged, so the walk is memoized edge-to-edge.
    Returns the number of edges whose walk stopped at a bad endpoint.
    """
    nodes, edges = plst.nodes, plst.edges
    memo: dict[int, tuple[int, bool]] = {}

    def step(eid: int) -> tuple[int, bool] | int:
        # Landing (node, bad-stop flag) for this edge, or the next edge id
        # down the suffix-link chain when the image persists.
        e = edges[eid]
        u = nodes[e.parent]
        v = nodes[e.child]
        key = PvSym(NUM, 0) if v.re_sign == 1 else e.sym
        x_id = u.suffix_link
        x = nodes[x_id]
        c_eid = x.children.get(key)
        if c_eid is None:
            raise ConstructionError(
                f"fast-link walk from edge {eid} found no {key} child at node {x_id}"
            )
        c = nodes[edges[c_eid].child]
        if c.depth > v.depth - 1:
            raise ConstructionError(
                f"fast-link walk from edge {eid} left the image path at node {x_id}"
            )
        if c.depth < v.depth - 1 or c.re_sign > 0:
            return (x_id, False)
        if not (x.good and c.good):
            return (x_id, True)
        return c_eid

    bad_stops = 0
    for e in edges:
        if e.single or e.fast_link is not None:
            continue
        u = nodes[e.parent]
        v = nodes[e.child]
        if not (u.good and v.good):
            continue
        trail = [e.id]
        cur = e.id
        while True:
            if cur in memo:
                result = memo[cur]
                break
            nxt = step(cur)
            if isinstance(nxt, tuple):
                result = nxt
                break
            trail.append(nxt)
            cur = nxt
        for eid in trail:
            memo[eid] = result
            edge = edges[eid]
            if edge.fast_link is None:
                edge.fast_link = result[0]
                if result[1]:
                    bad_stops += 1
    return bad_stops


def plst_from_trie(trie: PsTrie, alphabet: Alphabet | None = None) -> Plst:
    """Assemble the index from a built trie (which may be dropped after)."""
    sel = _select(trie)
    classes = sel.classes
    v_ids = sel.v_ids
    plst_of = np.full(trie.size, NO_NODE, dtype=np.int32)
    plst_of[v_ids] = np.arange(len(v_ids), dtype=np.int32)

    depth = trie.depth
    nodes: list[PlstNode] = []
    for pid, t in enumerate(v_ids):
        t = int(t)
        good = bool(classes.good[t])
        if t == trie.root:
            re_sign = 0
        else:
            pd = int(depth[sel.anc[t]])
            sd = int(sel.sign_depth[t])
            re_sign = sd - pd if sd > pd else 0
        nodes.append(
            PlstNode(
                id=pid,
                node_type=1 if classes.type1[t] else 2,
                depth=int(depth[t]),
                good=good,
                suffix_link=int(plst_of[trie.suffix_target[t]]) if good else None,
                re_sign=re_sign,
                leaf_suffixes=(trie.suffix_number(t),) if classes.leaf[t] else (),
            )
        )

    ref_nodes, ref_i, ref_j, ref_k = _ref_triples(trie, sel)
    triple_of = {
        int(t): (int(a), int(b), int(c))
        for t, a, b, c in zip(ref_nodes, ref_i, ref_j, ref_k)
    }
    edges: list[PlstEdge] = []
    for pid, t in enumerate(v_ids):
        if pid == 0:
            continue
        t = int(t)
        u_t = int(sel.anc[t])
        up = int(plst_of[u_t])
        gap = int(depth[t]) - int(depth[u_t])
        first = unpack_sym(sel.first_sym[t])
        eid = len(edges)
        ref = triple_of.get(t)
        edges.append(
            PlstEdge(
                id=eid,
                parent=up,
                child=pid,
                single=gap == 1,
                sym=None if ref is not None else first,
                ref=ref,
            )
        )
        nodes[up].children[first] = eid
        nodes[pid].parent_edge = eid

    chunks = [(a, trie.pv_text.sub(a, b)) for a, b in _merge_intervals(ref_i, ref_j)]
    plst = Plst(
        nodes=nodes,
        edges=edges,
        ref_text=RefText(chunks),
        text_length=trie.n,
        sentinel=trie.text.at(trie.n),
        alphabet=alphabet,
    )
    plst.fast_link_bad_stops = compute_fast_links(plst)
    return plst


def build_plst(
    text: PStr,
    alphabet: Alphabet | None = None,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> Plst:
    """Build the index for a sentinel-terminated text."""
    return plst_from_trie(build_pstrie(text, node_budget), alphabet)


def build_plst_with_trie(
    text: PStr,
    alphabet: Alphabet | None = None,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> tuple[Plst, PsTrie]:
    """Build the index and keep the trie (for oracle checks and tests)."""
    trie = build_pstrie(text, node_budget)
    return plst_from_trie(trie, alphabet), trie


def stats(plst: Plst) -> IndexStats:
    return plst.stats()


def materialize_label(
    plst: Plst, edge: PlstEdge | int, _memo: dict[int, tuple] | None = None
) -> PvStr:
    """Recover the full path label of an edge.

    Single edges hold their symbol; bad-adjacent long edges resolve their
    (i, j, k) triple against the reference text; good-good long edges walk
    the suffix-link images (concatenating the labels of the image path) and
    patch the sign position back to depth(parent) + sign - 1.
    """
    eid = edge if isinstance(edge, int) else edge.id
    memo: dict[int, tuple] = {} if _memo is None else _memo

    def go(eid: int) -> tuple:
        got = memo.get(eid)
        if got is not None:
            return got
        e = plst.edges[eid]
        if e.single:
            out = (e.sym,)
        elif e.ref is not None:
            i, j, k = e.ref
            out = tuple(plst.ref_text.resolve(t, k) for t in range(i, j + 1))
        else:
            u = plst.nodes[e.parent]
            v = plst.nodes[e.child]
            chain: list[int] = []
            x = plst.nodes[v.suffix_link]
            while x.id != u.suffix_link:
                pe = x.parent_edge
                if pe is None:
                    raise ConstructionError(
                        f"suffix image of edge {eid} does not stay below the parent image"
                    )
                chain.append(pe)
                x = plst.nodes[plst.edges[pe].parent]
            syms: list[PvSym] = []
            for ce in reversed(chain):
                syms.extend(go(ce))
            if v.re_sign >= 1:
                syms[v.re_sign - 1] = PvSym(NUM, u.depth + v.re_sign - 1)
            out = tuple(syms)
        memo[eid] = out
        return out

    return PvStr(go(eid))
