"""Parameterized pattern matching over the compacted index.

A query walks down from a node, edge by edge.  Single edges compare their
one stored symbol.  Longer edges next to a bad node compare against the
reference text, re-encoded on the fly.  Longer edges between good nodes
carry no label, so the comparison is delegated down the suffix-link chain:
if the child's re-encoding sign falls inside the pattern, the pattern must
hold exactly the back-distance that the suffix image zeroes, and that
position is rewritten to 0 on a query-local copy before the delegated check.
The plain variant delegates one suffix link at a time; the fast variant
jumps through the precomputed fast link, which skips all levels where the
image edge persists unchanged.

The recursion is run as an explicit job stack in the same depth-first order:
a delegated check ("gate") is processed before the continuation below the
edge.  All windows into the pattern buffer are disjoint, every written
position is never re-read by an outer frame, and any failed gate fails the
whole query, so the stack replay is exact.  Queries never mutate the index
and own their pattern copy and counters, so concurrent queries are safe.
"""

from __future__ import annotations

from dataclasses import dataclass

from .index import Plst
from .pstr import NUM, PStr, PvStr, PvSym, prev_encode

_NUM0 = PvSym(NUM, 0)


class PatternError(ValueError):
    """The pattern cannot be queried (e.g. it contains the sentinel)."""


@dataclass
class MatchOutcome:
    """Result of one query, with instrumentation.

    landing is the highest index node whose string extends the pattern
    (present iff matched); occurrences are filled by locate() only.
    link_follows counts suffix/fast-link delegations, rewrites the pattern
    positions rewritten to 0, steps the match-procedure evaluations.
    """

    matched: bool
    landing: int | None
    occurrences: tuple[int, ...] = ()
    link_follows: int = 0
    rewrites: int = 0
    steps: int = 0


def _run(plst: Plst, buf: list[PvSym], start: int, fast: bool):
    nodes = plst.nodes
    edges = plst.edges
    ref = plst.ref_text
    link_follows = rewrites = steps = 0
    landing = None
    jobs = [(0, len(buf), start, True)]
    while jobs:
        off, plen, u, is_root = jobs.pop()
        while True:
            steps += 1
            if plen == 0:
                if is_root:
                    landing = u
                break
            un = nodes[u]
            eid = un.children.get(buf[off])
            if eid is None:
                return None, link_follows, rewrites, steps
            e = edges[eid]
            vn = nodes[e.child]
            gap = vn.depth - un.depth
            l = gap if plen >= gap else plen
            if l >= 2 and not (un.good and vn.good):
                i0, _, k0 = e.ref
                for t in range(1, l):
                    if ref.resolve(i0 + t, k0) != buf[off + t]:
                        return None, link_follows, rewrites, steps
            elif l >= 2:
                sign = vn.re_sign
                if 1 <= sign <= plen:
                    if buf[off + sign - 1] == PvSym(NUM, un.depth + sign - 1):
                        buf[off + sign - 1] = _NUM0
                        rewrites += 1
                    else:
                        return None, link_follows, rewrites, steps
                target = e.fast_link if fast else un.suffix_link
                link_follows += 1
                jobs.append((off + l, plen - l, e.child, is_root))
                jobs.append((off, l, target, False))
                break
            off += l
            plen -= l
            u = e.child
    return landing, link_follows, rewrites, steps


def p_match(plst: Plst, p: PvStr, u: int | None = None) -> int | None:
    """Highest descendant of u whose path from u starts with p, or None.

    p is a prev-encoded pattern slice aligned with u's depth (its distances
    may reference positions matched above u); the input is never mutated.
    Delegated checks follow plain suffix links.
    """
    start = plst.root if u is None else u
    return _run(plst, list(p), start, fast=False)[0]


def p_match_fast(plst: Plst, p: PvStr, u: int | None = None) -> int | None:
    """Same result as p_match, delegating through fast links instead."""
    start = plst.root if u is None else u
    return _run(plst, list(p), start, fast=True)[0]


def _check_pattern(plst: Plst, pattern: PStr) -> None:
    if any(s == plst.sentinel for s in pattern):
        raise PatternError("pattern must not contain the sentinel symbol")


def decide(plst: Plst, pattern: PStr) -> MatchOutcome:
    """Does any substring of the indexed text p-match the pattern?

    Runs in time linear in the pattern length (fast-link variant).  The
    empty pattern matches everywhere.
    """
    _check_pattern(plst, pattern)
    p = prev_encode(pattern)
    landing, lf, rw, steps = _run(plst, list(p), plst.root, fast=True)
    return MatchOutcome(
        matched=landing is not None,
        landing=landing,
        link_follows=lf,
        rewrites=rw,
        steps=steps,
    )


def locate(plst: Plst, pattern: PStr) -> MatchOutcome:
    """decide() plus all occurrence start positions, sorted ascending.

    Occurrences are the suffix numbers of the leaves below the landing node
    (each leaf holds exactly one suffix), capped to starts that leave room
    for the pattern.
    """
    out = decide(plst, pattern)
    if out.matched:
        limit = plst.text_length - len(pattern) + 1
        out.occurrences = tuple(
            i for i in plst.subtree_leaf_suffixes(out.landing) if i <= limit
        )
    return out
