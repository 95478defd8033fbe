"""Versioned line-oriented text format for the index.

Layout (one record per line, space-separated fields):

    plst-index 1
    n <text length>
    sentinel <constant code>
    badstops <fast-link bad-stop count>
    alphabet <constants>|<parameters>   or   alphabet -
    node <id> <type> <depth> <good> <suffix link or -> <re sign>
    edge <id> <parent> <child> <single> S <sym> <fast link or ->
    edge <id> <parent> <child> <single> R <i> <j> <k> <fast link or ->
    chunk <start> <sym> <sym> ...
    leaf <node id> <suffix> ...
    end

Symbols are C<code> (constant) or N<distance>; alphabet characters are
percent-encoded and comma-separated.  Construction is deterministic, so
saving the same index twice yields identical bytes; loading rebuilds the
children maps and parent links from the edge records.
"""

from __future__ import annotations

from typing import IO
from urllib.parse import quote, unquote

from .index import Plst, PlstEdge, PlstNode, RefText
from .pstr import CONST, NUM, Alphabet, PSym, PvStr, PvSym

MAGIC = "plst-index"
FORMAT_VERSION = 1


class IndexFormatError(ValueError):
    """The file is not a readable index of a supported version."""


def _sym_str(s: PvSym) -> str:
    return f"N{s.value}" if s.kind == NUM else f"C{s.value}"


def _sym_parse(tok: str) -> PvSym:
    if len(tok) >= 2 and tok[0] in "CN" and tok[1:].isdigit():
        return PvSym(NUM if tok[0] == "N" else CONST, int(tok[1:]))
    raise IndexFormatError(f"bad symbol token {tok!r}")


def _chars_str(chars: str) -> str:
    return ",".join(quote(c, safe="") for c in chars)


def _chars_parse(tok: str) -> str:
    return "".join(unquote(c) for c in tok.split(",")) if tok else ""


def _opt(value: int | None) -> str:
    return "-" if value is None else str(value)


def _opt_parse(tok: str) -> int | None:
    return None if tok == "-" else int(tok)


def write_index(plst: Plst, fh: IO[str]) -> None:
    fh.write(f"{MAGIC} {FORMAT_VERSION}\n")
    fh.write(f"n {plst.text_length}\n")
    fh.write(f"sentinel {plst.sentinel.code}\n")
    fh.write(f"badstops {plst.fast_link_bad_stops}\n")
    if plst.alphabet is None:
        fh.write("alphabet -\n")
    else:
        a = plst.alphabet
        fh.write(f"alphabet {_chars_str(a.constants)}|{_chars_str(a.parameters)}\n")
    for x in plst.nodes:
        fh.write(
            f"node {x.id} {x.node_type} {x.depth} {int(x.good)} "
            f"{_opt(x.suffix_link)} {x.re_sign}\n"
        )
    for e in plst.edges:
        label = (
            f"S {_sym_str(e.sym)}"
            if e.ref is None
            else f"R {e.ref[0]} {e.ref[1]} {e.ref[2]}"
        )
        fh.write(
            f"edge {e.id} {e.parent} {e.child} {int(e.single)} {label} "
            f"{_opt(e.fast_link)}\n"
        )
    for start, syms in plst.ref_text.chunks:
        fh.write(f"chunk {start} " + " ".join(_sym_str(s) for s in syms) + "\n")
    for x in plst.nodes:
        if x.leaf_suffixes:
            fh.write(f"leaf {x.id} " + " ".join(map(str, x.leaf_suffixes)) + "\n")
    fh.write("end\n")


def save_index(plst: Plst, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        write_index(plst, fh)


def read_index(fh: IO[str]) -> Plst:
    head = fh.readline().split()
    if len(head) != 2 or head[0] != MAGIC:
        raise IndexFormatError("not an index file (bad magic)")
    if head[1] != str(FORMAT_VERSION):
        raise IndexFormatError(
            f"unsupported format version {head[1]} (supported: {FORMAT_VERSION})"
        )
    n = None
    sentinel_code = None
    bad_stops = 0
    alphabet: Alphabet | None = None
    nodes: list[PlstNode] = []
    edges: list[PlstEdge] = []
    chunks: list[tuple[int, PvStr]] = []
    leaves: dict[int, tuple[int, ...]] = {}
    saw_end = False
    for raw in fh:
        parts = raw.split()
        if not parts:
            continue
        tag = parts[0]
        try:
            if tag == "n":
                n = int(parts[1])
            elif tag == "sentinel":
                sentinel_code = int(parts[1])
            elif tag == "badstops":
                bad_stops = int(parts[1])
            elif tag == "alphabet":
                if parts[1] != "-":
                    consts, params = parts[1].split("|")
                    alphabet = Alphabet(
                        _chars_parse(consts), _chars_parse(params)
                    )
            elif tag == "node":
                nid, ntype, depth, good, sl, re_sign = parts[1:7]
                if int(nid) != len(nodes):
                    raise IndexFormatError("node records out of order")
                nodes.append(
                    PlstNode(
                        id=int(nid),
                        node_type=int(ntype),
                        depth=int(depth),
                        good=bool(int(good)),
                        suffix_link=_opt_parse(sl),
                        re_sign=int(re_sign),
                    )
                )
            elif tag == "edge":
                eid, parent, child, single = parts[1:5]
                if int(eid) != len(edges):
                    raise IndexFormatError("edge records out of order")
                if parts[5] == "S":
                    sym, ref = _sym_parse(parts[6]), None
                    fl = _opt_parse(parts[7])
                elif parts[5] == "R":
                    sym = None
                    ref = (int(parts[6]), int(parts[7]), int(parts[8]))
                    fl = _opt_parse(parts[9])
                else:
                    raise IndexFormatError(f"bad edge label kind {parts[5]!r}")
                edges.append(
                    PlstEdge(
                        id=int(eid),
                        parent=int(parent),
                        child=int(child),
                        single=bool(int(single)),
                        sym=sym,
                        ref=ref,
                        fast_link=fl,
                    )
                )
            elif tag == "chunk":
                chunks.append(
                    (int(parts[1]), PvStr(_sym_parse(t) for t in parts[2:]))
                )
            elif tag == "leaf":
                leaves[int(parts[1])] = tuple(int(t) for t in parts[2:])
            elif tag == "end":
                saw_end = True
                break
            else:
                raise IndexFormatError(f"unknown record {tag!r}")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, IndexFormatError):
                raise
            raise IndexFormatError(f"malformed record: {raw.rstrip()}") from exc
    if not saw_end or n is None or sentinel_code is None:
        raise IndexFormatError("truncated index file")

    try:
        ref_text = RefText(chunks)
        for nid, suffixes in leaves.items():
            nodes[nid].leaf_suffixes = suffixes
        for e in edges:
            if e.sym is not None:
                key = e.sym
            else:
                key = ref_text.resolve(e.ref[0], e.ref[2])
            if key in nodes[e.parent].children:
                raise IndexFormatError(
                    f"node {e.parent} has two edges keyed by {key}"
                )
            nodes[e.parent].children[key] = e.id
            nodes[e.child].parent_edge = e.id
    except (IndexError, KeyError, ValueError) as exc:
        if isinstance(exc, IndexFormatError):
            raise
        raise IndexFormatError(f"inconsistent index records: {exc}") from exc
    return Plst(
        nodes=nodes,
        edges=edges,
        ref_text=ref_text,
        text_length=n,
        sentinel=PSym(CONST, sentinel_code),
        alphabet=alphabet,
        fast_link_bad_stops=bad_stops,
    )


def load_index(path) -> Plst:
    with open(path, "r", encoding="ascii") as fh:
        return read_index(fh)
