"""Linear-size suffix-trie index for parameterized pattern matching.

Build a compacted index over the prev-encoded suffixes of a parameterized
text, decide in time linear in the pattern length whether any substring
p-matches a pattern, and report occurrences.  Also bundles the quadratic
suffix-trie oracle, corpus generators, and the node-count experiment
harness behind the ``plst`` command-line tool.
"""

from .pstr import (
    CONST,
    NUM,
    PARAM,
    Alphabet,
    Const,
    Num,
    PStr,
    PSym,
    PvStr,
    PvSym,
    apply_bijection,
    format_pv,
    p_equivalent,
    parse_pv,
    prev_encode,
    re_encode,
    sl_str,
)
from .suffixtrie import (
    ClosureStats,
    NodeBudgetExceeded,
    PsTrie,
    TextError,
    build_pstrie,
    classify_nodes,
    closure_excess_count,
    closure_stats,
    naive_pmatch,
)
from .index import (
    ConstructionError,
    IndexStats,
    Plst,
    PlstEdge,
    PlstNode,
    RefText,
    build_plst,
    build_plst_with_trie,
    compute_fast_links,
    compute_re_sign,
    extract_ref_text,
    materialize_label,
    plst_from_trie,
    stats,
    text_stats,
)
from .match import (
    MatchOutcome,
    PatternError,
    decide,
    locate,
    p_match,
    p_match_fast,
)
from .serialize import IndexFormatError, load_index, save_index

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "ClosureStats",
    "CONST",
    "Const",
    "ConstructionError",
    "IndexFormatError",
    "IndexStats",
    "MatchOutcome",
    "NodeBudgetExceeded",
    "NUM",
    "Num",
    "PARAM",
    "PStr",
    "PSym",
    "PatternError",
    "Plst",
    "PlstEdge",
    "PlstNode",
    "PsTrie",
    "PvStr",
    "PvSym",
    "RefText",
    "TextError",
    "apply_bijection",
    "build_plst",
    "build_plst_with_trie",
    "build_pstrie",
    "classify_nodes",
    "closure_excess_count",
    "closure_stats",
    "compute_fast_links",
    "compute_re_sign",
    "decide",
    "extract_ref_text",
    "format_pv",
    "locate",
    "materialize_label",
    "naive_pmatch",
    "p_equivalent",
    "p_match",
    "p_match_fast",
    "parse_pv",
    "plst_from_trie",
    "prev_encode",
    "re_encode",
    "save_index",
    "load_index",
    "sl_str",
    "stats",
    "text_stats",
]
