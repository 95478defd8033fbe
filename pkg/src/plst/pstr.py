"""Parameterized strings and their prev-encoding.

A parameterized string (p-string) is a sequence of symbols from two disjoint
alphabets: constants, which only match themselves, and parameters, which
match under a consistent renaming.  Two equal-length p-strings p-match iff
some bijection fixing every constant maps one onto the other; prev-encoding
(each parameter replaced by the distance to its previous occurrence, 0 at its
first occurrence) reduces that equivalence to plain string equality.

Public positions are 1-based and slices are inclusive on both ends
(``w.sub(2, 5)`` covers positions 2 through 5); internal storage is 0-based.
All functions here are pure and the string types are immutable, so everything
in this module is safe to share across threads.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping, NamedTuple

CONST = 0
PARAM = 1
NUM = 2

SENTINEL_CHAR = "$"


class PSym(NamedTuple):
    """One p-string symbol: a constant or parameter with a small integer code.

    Constant and parameter code spaces are independent; the kind tag keeps
    them disjoint.
    """

    kind: int
    code: int

    @property
    def is_const(self) -> bool:
        return self.kind == CONST

    @property
    def is_param(self) -> bool:
        return self.kind == PARAM


class PvSym(NamedTuple):
    """One prev-encoded symbol: a constant or a non-negative back-distance."""

    kind: int
    value: int

    @property
    def is_const(self) -> bool:
        return self.kind == CONST

    @property
    def is_num(self) -> bool:
        return self.kind == NUM


def Const(code: int) -> PvSym:
    return PvSym(CONST, code)


def Num(distance: int) -> PvSym:
    if distance < 0:
        raise ValueError(f"back-distance must be non-negative, got {distance}")
    return PvSym(NUM, distance)


class _SymString:
    """Immutable symbol sequence with 1-based, inclusive-slice accessors."""

    __slots__ = ("syms",)

    def __init__(self, syms: Iterable = ()):
        object.__setattr__(self, "syms", tuple(syms))

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __len__(self) -> int:
        return len(self.syms)

    def __iter__(self) -> Iterator:
        return iter(self.syms)

    def __eq__(self, other) -> bool:
        return type(other) is type(self) and self.syms == other.syms

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.syms))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({list(self.syms)!r})"

    def at(self, i: int):
        """Symbol at 1-based position i."""
        if not 1 <= i <= len(self.syms):
            raise IndexError(f"position {i} out of range 1..{len(self.syms)}")
        return self.syms[i - 1]

    def sub(self, i: int, j: int | None = None):
        """Substring from position i through j, both inclusive and 1-based.

        j defaults to the end; an empty string is returned when i > j.
        """
        if j is None:
            j = len(self.syms)
        if i < 1:
            raise IndexError(f"start position must be >= 1, got {i}")
        return type(self)(self.syms[i - 1 : j])


class PStr(_SymString):
    """A parameterized string: a sequence of PSym."""

    def param_codes(self) -> set[int]:
        return {s.code for s in self.syms if s.kind == PARAM}


class PvStr(_SymString):
    """A prev-encoded string: a sequence of PvSym.

    A canonical prev-encoding has every back-distance strictly smaller than
    its own position; slices taken out of a longer encoding may violate that
    (their distances can point before the slice start), which is exactly what
    re_encode repairs.
    """

    def is_canonical(self) -> bool:
        return all(
            s.kind != NUM or s.value < i for i, s in enumerate(self.syms, 1)
        )


class Alphabet:
    """Character-level declaration of the constant and parameter symbol sets.

    Maps single characters to symbol codes (by position in the declared
    strings, so declarations are reproducible) and back.  The sentinel is a
    constant and is appended to the declaration automatically if missing.
    """

    def __init__(
        self,
        constants: Iterable[str] = "",
        parameters: Iterable[str] = "",
        sentinel: str = SENTINEL_CHAR,
    ):
        constants = list(constants)
        parameters = list(parameters)
        if sentinel in parameters:
            raise ValueError(f"sentinel {sentinel!r} cannot be a parameter")
        if sentinel not in constants:
            constants.append(sentinel)
        overlap = set(constants) & set(parameters)
        if overlap:
            raise ValueError(f"characters declared both ways: {sorted(overlap)}")
        for name, chars in (("constant", constants), ("parameter", parameters)):
            if len(set(chars)) != len(chars):
                raise ValueError(f"duplicate {name} characters in declaration")
        self.sentinel_char = sentinel
        self._const_code = {c: i for i, c in enumerate(constants)}
        self._param_code = {c: i for i, c in enumerate(parameters)}
        self._const_char = constants
        self._param_char = parameters

    @classmethod
    def from_text(
        cls, text: str, parameters: Iterable[str] = "", sentinel: str = SENTINEL_CHAR
    ) -> "Alphabet":
        """Declare the given characters as parameters, everything else constant."""
        params = set(parameters)
        constants = sorted(set(text) - params - {sentinel})
        return cls(constants, sorted(params), sentinel)

    @property
    def constants(self) -> str:
        return "".join(self._const_char)

    @property
    def parameters(self) -> str:
        return "".join(self._param_char)

    @property
    def sentinel(self) -> PSym:
        return PSym(CONST, self._const_code[self.sentinel_char])

    def symbol(self, ch: str) -> PSym:
        if ch in self._param_code:
            return PSym(PARAM, self._param_code[ch])
        if ch in self._const_code:
            return PSym(CONST, self._const_code[ch])
        raise ValueError(f"character {ch!r} is not declared in the alphabet")

    def char(self, sym: PSym) -> str:
        table = self._param_char if sym.kind == PARAM else self._const_char
        try:
            return table[sym.code]
        except IndexError:
            raise ValueError(f"{sym!r} has no character in this alphabet") from None

    def encode(self, text: str) -> PStr:
        undeclared = sorted(
            set(text) - set(self._const_code) - set(self._param_code)
        )
        if undeclared:
            raise ValueError(f"undeclared characters in text: {undeclared}")
        return PStr(self.symbol(c) for c in text)

    def decode(self, w: PStr) -> str:
        return "".join(self.char(s) for s in w)


def prev_encode(w: PStr) -> PvStr:
    """Prev-encoding: constants copied, each parameter replaced by the
    distance to its previous occurrence (0 at the first occurrence)."""
    last: dict[int, int] = {}
    out = []
    for i, s in enumerate(w, 1):
        if s.kind == CONST:
            out.append(PvSym(CONST, s.code))
        else:
            k = last.get(s.code)
            out.append(PvSym(NUM, 0 if k is None else i - k))
            last[s.code] = i
    return PvStr(out)


def re_encode(u: PvStr, k: int = 1) -> PvStr:
    """k-re-encoding: zero every back-distance that reaches left of the
    window starting at position k, i.e. every value >= i - k + 1."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    out = [
        PvSym(NUM, 0) if (s.kind == NUM and s.value >= i - k + 1) else s
        for i, s in enumerate(u, 1)
    ]
    return PvStr(out)


def sl_str(u: PvStr) -> PvStr:
    """Suffix-link image of a pv-string: drop the first symbol, re-encode.

    For any p-string w, sl_str(prev_encode(w)) == prev_encode(w.sub(2)).
    """
    if len(u) == 0:
        raise ValueError("suffix-link image of the empty string is undefined")
    return re_encode(u.sub(2), 1)


def apply_bijection(w: PStr, f: Mapping[int, int]) -> PStr:
    """Rename the parameters of w through f (constants stay fixed).

    f maps parameter codes to parameter codes and must be injective on the
    codes that occur in w; codes missing from f are left unchanged.
    """
    seen: dict[int, int] = {}
    out = []
    for s in w:
        if s.kind == CONST:
            out.append(s)
            continue
        img = f.get(s.code, s.code)
        prior = seen.setdefault(img, s.code)
        if prior != s.code:
            raise ValueError(
                f"not injective on parameters of w: {prior} and {s.code} both map to {img}"
            )
        out.append(PSym(PARAM, img))
    return PStr(out)


def p_equivalent(w1: PStr, w2: PStr) -> bool:
    """True iff w1 and w2 p-match (equal up to a parameter renaming)."""
    return len(w1) == len(w2) and prev_encode(w1) == prev_encode(w2)


def format_pv(u: PvStr, alphabet: Alphabet | None = None) -> str:
    """Compact display form: constants as characters (or #code), distances
    as decimal digits; tokens are space-separated if any needs >1 char."""
    toks = []
    for s in u:
        if s.kind == NUM:
            toks.append(str(s.value))
        elif alphabet is not None:
            toks.append(alphabet.char(PSym(CONST, s.value)))
        else:
            toks.append(f"#{s.value}")
    sep = " " if any(len(t) > 1 for t in toks) else ""
    return sep.join(toks)


def parse_pv(text: str, alphabet: Alphabet) -> PvStr:
    """Inverse of format_pv for single-character tokens: digits become
    back-distances, any other character a constant of the alphabet."""
    out = []
    for ch in text:
        if ch.isdigit():
            out.append(PvSym(NUM, int(ch)))
        else:
            sym = alphabet.symbol(ch)
            if sym.kind != CONST:
                raise ValueError(f"{ch!r} is a parameter; pv-strings hold constants only")
            out.append(PvSym(CONST, sym.code))
    return PvStr(out)
