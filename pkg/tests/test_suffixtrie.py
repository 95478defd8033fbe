"""Trie construction, classification, oracles, closure counting."""

import random

import numpy as np
import pytest

from plst import (
    Alphabet,
    NodeBudgetExceeded,
    PStr,
    TextError,
    build_pstrie,
    classify_nodes,
    closure_excess_count,
    closure_stats,
    naive_pmatch,
    prev_encode,
    sl_str,
)
from plst.corpus import append_sentinel, closure_blowup, closure_blowup_chars, tag_text
from conftest import encode, random_text
from _reference import RefIndex, ref_pmatch_positions


class TestTinyTries:
    def test_constant_two_symbol_text(self):
        text, _ = encode("a$")
        trie = build_pstrie(text)
        strings = {tuple(trie.node_string(x)) for x in range(trie.size)}
        a = prev_encode(text)
        assert strings == {(), (a.at(1),), (a.at(1), a.at(2)), (a.at(2),)}
        assert trie.size == 4

    def test_parameter_two_symbol_text(self):
        text, _ = encode("x$", "x")
        trie = build_pstrie(text)
        a = prev_encode(text)
        strings = {tuple(trie.node_string(x)) for x in range(trie.size)}
        assert strings == {(), (a.at(1),), (a.at(1), a.at(2)), (a.at(2),)}

    def test_unary_text_node_count(self):
        for n in (1, 2, 7, 33, 64):
            text, _ = encode("a" * n + "$")
            assert build_pstrie(text).size == 2 * n + 2


class TestTrieAgainstEnumeration:
    @pytest.mark.parametrize(
        "s,params",
        [
            ("xyabzwabzxbz$", "xyzw"),
            ("uvvvauuvb$", "uv"),
            ("auvaubuavbv$", "uv"),
            ("abaabaa$", ""),
            ("uuuuu$", "u"),
        ],
    )
    def test_node_set_matches(self, s, params):
        text, _ = encode(s, params)
        trie = build_pstrie(text)
        ref = RefIndex(text)
        strings = {tuple(trie.node_string(x)) for x in range(trie.size)}
        assert strings == ref.nodes

    def test_random_texts_match(self):
        rnd = random.Random(20240)
        for _ in range(25):
            text, _, _, _ = random_text(rnd, max_n=40)
            trie = build_pstrie(text)
            ref = RefIndex(text)
            strings = {tuple(trie.node_string(x)) for x in range(trie.size)}
            assert strings == ref.nodes
            classes = classify_nodes(trie)
            by_kind = {
                "type1": ref.type1,
                "type2": ref.type2,
                "selected": ref.selected,
            }
            for name, want in by_kind.items():
                got = {
                    tuple(trie.node_string(x))
                    for x in np.nonzero(getattr(classes, name))[0]
                }
                assert got == want, name

    def test_suffix_targets_are_sl_images(self):
        rnd = random.Random(7)
        for _ in range(15):
            text, _, _, _ = random_text(rnd, max_n=30)
            trie = build_pstrie(text)
            for x in range(1, trie.size):
                want = sl_str(trie.node_string(x))
                assert trie.node_string(int(trie.suffix_target[x])) == want

    def test_leaves_hold_distinct_suffixes(self):
        text, _ = encode("uvabuvab$", "uv")
        trie = build_pstrie(text)
        classes = classify_nodes(trie)
        leaves = np.nonzero(classes.leaf)[0]
        numbers = sorted(trie.suffix_number(int(x)) for x in leaves)
        assert numbers == list(range(1, len(text) + 1))


class TestSentinelValidation:
    def test_repeated_final_symbol(self):
        alphabet = Alphabet(constants="ab")
        with pytest.raises(TextError):
            build_pstrie(alphabet.encode("aba"))

    def test_any_unique_final_constant_serves_as_sentinel(self):
        alphabet = Alphabet(constants="ab")
        assert build_pstrie(alphabet.encode("aab")).size == 6

    def test_interior_sentinel(self):
        alphabet = Alphabet(constants="ab")
        with pytest.raises(TextError):
            build_pstrie(alphabet.encode("a$b$"))

    def test_parameter_final_symbol(self):
        alphabet = Alphabet(constants="a", parameters="x")
        with pytest.raises(TextError):
            build_pstrie(alphabet.encode("ax"))

    def test_empty_text(self):
        with pytest.raises(TextError):
            build_pstrie(PStr())

    def test_node_budget(self):
        text, _ = encode("ab" * 40 + "$")
        with pytest.raises(NodeBudgetExceeded):
            build_pstrie(text, node_budget=100)


class TestNaivePmatch:
    def test_worked_example(self):
        text, alphabet = encode("auvaubuavbv", "uvxy")
        pattern = alphabet.encode("xayby")
        assert naive_pmatch(text, pattern) == [3, 7]

    def test_empty_pattern(self):
        text, _ = encode("abc")
        assert naive_pmatch(text, PStr()) == [1, 2, 3]

    def test_long_pattern(self):
        text, alphabet = encode("ab")
        assert naive_pmatch(text, alphabet.encode("aba")) == []

    def test_agrees_with_bijection_search(self):
        rnd = random.Random(99)
        for _ in range(40):
            text, alphabet, s, params = random_text(rnd, max_n=25)
            m = rnd.randint(0, 6)
            chars = (alphabet.constants.replace("$", "") + alphabet.parameters)
            ps = "".join(rnd.choice(chars) for _ in range(m))
            pattern = alphabet.encode(ps)
            assert naive_pmatch(text, pattern) == ref_pmatch_positions(text, pattern)


class TestClosure:
    def test_adversarial_family_matches_figure(self):
        text = append_sentinel(closure_blowup(3))
        assert closure_excess_count(text) == 12

    def test_matches_reference_enumeration(self):
        for i in (2, 3, 4):
            text = append_sentinel(closure_blowup(i))
            assert closure_excess_count(text) == RefIndex(text).closure_excess()

    def test_constant_texts_have_closed_node_set(self):
        rnd = random.Random(5)
        for _ in range(10):
            n = rnd.randint(1, 40)
            s = "".join(rnd.choice("ab") for _ in range(n))
            text = tag_text(s, "constant", sentinel=True)
            assert closure_excess_count(text) == 0

    def test_quadratic_growth(self):
        counts = {
            i: closure_excess_count(append_sentinel(closure_blowup(i)))
            for i in range(2, 9)
        }
        # computed by enumeration (cross-checked against RefIndex above);
        # fits 2n(n-1) exactly
        assert counts == {2: 4, 3: 12, 4: 24, 5: 40, 6: 60, 7: 84, 8: 112}
        diffs = [
            abs(counts[i + 1] / counts[i] - ((i + 1) / i) ** 2) for i in range(2, 8)
        ]
        assert diffs == sorted(diffs, reverse=True)
        assert diffs[-1] < 0.05

    def test_closure_size_reported(self):
        text = append_sentinel(closure_blowup(3))
        cs = closure_stats(text)
        assert cs.excess == 12
        assert cs.closure_size >= cs.type1
        assert cs.closure_size - cs.excess <= cs.type1 + cs.type2


class TestRendering:
    def test_canonical_small_instance(self):
        text, params = closure_blowup_chars(3)
        assert text == "taubvctaubvcwaxbycz"
        assert params == "tuvwxyz"
