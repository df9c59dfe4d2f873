"""Tests for the DFA core: format, execution, minimization, preimages."""

import random

import pytest
from conftest import FIG1, FIG1_DOC, FIG2, assert_minimize_agree, brute_equivalent, brute_min_states, canon

from friendlyops import (
    Dfa,
    accepts,
    accessible_part,
    equivalent,
    minimize,
    parse_dfa,
    preimage_dfa,
    print_dfa,
    to_dot,
)
from friendlyops.errors import ParseError
from friendlyops.experiments import random_dfa


class TestParse:
    def test_golden_document(self):
        assert parse_dfa(FIG1_DOC) == FIG1

    def test_comments_and_order_insensitivity(self):
        doc = """# header comment
        dfa v1
        trans b: 1 1
        states 2   # two states
        initial 0
        alphabet a b
        final 1
        trans a: 1 0
        """
        assert parse_dfa(doc) == FIG1

    def test_degenerate_single_state(self):
        doc = "dfa v1\nalphabet a\nstates 1\ninitial 0\nfinal\ntrans a: 0\n"
        d = parse_dfa(doc)
        assert d.n_states == 1 and not d.finals
        assert not accepts(d, ["a", "a"])

    @pytest.mark.parametrize(
        "doc, message",
        [
            ("nfa v1\n", "malformed header"),
            ("dfa v1\nalphabet a a\nstates 1\ninitial 0\nfinal\ntrans a: 0\n", "duplicate letter"),
            ("dfa v1\nalphabet a\nstates 2\ninitial 0\nfinal\n", "missing transition row"),
            ("dfa v1\nalphabet a b\nstates 2\ninitial 0\nfinal\ntrans a: 1 0\n", "missing transition row"),
            ("dfa v1\nalphabet a\nstates 2\ninitial 0\nfinal\ntrans a: 2 0\n", "image out of range"),
            ("dfa v1\nalphabet a\nstates 2\ninitial 2\nfinal\ntrans a: 0 0\n", "initial out of range"),
            ("dfa v1\nalphabet a\nstates 2\ninitial 0\nfinal 5\ntrans a: 0 0\n", "final out of range"),
            ("dfa v1\nalphabet a\nstates 2\ninitial 0\nfinal\ntrans a: 0\n", "expected 2 images"),
            ("dfa v1\nalphabet a\nstates 2\ninitial 0\nfinal\ntrans b: 0 0\ntrans a: 0 0\n", "unknown letter"),
            ("dfa v1\nalphabet a\nstates 2\ninitial 0\nstates 2\nfinal\ntrans a: 0 0\n", "duplicate 'states'"),
        ],
    )
    def test_errors_carry_line_numbers(self, doc, message):
        with pytest.raises(ParseError, match="line \\d+") as exc:
            parse_dfa(doc)
        assert message in str(exc.value)


class TestPrint:
    def test_golden_document(self):
        assert print_dfa(FIG1) == FIG1_DOC

    def test_parse_print_round_trip_random(self):
        rng = random.Random(1)
        for _ in range(100):
            d = random_dfa(rng, rng.randint(1, 6), tuple("abc"[: rng.randint(1, 3)]))
            assert parse_dfa(print_dfa(d)) == d

    def test_print_parse_idempotent(self):
        doc = print_dfa(FIG2)
        assert print_dfa(parse_dfa(doc)) == doc


class TestAccepts:
    def test_figure_word(self):
        assert accepts(FIG1, ["a", "b"])

    def test_empty_word_is_initial_finality(self):
        assert not accepts(FIG1, [])
        assert accepts(Dfa(("a",), 1, 0, {0}, ((0,),)), [])

    def test_figure_rejection(self):
        # hand-run: 0 -a-> 1 -a-> 0, not final
        assert not accepts(FIG1, ["a", "a"])

    def test_unknown_letter(self):
        with pytest.raises(ValueError, match="unknown letter"):
            accepts(FIG1, ["c"])


class TestAccessiblePart:
    def test_drops_unreachable_sink(self):
        d = Dfa(("a",), 3, 0, {0, 2}, ((0, 2, 2),))
        trimmed = accessible_part(d)
        assert trimmed.n_states == 1
        assert equivalent(d, trimmed)

    def test_fully_accessible_is_renumbering_only(self):
        assert accessible_part(FIG2) == FIG2
        shuffled = Dfa(("a", "b"), 2, 1, {0}, ((0, 1), (0, 0)))
        renumbered = accessible_part(shuffled)
        assert renumbered.n_states == 2 and renumbered.initial == 0
        assert equivalent(shuffled, renumbered)

    def test_figure_square_root_all_reachable(self):
        assert accessible_part(FIG2).n_states == 4


class TestMinimize:
    def test_square_root_figure_merges_to_three(self):
        # independent oracle: signature counting over all short words
        assert brute_min_states(FIG2) == 3
        m = assert_minimize_agree(FIG2)
        assert m.n_states == 3

    def test_already_minimal_fixed_point(self):
        m = assert_minimize_agree(FIG1)
        assert m.n_states == 2
        assert minimize(m) == m

    def test_idempotent_and_smaller_random(self):
        rng = random.Random(2)
        for _ in range(60):
            d = random_dfa(rng, rng.randint(1, 7), tuple("abc"[: rng.randint(1, 3)]))
            m = assert_minimize_agree(d)
            assert m.n_states <= d.n_states
            assert minimize(m) == m
            assert equivalent(d, m)
            assert m.n_states == brute_min_states(d)

    def test_no_finals_collapses(self):
        d = Dfa(("a",), 4, 0, set(), ((1, 2, 3, 0),))
        assert minimize(d).n_states == 1

    def test_unknown_algo(self):
        with pytest.raises(ValueError):
            minimize(FIG1, "brzozowski")


class TestEquivalent:
    def test_reflexive(self):
        assert equivalent(FIG1, FIG1)

    def test_minimization_preserves_language(self):
        assert equivalent(FIG2, minimize(FIG2))

    def test_complement_differs(self):
        flipped = Dfa(FIG1.alphabet, 2, 0, {0}, FIG1.trans)
        assert not equivalent(FIG1, flipped)
        # brute-force word scan agrees and the separating word is "a"
        assert not brute_equivalent(FIG1, flipped)
        assert accepts(FIG1, ["a"]) and not accepts(flipped, ["a"])

    def test_alphabet_order_irrelevant(self):
        reordered = Dfa(("b", "a"), 2, 0, {1}, ((1, 1), (1, 0)))
        assert equivalent(FIG1, reordered)

    def test_alphabet_mismatch(self):
        with pytest.raises(ValueError, match="alphabet mismatch"):
            equivalent(FIG1, Dfa(("a",), 1, 0, set(), ((0,),)))

    def test_agrees_with_brute_force_random(self):
        rng = random.Random(3)
        for _ in range(40):
            a = random_dfa(rng, rng.randint(1, 4), ("a", "b"))
            b = random_dfa(rng, rng.randint(1, 4), ("a", "b"))
            assert equivalent(a, b) == brute_equivalent(a, b)


class TestPreimage:
    def test_identity_map(self):
        same = preimage_dfa(FIG1, {"a": "a", "b": "b"})
        assert same == FIG1

    def test_collapse_to_single_letter(self):
        d = preimage_dfa(FIG1, {"x": "a", "y": "a"})
        assert d.alphabet == ("x", "y")
        # both letters map to the swap, so acceptance is odd word length
        for w in [[], ["x"], ["y"], ["x", "y"], ["y", "y", "x"]]:
            assert accepts(d, w) == (len(w) % 2 == 1)

    def test_unmapped_letter(self):
        with pytest.raises(ValueError, match="unknown letter"):
            preimage_dfa(FIG1, {"x": "z"})


class TestDot:
    def test_figure_golden(self):
        dot = to_dot(FIG1)
        assert dot == (
            "digraph dfa {\n"
            "  rankdir=LR;\n"
            '  __init [shape=none label=""];\n'
            "  __init -> 0;\n"
            "  0 [shape=circle];\n"
            "  1 [shape=doublecircle];\n"
            '  0 -> 1 [label="a,b"];\n'
            '  1 -> 0 [label="a"];\n'
            '  1 -> 1 [label="b"];\n'
            "}\n"
        )

    def test_no_finals_no_double_circles(self):
        d = Dfa(("a",), 2, 0, set(), ((1, 1),))
        assert "doublecircle" not in to_dot(d)

    def test_deterministic(self):
        assert to_dot(FIG2) == to_dot(FIG2)


class TestCanonicalNumbering:
    def test_isomorphic_inputs_same_canonical_form(self):
        # FIG1 with states relabeled by the swap 0<->1
        relabeled = Dfa(("a", "b"), 2, 1, {0}, ((1, 0), (0, 0)))
        assert canon(relabeled) == canon(FIG1)
