"""
Tests for little bumps, bump-delete, insert-bump and the wired engine.
"""
import itertools
import unittest

import numpy as np
import pytest
from hypothesis import given, strategies as st

from macdonald_words.bump_engine import (
    DOWN,
    UP,
    BumpError,
    WiredWord,
    bump_delete,
    bump_delete_trace,
    delete_at,
    extended_length,
    index_sets,
    insert_bump,
    insert_bump_at,
    little_bump,
    push_delete,
    push_down,
    push_up,
    row_of_wire,
)
from macdonald_words.growth_sampler import enumerate_insertion_sequences
from macdonald_words.oracle_verify import enumerate_reduced, macdonald_weight
from macdonald_words.perm_core import Permutation, is_dominant
from macdonald_words.tableau_chain import (
    StandardTableau,
    TableauChain,
    enumerate_syt,
    generate_partitions,
    row_major_tableau,
    staircase,
)
from macdonald_words.word_diagram import (
    FormalSum,
    descents,
    find_crossing,
    is_nearly_reduced,
    is_reduced,
    permutation_of,
)

SHAPE_221_TABLEAU = StandardTableau(((1, 3), (2, 5), (4,)))


def reduced_words(n, dominant_only=False):
    for values in itertools.permutations(range(1, n + 1)):
        p = Permutation(values)
        if dominant_only and not is_dominant(p):
            continue
        yield from enumerate_reduced(p)


def small_chains(max_cells):
    for k in range(1, max_cells + 1):
        for shape in generate_partitions(k):
            for tableau in enumerate_syt(shape):
                yield TableauChain(tableau)


class TestPushAndDelete(unittest.TestCase):
    def test_examples(self):
        self.assertEqual(push_up((3, 1, 2, 1), 2), (3, 0, 2, 1))
        self.assertEqual(delete_at((3, 1, 2, 1), 2), (3, 2, 1))
        self.assertEqual(push_down((1, 3, 1, 2, 1), 1), (2, 3, 1, 2, 1))

    def test_errors(self):
        with self.assertRaises(BumpError):
            push_up((0, 1), 1)
        with self.assertRaises(BumpError):
            push_down((1,), 1, n=2)
        for t in (0, 5):
            with self.subTest(t=t):
                with self.assertRaises(BumpError):
                    delete_at((3, 1, 2, 1), t)

    def test_push_delete(self):
        """push_delete splits a_t · X into (a_t - 1) · X + X."""
        test_cases = [
            (((3, 1, 2, 1), 2), FormalSum.of((3, 0, 2, 1), (3, 2, 1))),
            (((1,), 1), FormalSum.of((0,), ())),
            (((2, 1), 1), FormalSum.of((1, 1), (1,))),
        ]
        for (word, t), expected in test_cases:
            with self.subTest(word=word, t=t):
                result = push_delete(word, t)
                self.assertEqual(result, expected)
                self.assertEqual(result.weight(macdonald_weight), macdonald_weight(word))


class TestLittleBump(unittest.TestCase):
    def test_examples(self):
        trace = little_bump((1, 2, 1), 1, UP)
        self.assertEqual(trace.terminal, (0, 2, 1))
        self.assertEqual(trace.pushed, (1,))

        trace = little_bump((2, 1, 2), 3, UP, keep_stages=True)
        self.assertEqual(trace.terminal, (2, 0, 1))
        self.assertEqual(trace.pushed, (3, 2))
        self.assertEqual(trace.stages, ((2, 1, 1), (2, 0, 1)))
        self.assertEqual(trace.last_touched, 2)

    def test_downward(self):
        self.assertEqual(little_bump((1, 1), 1, DOWN).terminal, (2, 1))
        self.assertEqual(little_bump((1, 1), 2, DOWN).terminal, (1, 2))
        with self.assertRaises(BumpError):
            little_bump((1, 1), 1, DOWN, n=2)

    def test_preconditions(self):
        with self.assertRaises(BumpError):
            little_bump((1, 2, 1), 2, UP)
        with self.assertRaises(BumpError):
            little_bump((1, 2, 1), 1, 'sideways')

    def test_no_crossing_moves_twice(self):
        """Pushed positions are distinct and at most |w| for every bump over S_4."""
        for word in reduced_words(4):
            for t in range(1, len(word) + 1):
                if not is_nearly_reduced(word, t):
                    continue
                for direction in (UP, DOWN):
                    try:
                        trace = little_bump(word, t, direction)
                    except BumpError:
                        continue
                    self.assertEqual(len(trace.pushed), len(set(trace.pushed)))
                    self.assertLessEqual(len(trace.pushed), len(word))
                    self.assertTrue(is_reduced(trace.terminal))

    @pytest.mark.slow
    def test_descents_are_preserved(self):
        for word in reduced_words(5):
            before = set(descents(word))
            for t in range(1, len(word) + 1):
                if not is_nearly_reduced(word, t):
                    continue
                for direction in (UP, DOWN):
                    try:
                        terminal = little_bump(word, t, direction).terminal
                    except BumpError:
                        continue
                    self.assertTrue(before <= set(descents(terminal)), msg=f"{word} at {t} {direction}")

    def test_dominant_bumps_reach_row_zero(self):
        """Upward bumps of reduced words of dominant permutations exit through row 0."""
        for word in reduced_words(5, dominant_only=True):
            for t in range(1, len(word) + 1):
                if is_nearly_reduced(word, t):
                    self.assertIn(0, little_bump(word, t, UP).terminal, msg=f"{word} at {t}")


class TestBumpDelete(unittest.TestCase):
    def test_examples(self):
        test_cases = [
            (((2, 1), 1), FormalSum([((1,), 2)])),
            (((1, 2, 1), 1), FormalSum.of((2, 1))),
            (((2, 3, 1, 2, 1), 1), FormalSum.of((3, 1, 2, 1), (1, 3, 2, 1))),
        ]
        for (word, t), expected in test_cases:
            with self.subTest(word=word, t=t):
                result = bump_delete(word, t)
                self.assertEqual(result, expected)
                self.assertEqual(result.weight(macdonald_weight), macdonald_weight(word))

    def test_trace(self):
        trace = bump_delete_trace((2, 3, 1, 2, 1), 1)
        self.assertEqual(trace.positions, (1, 3))
        self.assertEqual(trace.stages, ((2, 3, 1, 2, 1), (1, 3, 1, 2, 1)))
        self.assertEqual(trace.terminal, (1, 3, 0, 2, 1))

    def test_needs_reduced_word(self):
        with self.assertRaises(BumpError):
            bump_delete((1, 1), 1)

    def test_summands_on_dominant_chains(self):
        """Every summand is a reduced word for π_{m-1} and the total weight is μ(w)."""
        for chain in small_chains(5):
            if chain.n > 5:
                continue
            m = chain.k
            previous = chain.permutation(m - 1)
            for word in enumerate_reduced(chain.permutation(m)):
                result = bump_delete(word, find_crossing(word, chain.pair(m)))
                self.assertEqual(result.weight(macdonald_weight), macdonald_weight(word))
                for summand in result.support():
                    self.assertTrue(is_reduced(summand))
                    self.assertEqual(permutation_of(summand, chain.n), previous)


class TestInsertBump(unittest.TestCase):
    def test_examples(self):
        test_cases = [
            (((3, 1, 2, 1), 2, 1), (2, 3, 1, 2, 1)),
            (((1,), 2, 2), (2, 1)),
            (((), 1, 1), (1,)),
            (((1, 3, 2, 1), 2, 3), (2, 3, 1, 2, 1)),
        ]
        for (word, wire, gap), expected in test_cases:
            with self.subTest(word=word, wire=wire, gap=gap):
                self.assertEqual(insert_bump_at(word, wire, gap), expected)

    def test_trace_records_pushes(self):
        trace = insert_bump((1,), 2, 2)
        self.assertEqual(trace.start, (1, 1))
        self.assertEqual(trace.pushed, (1,))
        self.assertEqual(trace.terminal, (2, 1))

    def test_row_of_wire(self):
        self.assertEqual(row_of_wire((1, 3), 2, 3), 1)
        self.assertEqual(row_of_wire((), 3, 1), 3)

    def test_errors(self):
        with self.assertRaises(BumpError):
            insert_bump((1, 1), 1, 1)
        with self.assertRaises(BumpError):
            insert_bump((1,), 1, 3)
        with self.assertRaises(BumpError):
            insert_bump((), 2, 1, n=2)

    def test_reverses_bump_delete(self):
        """Stage j of bump_delete is undone by insert-bump at its position with j pushes."""
        for chain in small_chains(4):
            m = chain.k
            wire = chain.wires[m - 1]
            for word in enumerate_reduced(chain.permutation(m)):
                trace = bump_delete_trace(word, find_crossing(word, chain.pair(m)))
                for j, (position, summand) in enumerate(zip(trace.positions, trace.summands)):
                    forward = insert_bump(summand, wire, position, chain.n)
                    self.assertEqual(forward.terminal, word)
                    self.assertEqual(len(forward.pushed), j)


class TestIndexSets(unittest.TestCase):
    def test_examples(self):
        lower, upper = index_sets(Permutation.identity(3), 1)
        self.assertEqual(lower, {0})
        self.assertEqual(upper, {2})
        self.assertEqual(index_sets(Permutation.parse("321"), 2)[1], set())

    def test_matches_brute_force(self):
        """Covering transpositions agree with extended inversion counts over S_4."""
        for values in itertools.permutations(range(1, 5)):
            p = Permutation(values)
            base = extended_length(p)
            for r in range(1, 5):
                with self.subTest(p=str(p), r=r):
                    lower, upper = index_sets(p, r)
                    self.assertEqual(lower, {i for i in range(0, r) if extended_length(p, i, r) == base + 1})
                    self.assertEqual(upper, {s for s in range(r + 1, 5) if extended_length(p, r, s) == base + 1})

    def test_out_of_range(self):
        with self.assertRaises(BumpError):
            index_sets(Permutation.identity(3), 4)


class TestWiredWord(unittest.TestCase):
    def test_from_word(self):
        wired = WiredWord.from_word((3, 1, 2, 1))
        self.assertEqual(wired.word(), (3, 1, 2, 1))
        self.assertEqual(wired.labels(), [(3, 4), (1, 2), (1, 4), (2, 4)])
        self.assertTrue(wired.is_reduced())
        self.assertEqual(wired.row_of(4, 3), 3)
        self.assertEqual(wired.wire_at(3, 3), 4)
        with self.assertRaises(BumpError):
            WiredWord.from_word((1, 1))

    def test_insert_with_push(self):
        wired = WiredWord.from_word((1, 3, 2, 1), 4)
        self.assertEqual(wired.insert_bump(2, 3), 1)
        self.assertEqual(wired.word(), (2, 3, 1, 2, 1))
        self.assertTrue(wired.index_consistent())

    def test_agrees_with_tuple_engine(self):
        """Replaying every insertion sequence of small chains gives identical words and push counts."""
        chains = [TableauChain(SHAPE_221_TABLEAU)] + [chain for chain in small_chains(4)]
        for chain in chains:
            for seq in enumerate_insertion_sequences(chain.k):
                wired = WiredWord(chain.n)
                word = ()
                for wire, gap in zip(chain.wires, seq):
                    trace = insert_bump(word, wire, gap, chain.n)
                    word = trace.terminal
                    self.assertEqual(wired.insert_bump(wire, gap), len(trace.pushed))
                    self.assertEqual(wired.word(), word)
                self.assertTrue(wired.index_consistent())

    def test_front_insertions_renumber_keys(self):
        """Inserting every crossing at gap 1 exhausts the key spacing and forces a renumbering."""
        chain = TableauChain(row_major_tableau(staircase(12)))
        wired = WiredWord(chain.n)
        word = ()
        for wire in chain.wires:
            trace = insert_bump(word, wire, 1, chain.n)
            word = trace.terminal
            self.assertEqual(wired.insert_bump(wire, 1), len(trace.pushed))
        self.assertEqual(wired.word(), word)
        self.assertTrue(wired.index_consistent())
        self.assertTrue(wired.is_reduced())

    def test_random_gaps_agree_with_tuple_engine(self):
        """Seeded random growths of a 36-crossing staircase match the tuple engine step by step."""
        chain = TableauChain(row_major_tableau(staircase(9)))
        rng = np.random.default_rng(11)
        for _ in range(5):
            wired = WiredWord(chain.n)
            word = ()
            for m, wire in enumerate(chain.wires, 1):
                gap = int(rng.integers(1, m + 1))
                trace = insert_bump(word, wire, gap, chain.n)
                word = trace.terminal
                self.assertEqual(wired.insert_bump(wire, gap), len(trace.pushed))
                self.assertEqual(wired.word(), word)
            self.assertTrue(wired.index_consistent())

    def test_bottom_row_insertion(self):
        wired = WiredWord.from_word((1,), 2)
        with self.assertRaises(BumpError):
            wired.insert_bump(1, 2)


@given(st.sampled_from(list(reduced_words(4, dominant_only=True))), st.data())
def test_push_delete_preserves_weight(word, data):
    if not word:
        return
    t = data.draw(st.integers(min_value=1, max_value=len(word)))
    assert push_delete(word, t).weight(macdonald_weight) == macdonald_weight(word)


if __name__ == '__main__':
    unittest.main()
