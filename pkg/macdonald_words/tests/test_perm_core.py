"""
Tests for permutations, Rothe diagrams and dominance.
"""
import itertools
import unittest

from hypothesis import given, strategies as st

from macdonald_words.perm_core import (
    Permutation,
    PermutationError,
    compose,
    conjugate_partition,
    crossing_pairs,
    dominant_from_partition,
    from_lehmer_code,
    is_dominant,
    lehmer_code,
    length,
    minimal_ambient,
    rothe_diagram,
    transposition,
)
from macdonald_words.tableau_chain import generate_partitions
from macdonald_words.word_diagram import permutation_of


def all_permutations(n):
    return [Permutation(p) for p in itertools.permutations(range(1, n + 1))]


def has_132(p):
    values = p.one_line
    return any(
        values[i] < values[k] < values[j]
        for i, j, k in itertools.combinations(range(len(values)), 3)
    )


class TestPermutation(unittest.TestCase):
    def test_parse_and_str(self):
        """Compact and separated forms parse to the same permutation."""
        test_cases = [
            ("4213", (4, 2, 1, 3)),
            ("4 2 1 3", (4, 2, 1, 3)),
            ("4,2,1,3", (4, 2, 1, 3)),
            ("", ()),
        ]
        for text, expected in test_cases:
            with self.subTest(text=text):
                self.assertEqual(Permutation.parse(text).one_line, expected)
        self.assertEqual(str(Permutation.parse("4213")), "4213")

    def test_rejects_non_bijection(self):
        """Repeated or out-of-range values are rejected."""
        for values in [(1, 1), (0, 1), (2, 3)]:
            with self.subTest(values=values):
                with self.assertRaises(PermutationError):
                    Permutation(values)

    def test_inverse_and_padding(self):
        p = Permutation.parse("4213")
        self.assertEqual(compose(p, p.inverse()), Permutation.identity(4))
        self.assertEqual(p.padded(6).one_line, (4, 2, 1, 3, 5, 6))


class TestCompose(unittest.TestCase):
    def test_examples(self):
        """Composition x -> p(q(x)) on the documented cases."""
        self.assertEqual(compose(Permutation.identity(4), Permutation.parse("4213")), Permutation.parse("4213"))
        self.assertEqual(compose(Permutation.parse("213"), Permutation.parse("213")), Permutation.identity(3))

    def test_word_product_convention(self):
        """s_3 ∘ s_1 ∘ s_2 ∘ s_1 is the permutation of the word (3,1,2,1)."""
        product = Permutation.identity(4)
        for h in (3, 1, 2, 1):
            product = compose(product, transposition(h, h + 1, 4))
        self.assertEqual(product, Permutation.parse("4213"))
        self.assertEqual(product, permutation_of((3, 1, 2, 1)))

    def test_size_mismatch(self):
        with self.assertRaises(PermutationError):
            compose(Permutation.identity(2), Permutation.identity(3))


class TestLengthAndDiagram(unittest.TestCase):
    def test_length(self):
        test_cases = [("1234", 0), ("4213", 4), ("4312", 5)]
        for text, expected in test_cases:
            with self.subTest(p=text):
                self.assertEqual(length(Permutation.parse(text)), expected)

    def test_rothe_diagram_examples(self):
        """Cells follow the inversion rule (π(j), i)."""
        test_cases = [
            ("2413", {(1, 1), (1, 2), (3, 2)}),
            ("123", set()),
            ("4312", {(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)}),
            ("4213", {(1, 1), (1, 2), (2, 1), (3, 1)}),
        ]
        for text, cells in test_cases:
            with self.subTest(p=text):
                self.assertEqual(set(rothe_diagram(Permutation.parse(text)).cells), cells)

    def test_shapes(self):
        self.assertEqual(rothe_diagram(Permutation.parse("4213")).shape(), (2, 1, 1))
        self.assertEqual(rothe_diagram(Permutation.parse("4312")).shape(), (2, 2, 1))
        self.assertFalse(rothe_diagram(Permutation.parse("2413")).is_young())

    def test_diagram_size_is_length(self):
        """|D(π)| = ℓ(π) over S_n, n <= 6."""
        for n in range(1, 7):
            for p in all_permutations(n):
                self.assertEqual(len(rothe_diagram(p)), length(p))

    def test_dominance_matches_young_diagram(self):
        """132-avoidance agrees with the diagram being a Young diagram, n <= 6."""
        for n in range(1, 7):
            for p in all_permutations(n):
                with self.subTest(p=str(p)):
                    self.assertEqual(is_dominant(p), rothe_diagram(p).is_young())
                    self.assertEqual(is_dominant(p), not has_132(p))

    def test_dominance_examples(self):
        test_cases = [("4213", True), ("2413", False), ("123", True)]
        for text, expected in test_cases:
            with self.subTest(p=text):
                self.assertEqual(is_dominant(Permutation.parse(text)), expected)


class TestDominantFromPartition(unittest.TestCase):
    def test_examples(self):
        test_cases = [
            ((2, 1, 1), 4, "4213"),
            ((2, 2, 1), 4, "4312"),
            ((), 3, "123"),
            ((2,), 3, "231"),
        ]
        for shape, n, expected in test_cases:
            with self.subTest(shape=shape):
                self.assertEqual(dominant_from_partition(shape, n), Permutation.parse(expected))

    def test_ambient_too_small(self):
        with self.assertRaises(PermutationError):
            dominant_from_partition((2, 2, 1), 3)

    def test_bijection_with_dominant_permutations(self):
        """Shapes fitting in S_n correspond one-to-one with dominant elements, n <= 6."""
        for n in range(1, 7):
            dominant = {p for p in all_permutations(n) if is_dominant(p)}
            built = set()
            for k in range(0, n * (n - 1) // 2 + 1):
                for shape in generate_partitions(k):
                    if minimal_ambient(shape) <= n:
                        p = dominant_from_partition(shape, n)
                        self.assertEqual(rothe_diagram(p).shape(), shape)
                        built.add(p)
            self.assertEqual(built, dominant)

    def test_lehmer_code_of_dominant_is_conjugate(self):
        p = dominant_from_partition((3, 1), 5)
        self.assertEqual(lehmer_code(p), conjugate_partition((3, 1)) + (0, 0))


class TestCrossingPairs(unittest.TestCase):
    def test_examples(self):
        test_cases = [
            ("312", {(1, 3), (2, 3)}),
            ("123", set()),
            ("4213", {(1, 2), (1, 4), (2, 4), (3, 4)}),
        ]
        for text, expected in test_cases:
            with self.subTest(p=text):
                self.assertEqual(crossing_pairs(Permutation.parse(text)), expected)


@given(st.permutations(list(range(1, 7))))
def test_crossing_pairs_count_inversions(values):
    p = Permutation(tuple(values))
    assert len(crossing_pairs(p)) == length(p)


@given(st.permutations(list(range(1, 8))))
def test_lehmer_code_round_trip(values):
    p = Permutation(tuple(values))
    assert from_lehmer_code(lehmer_code(p)) == p
    assert sum(lehmer_code(p)) == length(p)


if __name__ == '__main__':
    unittest.main()
