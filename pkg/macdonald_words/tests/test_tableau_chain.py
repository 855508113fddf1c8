"""
Tests for shapes, standard tableaux and tableau-driven chains.
"""
import unittest

from macdonald_words.perm_core import BoundExceededError, Permutation, dominant_from_partition, is_dominant, length
from macdonald_words.tableau_chain import (
    StandardTableau,
    TableauChain,
    TableauError,
    chain_from_tableau,
    enumerate_syt,
    generate_partitions,
    hook_length_count,
    insertion_wire,
    parse_shape,
    row_major_tableau,
    staircase,
    wire_pair,
)

SHAPE_221_TABLEAU = StandardTableau(((1, 3), (2, 5), (4,)))


class TestShapes(unittest.TestCase):
    def test_parse_shape(self):
        test_cases = [
            ("2,2,1", (2, 2, 1)),
            ("3 1", (3, 1)),
            ("(2,1)", (2, 1)),
            ("", ()),
            ("0", ()),
        ]
        for text, expected in test_cases:
            with self.subTest(text=text):
                self.assertEqual(parse_shape(text), expected)

    def test_parse_shape_errors(self):
        for text in ["2,3", "a,1", "-1"]:
            with self.subTest(text=text):
                with self.assertRaises(TableauError):
                    parse_shape(text)

    def test_staircase(self):
        self.assertEqual(staircase(4), (3, 2, 1))
        self.assertEqual(staircase(1), ())
        with self.assertRaises(TableauError):
            staircase(0)

    def test_generate_partitions(self):
        self.assertEqual(list(generate_partitions(4)), [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)])
        self.assertEqual(list(generate_partitions(0)), [()])
        self.assertEqual(len(list(generate_partitions(8))), 22)


class TestStandardTableau(unittest.TestCase):
    def test_validation(self):
        """Only fillings increasing along rows and columns by 1..k are accepted."""
        bad = [
            ((2, 1),),
            ((1, 2), (2,)),
            ((1,), (2, 3)),
            ((2, 3), (1, 4)),
        ]
        for rows in bad:
            with self.subTest(rows=rows):
                with self.assertRaises(TableauError):
                    StandardTableau(rows)

    def test_parse_and_json(self):
        tableau = StandardTableau.parse("[[1,3],[2,5],[4]]")
        self.assertEqual(tableau, SHAPE_221_TABLEAU)
        self.assertEqual(tableau.shape, (2, 2, 1))
        self.assertEqual(tableau.size, 5)
        self.assertEqual(StandardTableau.parse(tableau.to_json()), tableau)
        for text in ["[[1,3],", '{"rows": 1}']:
            with self.subTest(text=text):
                with self.assertRaises(TableauError):
                    StandardTableau.parse(text)

    def test_row_major(self):
        test_cases = [
            ((2, 1), ((1, 2), (3,))),
            ((1, 1, 1), ((1,), (2,), (3,))),
            ((2, 2, 1), ((1, 2), (3, 4), (5,))),
        ]
        for shape, rows in test_cases:
            with self.subTest(shape=shape):
                self.assertEqual(row_major_tableau(shape).rows, rows)


class TestEnumerateSyt(unittest.TestCase):
    def test_examples(self):
        test_cases = [((2, 1), 2), ((1,), 1), ((2, 2), 2), ((), 1)]
        for shape, count in test_cases:
            with self.subTest(shape=shape):
                self.assertEqual(len(enumerate_syt(shape)), count)

    def test_counts_match_hook_length_formula(self):
        for k in range(1, 8):
            for shape in generate_partitions(k):
                with self.subTest(shape=shape):
                    tableaux = enumerate_syt(shape)
                    self.assertEqual(len(tableaux), hook_length_count(shape))
                    self.assertEqual(len(set(tableaux)), len(tableaux))

    def test_bound(self):
        with self.assertRaises(BoundExceededError):
            enumerate_syt((3, 2), max_cells=4)


class TestChain(unittest.TestCase):
    def test_chain_from_tableau(self):
        test_cases = [
            (SHAPE_221_TABLEAU, [(), (1,), (1, 1), (2, 1), (2, 1, 1), (2, 2, 1)]),
            (StandardTableau(((1,),)), [(), (1,)]),
            (row_major_tableau((2, 2)), [(), (1,), (2,), (2, 1), (2, 2)]),
        ]
        for tableau, expected in test_cases:
            with self.subTest(tableau=tableau.rows):
                self.assertEqual(chain_from_tableau(tableau), expected)

    def test_insertion_wires(self):
        self.assertEqual([insertion_wire(SHAPE_221_TABLEAU, m) for m in range(1, 6)], [1, 2, 1, 3, 2])
        self.assertEqual(insertion_wire(row_major_tableau((2, 2)), 3), 2)
        with self.assertRaises(TableauError):
            insertion_wire(SHAPE_221_TABLEAU, 6)

    def test_wire_pair(self):
        test_cases = [
            (("213", "312"), (2, 3)),
            (("123", "213"), (1, 2)),
            (("3214", "4213"), (3, 4)),
        ]
        for (prev, nxt), expected in test_cases:
            with self.subTest(prev=prev, next=nxt):
                self.assertEqual(wire_pair(Permutation.parse(prev), Permutation.parse(nxt)), expected)
        with self.assertRaises(TableauError):
            wire_pair(Permutation.parse("123"), Permutation.parse("312"))

    def test_shape_221_chain(self):
        chain = TableauChain(SHAPE_221_TABLEAU)
        self.assertEqual(chain.n, 5)
        self.assertEqual(chain.k, 5)
        self.assertEqual(chain.wires, (1, 2, 1, 3, 2))
        self.assertEqual([r for r, _ in chain.pairs], [1, 2, 1, 3, 2])
        self.assertEqual(chain.permutation(0), Permutation.identity(5))
        self.assertEqual(chain.final_permutation, dominant_from_partition((2, 2, 1), 5))

    def test_ambient_too_small(self):
        with self.assertRaises(TableauError):
            TableauChain(SHAPE_221_TABLEAU, n=3)

    def test_every_small_chain(self):
        """Each step adds one cell, stays dominant and moves a pair starting at the insertion wire."""
        for k in range(1, 7):
            for shape in generate_partitions(k):
                for tableau in enumerate_syt(shape):
                    chain = TableauChain(tableau)
                    with self.subTest(tableau=tableau.rows):
                        for m, p in enumerate(chain.permutations):
                            self.assertTrue(is_dominant(p))
                            self.assertEqual(length(p), m)
                        self.assertEqual([r for r, _ in chain.pairs], list(chain.wires))
                        self.assertEqual(chain.permutations[-1], chain.final_permutation)


if __name__ == '__main__':
    unittest.main()
