import unittest
from fractions import Fraction
from itertools import product
from math import gcd, prod

from arith.integers import is_squarefree
from common.constants import Model
from common.exceptions import CompactComponentError, DescentError
from descent.full_torsion import (
    FullTorsionDecomp,
    RMatrix,
    full2_decompose,
    full2_recover,
    indicator_triple,
    local_conditions_full,
    r_matrix,
)
from twists.curves import TwistCurve
from tests.descent.descent_setup import FULL_FAMILIES, scanned_points
from tests.twists.twists_setup import FULL_D, FULL_FAMILY, FULL_POINT


def full_curve(D: int) -> TwistCurve:
    A, B, model = FULL_FAMILY
    return TwistCurve(A, B, D, model)


def coprime_triples(limit: int):
    """Ordered pairwise coprime triples of odd square-free integers with product <= limit."""
    odd = [n for n in range(1, limit + 1, 2) if is_squarefree(n)]
    for n1 in odd:
        for n2 in odd:
            if n1 * n2 > limit or gcd(n1, n2) != 1:
                continue
            for n3 in odd:
                if n1 * n2 * n3 > limit:
                    break
                if gcd(n1 * n2, n3) == 1:
                    yield n1, n2, n3


class TestFull2Decompose(unittest.TestCase):
    def test_example(self):
        decomp = full2_decompose(FULL_POINT, full_curve(FULL_D))
        self.assertEqual((decomp.g, decomp.xt, decomp.Dt), (14, 9, 1))
        self.assertEqual(decomp.G, (1, 2, 7))
        self.assertEqual(decomp.y, (3, 2, 1))
        self.assertEqual(decomp.delta, (1, 1, 1))
        self.assertEqual(decomp.values, (9, 8, 7))
        self.assertEqual(decomp.point, (126, 14, 1176))

    def test_compact_point(self):
        # (4, 8) on y^2 = x (x - 6)(x - 12) has x < B D
        with self.assertRaises(CompactComponentError):
            full2_decompose((4, 8), full_curve(6))

    def test_torsion_point(self):
        with self.assertRaises(DescentError):
            full2_decompose((28, 0), full_curve(FULL_D))

    def test_wrong_model(self):
        with self.assertRaises(DescentError):
            full2_decompose((148, 2738), TwistCurve(1, 1, 111, Model.PARTIAL))

    def test_negative_twist(self):
        with self.assertRaises(DescentError):
            full2_decompose((0, 0), full_curve(-1))

    def test_inconsistent_decomposition(self):
        with self.assertRaises(DescentError):
            FullTorsionDecomp(1, 2, 14, 1, (1, 2, 7), (3, 2, 2), (1, 1, 1))

    def test_scanned_points(self):
        for A, B in FULL_FAMILIES:
            for curve, (x, y) in scanned_points(A, B, Model.FULL, 40, 3000):
                if x < B * curve.D:
                    continue
                decomp = full2_decompose((x, y), curve)
                with self.subTest(A=A, B=B, D=curve.D, x=x):
                    self.assertEqual(prod(decomp.G), decomp.g * prod(decomp.delta) ** 2)
                    v1, v2, v3 = decomp.values
                    self.assertEqual(v1 - v2, A * decomp.Dt)
                    self.assertEqual(v1 - v3, B * decomp.Dt)
                    self.assertEqual(decomp.point, (x, curve.D, y))
                    self.assertEqual(full2_recover((v1, v2), (1, 2), A, B), (x, curve.D, y))
                    self.assertEqual(full2_recover((v2, v3), (2, 3), A, B), (x, curve.D, y))
                    self.assertEqual(full2_recover((v3, v1), (3, 1), A, B), (x, curve.D, y))
                    R = r_matrix(decomp, A, B)
                    self.assertTrue(local_conditions_full(*R.n, R))


class TestFull2Recover(unittest.TestCase):
    def test_examples(self):
        self.assertEqual(full2_recover((9, 8), (1, 2), 1, 2), (126, 14, 1176))
        self.assertEqual(full2_recover((49, 25), (1, 2), 1, 2), (49, 24, 35))

    def test_compact_values(self):
        # D~ = 3, x~ = 4: x~ - 2 D~ < 0
        with self.assertRaises(CompactComponentError):
            full2_recover((4, 1), (1, 2), 1, 2)

    def test_bad_difference(self):
        with self.assertRaises(DescentError):
            full2_recover((8, 9), (1, 2), 1, 2)
        with self.assertRaises(DescentError):
            full2_recover((10, 7), (1, 3), 2, 5)

    def test_bad_pair(self):
        with self.assertRaises(DescentError):
            full2_recover((9, 8), (1, 1), 1, 2)
        with self.assertRaises(DescentError):
            full2_recover((9, 8), (0, 2), 1, 2)


class TestRMatrix(unittest.TestCase):
    def setUp(self):
        self.R = r_matrix(full2_decompose(FULL_POINT, full_curve(FULL_D)), 1, 2)

    def test_example(self):
        self.assertEqual(self.R.gamma, (1, 2, 1))
        self.assertEqual(self.R.n, (1, 1, 7))
        self.assertEqual(
            {k: v for k, v in self.R.entries().items() if k[1] not in "04"},
            {"13": -2, "12": -2, "21": -1, "23": 1, "32": 2, "31": 2},
        )

    def test_border_columns(self):
        self.assertEqual(self.R[1, 0], 1)
        self.assertEqual(self.R[1, 4], 4)
        self.assertEqual(self.R[3, 4], 4)
        self.assertEqual(len(self.R.entries()), 12)

    def test_bad_index(self):
        for index in [(1, 1), (0, 2), (2, 5)]:
            with self.subTest(index=index), self.assertRaises(DescentError):
                self.R[index]


class TestLocalConditionsFull(unittest.TestCase):
    def test_trivial_triple(self):
        self.assertTrue(local_conditions_full(1, 1, 1, RMatrix(1, 2, 1, (1, 1, 1))))

    def test_scanned_example(self):
        R = r_matrix(full2_decompose(FULL_POINT, full_curve(FULL_D)), 1, 2)
        self.assertTrue(local_conditions_full(1, 1, 7, R))

    def test_violation(self):
        # (R32 n1 / 3) = (2 / 3) = -1
        self.assertFalse(local_conditions_full(1, 1, 3, RMatrix(1, 2, 1, (1, 1, 1))))

    def test_invalid_triples(self):
        R = RMatrix(1, 2, 1, (1, 1, 1))
        for n in [(2, 1, 1), (3, 3, 1), (9, 1, 1), (0, 1, 1)]:
            with self.subTest(n=n), self.assertRaises(DescentError):
                local_conditions_full(*n, R)

    def test_indicator_matches_conditions(self):
        triples = list(coprime_triples(500))
        for A, B in FULL_FAMILIES:
            for Dt, gamma in product((1, 2), [(1, 1, 1), (2, 1, 1), (1, 1, 2)]):
                R = RMatrix(A, B, Dt, gamma)
                for n in triples:
                    value = indicator_triple(*n, R)
                    with self.subTest(A=A, B=B, Dt=Dt, gamma=gamma, n=n):
                        self.assertIn(value, (Fraction(0), Fraction(1)))
                        self.assertEqual(value == 1, local_conditions_full(*n, R))


if __name__ == "__main__":
    unittest.main()
