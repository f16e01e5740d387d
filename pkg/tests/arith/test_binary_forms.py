import unittest

from arith.binary_forms import BinaryCubic, evaluate_form, poly_eval, substitute_form
from common.exceptions import FormError

SUM_OF_CUBES = BinaryCubic(1, 0, 0, 1)  # x1^3 + x2^3
IRREDUCIBLE = BinaryCubic(1, 0, -1, 1)  # x1^3 - x1 x2^2 + x2^3
SPLIT = BinaryCubic(0, 1, 1, 0)  # x1 x2 (x1 + x2)


class TestBinaryCubic(unittest.TestCase):
    def test_discriminant(self):
        self.assertEqual(SUM_OF_CUBES.discriminant, -27)
        self.assertEqual(IRREDUCIBLE.discriminant, -23)
        self.assertEqual(SPLIT.discriminant, 1)

    def test_singular_rejected(self):
        """x1^2 x2 has a repeated factor"""
        with self.assertRaises(FormError):
            BinaryCubic(0, 1, 0, 0)

    def test_factor_count(self):
        for cubic, expected in [(SUM_OF_CUBES, 2), (IRREDUCIBLE, 1), (SPLIT, 3)]:
            with self.subTest(cubic=str(cubic)):
                self.assertEqual(cubic.factor_count, expected)

    def test_evaluation_and_dehomogenisation(self):
        self.assertEqual(SUM_OF_CUBES(2, -1), 7)
        self.assertEqual(IRREDUCIBLE.dehomogenize(True), [1, 0, -1, 1])
        self.assertEqual(IRREDUCIBLE.dehomogenize(False), [1, -1, 0, 1])
        self.assertEqual(poly_eval(IRREDUCIBLE.dehomogenize(True), 3), IRREDUCIBLE(3, 1))
        self.assertEqual(poly_eval(IRREDUCIBLE.dehomogenize(False), 3), IRREDUCIBLE(1, 3))

    def test_shear(self):
        sheared = SPLIT.shear(1)
        self.assertEqual(sheared.coefficients, (2, 3, 1, 0))
        for x1 in range(-3, 4):
            for x2 in range(-3, 4):
                self.assertEqual(sheared(x1, x2), SPLIT(x1, x2 + x1))

    def test_parse(self):
        self.assertEqual(BinaryCubic.parse("1,0,0,1"), SUM_OF_CUBES)
        with self.assertRaises(FormError):
            BinaryCubic.parse("1,0,0")
        with self.assertRaises(FormError):
            BinaryCubic.parse("1,a,0,1")


class TestSubstitution(unittest.TestCase):
    def test_binomial(self):
        self.assertEqual(substitute_form((1, 0, 0, 0, 0), 1, 1, 0, 1), (1, 4, 6, 4, 1))

    def test_matches_evaluation(self):
        raw = (3, -1, 4, 1, -5)
        new = substitute_form(raw, 2, 3, 1, 2)
        for x in range(-2, 3):
            for y in range(-2, 3):
                self.assertEqual(evaluate_form(new, x, y), evaluate_form(raw, 2 * x + 3 * y, x + 2 * y))


if __name__ == "__main__":
    unittest.main()
