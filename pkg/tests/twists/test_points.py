import unittest

from common.constants import Component, Model
from common.exceptions import CurveValidationError
from twists.curves import TwistCurve
from twists.points import IntegralPoint, classify_point, gcd_decompose, integral_points
from tests.twists.twists_setup import PARTIAL_D, PARTIAL_FAMILY, PARTIAL_POINT, brute_points, mordell


class TestIntegralPoints(unittest.TestCase):
    def test_mordell_twists(self):
        self.assertEqual(integral_points(mordell(1), 100), [(-1, 0), (0, -1), (0, 1), (2, -3), (2, 3)])
        self.assertEqual(integral_points(mordell(2), 40), [(-2, 0), (1, -3), (1, 3), (2, -4), (2, 4)])
        self.assertIn((46, 312), integral_points(mordell(2), 46))

    def test_partial_model_point(self):
        A, B, model = PARTIAL_FAMILY
        points = integral_points(TwistCurve(A, B, PARTIAL_D, model), 200)
        x, y = PARTIAL_POINT
        self.assertIn((x, y), points)
        self.assertIn((x, -y), points)

    def test_matches_brute_force(self):
        for A in range(-3, 4):
            for B in range(-3, 4):
                if 4 * A**3 + 27 * B * B == 0:
                    continue
                for D in [1, 2, 3, -1, -2]:
                    curve = TwistCurve(A, B, D, Model.SHORT)
                    with self.subTest(A=A, B=B, D=D):
                        self.assertEqual(set(integral_points(curve, 200)), brute_points(curve, -50, 200))

    def test_full_model_compact_oval(self):
        points = integral_points(TwistCurve(1, 2, 1, Model.FULL), 50)
        self.assertEqual(set(brute_points(TwistCurve(1, 2, 1, Model.FULL), -10, 50)), set(points))
        self.assertIn((0, 0), points)
        self.assertIn((1, 0), points)

    def test_bound_must_be_positive(self):
        with self.assertRaises(CurveValidationError):
            integral_points(mordell(1), 0)

    def test_points_are_namedtuples(self):
        self.assertIsInstance(integral_points(mordell(1), 10)[0], IntegralPoint)


class TestClassifyPoint(unittest.TestCase):
    def test_torsion_flags(self):
        record = classify_point(mordell(1), (-1, 0))
        self.assertTrue(record.is_torsion)
        self.assertEqual(record.flags, "TU")
        self.assertEqual(classify_point(mordell(2), (2, 4)).flags, "NU")

    def test_components(self):
        curve = TwistCurve(1, 2, 1, Model.FULL)
        self.assertEqual(classify_point(curve, (0, 0)).component, Component.COMPACT)
        self.assertEqual(classify_point(curve, (1, 0)).component, Component.COMPACT)
        self.assertEqual(classify_point(curve, (2, 0)).component, Component.UNBOUNDED)

    def test_gcd_field(self):
        self.assertEqual(classify_point(mordell(2), (2, 4)).g, 2)

    def test_off_curve(self):
        with self.assertRaises(CurveValidationError):
            classify_point(mordell(2), (2, 5))


class TestGcdDecompose(unittest.TestCase):
    def test_examples(self):
        self.assertEqual(gcd_decompose((2, 4), mordell(2)), (2, 1, 1, 1))
        self.assertEqual(gcd_decompose((2, 3), mordell(1)), (1, 2, 1, 3))

    def test_descended_equation(self):
        for D in [1, 2, 3, 5, 6, 7, -2, -7]:
            curve = mordell(D)
            for x, y in integral_points(curve, 500):
                decomp = gcd_decompose((x, y), curve)
                with self.subTest(D=D, point=(x, y)):
                    self.assertEqual(decomp.g * decomp.x, x)
                    self.assertEqual(decomp.g * decomp.D, D)
                    self.assertEqual(decomp.g * decomp.y * decomp.y, curve.cubic(decomp.x, decomp.D))

    def test_off_curve(self):
        with self.assertRaises(CurveValidationError):
            gcd_decompose((1, 1), mordell(1))


if __name__ == "__main__":
    unittest.main()
