import unittest

from common.exceptions import CurveValidationError
from quartic.forms import BinaryQuartic, covariant_G, invariants
from quartic.mordell import default_lowering_modulus, lower_disc, mordell_form, on_short_twist
from tests.quartic.quartic_setup import LOWERED_D, LOWERED_F, LOWERED_G, LOWERED_POINT


class TestMordellForm(unittest.TestCase):
    def test_examples(self):
        self.assertEqual(mordell_form((0, 1), -2, 1, 1), BinaryQuartic(1, 0, 0, 2, 8))
        self.assertEqual(mordell_form((2, 4), 0, 1, 2), BinaryQuartic(1, 0, -2, 8, -12))

    def test_invariants(self):
        """I = -4 A D^2 and J = -4 B D^3"""
        cases = [((0, 1), -2, 1, 1), ((2, 4), 0, 1, 2), (LOWERED_POINT, 0, 1, LOWERED_D), ((2, 3), 0, 1, 1)]
        for point, A, B, D in cases:
            with self.subTest(point=point, D=D):
                self.assertTrue(on_short_twist(point, A, B, D))
                inv = invariants(mordell_form(point, A, B, D))
                self.assertEqual((inv.I, inv.J), (-4 * A * D * D, -4 * B * D**3))

    def test_off_curve(self):
        with self.assertRaises(CurveValidationError):
            mordell_form((1, 1), 0, 1, 1)


class TestLowerDisc(unittest.TestCase):
    def test_pipeline_fixture(self):
        lowered = lower_disc(LOWERED_POINT, 0, 1, LOWERED_D)
        self.assertEqual(lowered.k, 4)
        self.assertEqual(lowered.form, LOWERED_F)
        self.assertEqual(lowered.form(1, 0), 3)
        inv = invariants(lowered.form)
        self.assertEqual((inv.I, inv.J), (0, -4 * 35**3))

    def test_covariant_divisible_by_g(self):
        G = covariant_G(LOWERED_F)
        self.assertEqual(G, LOWERED_G)
        self.assertTrue(all(c % 35 == 0 for c in G))

    def test_default_modulus(self):
        self.assertEqual(default_lowering_modulus(LOWERED_POINT, LOWERED_D), 3)
        self.assertEqual(default_lowering_modulus((2, 4), 2), 1)

    def test_trivial_modulus(self):
        lowered = lower_disc((2, 4), 0, 1, 2, M=1)
        self.assertEqual(lowered, (mordell_form((2, 4), 0, 1, 2), 0))

    def test_bad_modulus(self):
        for M in [2, 4, 5, 11, -3]:
            with self.subTest(M=M), self.assertRaises(CurveValidationError):
                lower_disc(LOWERED_POINT, 0, 1, LOWERED_D, M=M)


if __name__ == "__main__":
    unittest.main()
