import random
import unittest

from common.exceptions import FormError
from quartic.forms import BinaryQuartic, PointedForm, Unimodular, act, act_pointed, invariants, seminvariants
from quartic.reduction import canonical_pointed, reduce, resolvent_root
from tests.quartic.quartic_setup import F_SMALL, LOWERED_F, X4_PLUS_Y4, random_unimodular


class TestReduce(unittest.TestCase):
    def test_already_reduced(self):
        reduced = reduce(X4_PLUS_Y4)
        self.assertEqual(reduced.form, X4_PLUS_Y4)
        self.assertEqual(reduced.gamma, Unimodular.identity())

    def test_random_roundtrip(self):
        """Reducing a random SL2(Z) image restores small seminvariants"""
        rng = random.Random(53)
        for _ in range(25):
            f = act(random_unimodular(rng), F_SMALL)
            reduced = reduce(f)
            with self.subTest(f=str(f)):
                self.assertEqual(act(reduced.gamma, f), reduced.form)
                self.assertEqual(invariants(reduced.form), invariants(f))
                semi = seminvariants(reduced.form)
                # phi = -1 and I = 0 for this class
                self.assertLessEqual(abs(semi.a), 16)
                self.assertLessEqual(abs(semi.H), 16)

    def test_lowered_form(self):
        reduced = reduce(LOWERED_F)
        self.assertEqual(invariants(reduced.form), invariants(LOWERED_F))

    def test_zero_discriminant(self):
        with self.assertRaises(FormError):
            reduce(BinaryQuartic(1, 0, 0, 0, 0))


class TestResolventRoot(unittest.TestCase):
    def test_examples(self):
        # 4X^3 + 4 has the single real root -1
        root = resolvent_root(F_SMALL)
        self.assertLessEqual(root.lo, -1)
        self.assertGreaterEqual(root.hi, -1)
        self.assertLessEqual(root.hi - root.lo, 2**-64)
        self.assertAlmostEqual(float(resolvent_root(X4_PLUS_Y4).magnitude), 0.5)


class TestCanonicalPointed(unittest.TestCase):
    def test_identity_on_normalised(self):
        self.assertEqual(canonical_pointed(F_SMALL), PointedForm(F_SMALL, (1, 0)))

    def test_class_invariant(self):
        rng = random.Random(99)
        expected = canonical_pointed(LOWERED_F)
        for _ in range(50):
            moved = act_pointed(random_unimodular(rng), PointedForm(LOWERED_F, (1, 0)))
            with self.subTest(point=moved.point):
                self.assertEqual(canonical_pointed(moved.form, moved.point), expected)

    def test_normalisation(self):
        pointed = canonical_pointed(LOWERED_F)
        self.assertEqual(pointed.point, (1, 0))
        self.assertTrue(0 <= pointed.form.a1 < abs(pointed.form.a0))
        self.assertEqual(pointed.value, 3)

    def test_zero_point(self):
        with self.assertRaises(FormError):
            canonical_pointed(F_SMALL, (0, 0))


if __name__ == "__main__":
    unittest.main()
