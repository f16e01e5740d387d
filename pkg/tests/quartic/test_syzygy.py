import unittest

from common.exceptions import DescentError
from quartic.forms import BinaryQuartic
from quartic.syzygy import SyzygyPoint, syzygy_coefficients, syzygy_descend
from tests.quartic.quartic_setup import F_SMALL, LOWERED_F


class TestSyzygyDescend(unittest.TestCase):
    def test_small(self):
        point = syzygy_descend(F_SMALL, 1)
        self.assertEqual(point, SyzygyPoint(2, 1, 3, 1))
        self.assertFalse(point.is_torsion)

    def test_lowered(self):
        self.assertEqual(syzygy_coefficients(LOWERED_F, 35), (0, 1))
        point = syzygy_descend(LOWERED_F, 35)
        self.assertEqual((point.h, point.a, point.r), (2, 3, 1))
        self.assertEqual(point.h**3 + point.a**3, point.r**2 * 35)

    def test_torsion(self):
        # A = 1, B = 0
        point = syzygy_descend(BinaryQuartic(1, 0, 0, 0, -4), 1)
        self.assertEqual(point, SyzygyPoint(0, 1, 0, 1))
        self.assertTrue(point.is_torsion)

    def test_failed_claims(self):
        for f, g, claim in [
            (F_SMALL, 2, "4g^3 | J"),
            (F_SMALL, 0, "g > 0"),
            (BinaryQuartic(1, 0, 0, 0, 1), 1, "4g^2 | I"),
        ]:
            with self.subTest(g=g, claim=claim):
                with self.assertRaises(DescentError) as ctx:
                    syzygy_descend(f, g)
                self.assertEqual(ctx.exception.claim, claim)


if __name__ == "__main__":
    unittest.main()
