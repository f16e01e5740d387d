"""
Integral points on a single twist and their gcd decomposition.

integral_points walks x upwards from the least real root of C(x, D) and
keeps the x with C(x, D) a square. Results are complete up to x_max only.
"""

from dataclasses import dataclass
from math import floor, gcd, isqrt
from typing import NamedTuple

from common.constants import Component
from common.exceptions import CurveValidationError, InvariantViolation
from twists.curves import TwistCurve, real_roots

# x^2 mod m for the moduli of the square prefilter
_SQUARES = {m: frozenset(x * x % m for x in range(m)) for m in (64, 63, 65, 11)}


class IntegralPoint(NamedTuple):
    x: int
    y: int


@dataclass(frozen=True)
class PointRecord:
    """
    A point of E_D(Z) with its classification.

    g = gcd(x, D) is square-free because D is; is_torsion marks the
    2-torsion points (y = 0) excluded from E*_D.
    """

    point: IntegralPoint
    is_torsion: bool
    g: int
    component: Component

    @property
    def flags(self) -> str:
        return ("T" if self.is_torsion else "N") + str(self.component)


class TwistDecomp(NamedTuple):
    """x = g x~, D = g D~, y = g^2 y~ and g y~^2 = C(x~, D~)."""

    g: int
    x: int
    D: int
    y: int


def _might_be_square(v: int) -> bool:
    return all(v % m in squares for m, squares in _SQUARES.items())


def _segments(curve: TwistCurve, x_max: int) -> list[tuple[int, int]]:
    """x-ranges where C(x, D) can be non-negative, intersected with (-inf, x_max]."""
    roots = real_roots(curve.rhs_coefficients)
    if len(roots) == 3:
        ranges = [(floor(roots[0][0]), floor(roots[1][1]) + 1), (floor(roots[2][0]), x_max)]
    else:
        ranges = [(floor(roots[0][0]), x_max)]
    return [(lo, min(hi, x_max)) for lo, hi in ranges if lo <= min(hi, x_max)]


def is_compact(curve: TwistCurve, x: int, roots=None) -> bool:
    """True when x lies before the largest of three real roots."""
    roots = roots if roots is not None else real_roots(curve.rhs_coefficients)
    return len(roots) == 3 and x < roots[2][0]


def classify_point(curve: TwistCurve, point: tuple[int, int], roots=None) -> PointRecord:
    """
    Raises:
        CurveValidationError: if the point is not on the curve
    """
    if not curve.on_curve(point):
        raise CurveValidationError(f"point {point} is not on {curve}")
    x, y = point
    component = Component.COMPACT if is_compact(curve, x, roots) else Component.UNBOUNDED
    return PointRecord(IntegralPoint(x, y), y == 0, gcd(x, curve.D), component)


def integral_points(curve: TwistCurve, x_max: int) -> list[IntegralPoint]:
    """
    All integral points with x <= x_max, both signs of y, sorted by (x, y).

    C(x, D) is stepped with forward differences; a residue prefilter keeps
    isqrt off most non-squares.
    """
    if x_max < 1:
        raise CurveValidationError(f"x_max must be positive, got {x_max}")
    points = []
    for lo, hi in _segments(curve, x_max):
        v = curve.rhs(lo)
        v1 = curve.rhs(lo + 1)
        v2 = curve.rhs(lo + 2)
        d1, d2 = v1 - v, v2 - 2 * v1 + v
        d3 = 6 * curve.cubic.c0
        for x in range(lo, hi + 1):
            if v >= 0 and _might_be_square(v):
                y = isqrt(v)
                if y * y == v:
                    points.extend([IntegralPoint(x, -y), IntegralPoint(x, y)] if y else [IntegralPoint(x, 0)])
            v += d1
            d1 += d2
            d2 += d3
    return sorted(set(points))


def gcd_decompose(point: tuple[int, int], curve: TwistCurve) -> TwistDecomp:
    """
    Raises:
        CurveValidationError: if the point is not on the curve
        InvariantViolation: if g^2 does not divide y or the descended equation fails
    """
    if not curve.on_curve(point):
        raise CurveValidationError(f"point {point} is not on {curve}")
    x, y = point
    g = gcd(x, curve.D)
    if y % (g * g):
        raise InvariantViolation("g^2 | y", f"g = {g}, y = {y}")
    xt, Dt, yt = x // g, curve.D // g, y // (g * g)
    if g * yt * yt != curve.cubic(xt, Dt):
        raise InvariantViolation("g y~^2 = C(x~, D~)", f"point {point} on {curve}")
    return TwistDecomp(g, xt, Dt, yt)
