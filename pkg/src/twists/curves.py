"""
Quadratic twist families in three Weierstrass models.

    short:   y^2 = x^3 + A D^2 x + B D^3
    full:    y^2 = x (x - A D)(x - B D)
    partial: y^2 = x (x^2 + A D x + B D^2)

The right hand side is a binary cubic C(x, D) in both variables, so every
model shares the homogeneous treatment of points (see twists.points).
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import NamedTuple

from sympy import Poly, symbols

from arith.binary_forms import BinaryCubic
from arith.integers import is_square, is_squarefree
from common.constants import Model, TorsionKind
from common.exceptions import CurveValidationError

_x = symbols("x")


def validate_family(A: int, B: int, model: Model):
    """
    Raises:
        CurveValidationError: if (A, B) does not define a family in the given model
    """
    match Model(model):
        case Model.SHORT:
            if 4 * A**3 + 27 * B * B == 0:
                raise CurveValidationError(f"x^3 + {A}x + {B} is singular")
        case Model.FULL:
            if not 0 < A < B:
                raise CurveValidationError(f"full model needs 0 < A < B, got A={A}, B={B}")
            if gcd(A, B) != 1:
                raise CurveValidationError(f"full model needs gcd(A, B) = 1, got A={A}, B={B}")
        case Model.PARTIAL:
            if is_square(A * A - 4 * B):
                raise CurveValidationError(f"partial model needs A^2 - 4B non-square, got {A * A - 4 * B}")


@dataclass(frozen=True)
class TwistCurve:
    A: int
    B: int
    D: int
    model: Model = Model.SHORT

    def __post_init__(self):
        object.__setattr__(self, "model", Model(self.model))
        validate_family(self.A, self.B, self.model)
        if self.D == 0 or not is_squarefree(self.D):
            raise CurveValidationError(f"D must be square-free and non-zero, got {self.D}")

    @property
    def cubic(self) -> BinaryCubic:
        """C(x, z) with y^2 = C(x, D)."""
        A, B = self.A, self.B
        match self.model:
            case Model.SHORT:
                return BinaryCubic(1, 0, A, B)
            case Model.FULL:
                return BinaryCubic(1, -(A + B), A * B, 0)
            case Model.PARTIAL:
                return BinaryCubic(1, A, B, 0)

    @property
    def rhs_coefficients(self) -> list[int]:
        """Coefficients of C(x, D) in x, highest degree first."""
        return [c * self.D**i for i, c in enumerate(self.cubic.coefficients)]

    def rhs(self, x: int) -> int:
        return self.cubic(x, self.D)

    def on_curve(self, point: tuple[int, int]) -> bool:
        x, y = point
        return y * y == self.rhs(x)

    def with_D(self, D: int) -> "TwistCurve":
        return TwistCurve(self.A, self.B, D, self.model)

    def __str__(self) -> str:
        return f"{self.model}(A={self.A}, B={self.B}, D={self.D})"


class ShortModel(NamedTuple):
    """Short model of a curve with the point map X = x_scale * x + shift, Y = y_scale * y."""

    curve: TwistCurve
    x_scale: int
    shift: int
    y_scale: int

    def map_point(self, point: tuple[int, int]) -> tuple[int, int]:
        x, y = point
        return self.x_scale * x + self.shift, self.y_scale * y


def to_short_model(curve: TwistCurve) -> ShortModel:
    A, B, D = curve.A, curve.B, curve.D
    match curve.model:
        case Model.SHORT:
            return ShortModel(curve, 1, 0, 1)
        case Model.PARTIAL:
            short = TwistCurve(27 * (3 * B - A * A), 27 * A * (2 * A * A - 9 * B), D)
            return ShortModel(short, 9, 3 * A * D, 27)
        case Model.FULL:
            short = TwistCurve(
                -27 * (A * A - A * B + B * B),
                -27 * (A + B) * (2 * A - B) * (A - 2 * B),
                D,
            )
            return ShortModel(short, 9, -3 * (A + B) * D, 27)


class Reflection(NamedTuple):
    """The positive-D member carrying the points of a negative-D curve, with x' = x + shift."""

    curve: TwistCurve
    shift: int


def reflect(curve: TwistCurve) -> Reflection:
    """
    Rewrite a curve with D < 0 as a member of a related family with |D|.

    short (A, B) -> (A, -B); partial (A, B) -> (-A, B); full (A, B) -> (B - A, B)
    with x' = x + B|D|. Curves with D > 0 are returned unchanged.
    """
    if curve.D > 0:
        return Reflection(curve, 0)
    A, B, D = curve.A, curve.B, -curve.D
    match curve.model:
        case Model.SHORT:
            return Reflection(TwistCurve(A, -B, D, Model.SHORT), 0)
        case Model.PARTIAL:
            return Reflection(TwistCurve(-A, B, D, Model.PARTIAL), 0)
        case Model.FULL:
            return Reflection(TwistCurve(B - A, B, D, Model.FULL), B * D)


class TorsionClass(NamedTuple):
    kind: TorsionKind
    roots: tuple[int, ...]
    quadratic: tuple[int, int, int] | None = None

    def __str__(self) -> str:
        match self.kind:
            case TorsionKind.FULL:
                return f"full{self.roots}"
            case TorsionKind.PARTIAL:
                return f"partial(r={self.roots[0]}, Q={self.quadratic})"
            case _:
                return "irreducible"


def classify_torsion(A: int, B: int) -> TorsionClass:
    """
    Factorisation type of x^3 + A x + B over Q.

    Rational roots of a monic integer cubic are integers dividing B; sympy's
    factorisation over Z finds them. A partial class carries Q = x^2 + r x + r^2 + A.

    Raises:
        CurveValidationError: if the cubic is singular
    """
    if 4 * A**3 + 27 * B * B == 0:
        raise CurveValidationError(f"x^3 + {A}x + {B} is singular")
    _, factors = Poly([1, 0, A, B], _x).factor_list()
    roots = sorted(int(-f.all_coeffs()[1] / f.all_coeffs()[0]) for f, _ in factors if f.degree() == 1)
    match len(roots):
        case 0:
            return TorsionClass(TorsionKind.IRREDUCIBLE, ())
        case 1:
            r = roots[0]
            return TorsionClass(TorsionKind.PARTIAL, (r,), (1, r, r * r + A))
        case _:
            return TorsionClass(TorsionKind.FULL, tuple(roots))


def real_roots(coeffs: list[int]) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals of the real roots, increasing."""
    intervals = Poly(coeffs, _x).intervals()
    return [(Fraction(int(lo.p), int(lo.q)), Fraction(int(hi.p), int(hi.q))) for (lo, hi), _ in intervals]
