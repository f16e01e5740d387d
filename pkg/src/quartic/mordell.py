"""
Quartic forms attached to integral points of y^2 = x^3 + A D^2 x + B D^3.

mordell_form gives the monic quartic f_P of a point P = (x0, y0), whose
invariants are I = -4AD^2 and J = -4BD^3. lower_disc divides its
discriminant by M^6 for an odd M | D coprime to 2*x0, producing F_P with
F_P(1, 0) = M.
"""

from math import gcd
from typing import NamedTuple

from arith.binary_forms import substitute_form
from common.exceptions import CurveValidationError, InvariantViolation
from quartic.forms import BinaryQuartic


class LoweredForm(NamedTuple):
    form: BinaryQuartic
    k: int


def on_short_twist(point: tuple[int, int], A: int, B: int, D: int) -> bool:
    x0, y0 = point
    return y0 * y0 == x0**3 + A * D * D * x0 + B * D**3


def mordell_form(point: tuple[int, int], A: int, B: int, D: int) -> BinaryQuartic:
    """X^4 - 6 x0 X^2 Y^2 + 8 y0 X Y^3 + (-4 A D^2 - 3 x0^2) Y^4 for P = (x0, y0)."""
    if not on_short_twist(point, A, B, D):
        raise CurveValidationError(f"point {point} is not on y^2 = x^3 + {A}*{D}^2 x + {B}*{D}^3")
    x0, y0 = point
    return BinaryQuartic(1, 0, -x0, 2 * y0, -4 * A * D * D - 3 * x0 * x0)


def default_lowering_modulus(point: tuple[int, int], D: int) -> int:
    """Largest M | D coprime to 2*x0, which is |D| / gcd(2*x0, D) for square-free D."""
    return abs(D) // gcd(2 * point[0], abs(D))


def lower_disc(point: tuple[int, int], A: int, B: int, D: int, M: int | None = None) -> LoweredForm:
    """
    Return (F, k) with F(X, Y) = M^-3 f_P(M X + k Y, Y).

    k is the residue in [0, M^3) with x0 = k^2 and y0 = k^3 + A D^2 (2k)^-1
    modulo M^3, lifted from k = y0 / x0 mod M.
    """
    f = mordell_form(point, A, B, D)
    x0, y0 = point
    if M is None:
        M = default_lowering_modulus(point, D)
    if M <= 0 or M % 2 == 0:
        raise CurveValidationError(f"lowering modulus must be odd and positive, got {M}")
    if D % M:
        raise CurveValidationError(f"lowering modulus {M} does not divide D = {D}")
    if gcd(M, 2 * x0) != 1:
        raise CurveValidationError(f"lowering modulus {M} is not coprime to 2*x0 = {2 * x0}")
    if M == 1:
        return LoweredForm(f, 0)

    k = y0 * pow(x0, -1, M) % M
    # two Newton steps on k^2 - x0 carry the root from M to M^2 to M^3
    for modulus in (M * M, M**3):
        k = (k - (k * k - x0) * pow(2 * k, -1, modulus)) % modulus
    M3 = M**3
    if (k * k - x0) % M3:
        raise InvariantViolation("x0 = k^2 mod M^3", f"k = {k}, M = {M}")
    if (y0 - k**3 - A * D * D * pow(2 * k, -1, M3)) % M3:
        raise InvariantViolation("y0 = k^3 + A D^2 / (2k) mod M^3", f"k = {k}, M = {M}")

    raw = substitute_form(f.raw, M, k, 0, 1)
    if any(r % M3 for r in raw):
        raise InvariantViolation("F_P integral", f"M^3 = {M3} does not divide {raw}")
    try:
        F = BinaryQuartic.from_raw(tuple(r // M3 for r in raw))
    except ValueError as e:
        raise InvariantViolation("F_P integral", str(e)) from e
    return LoweredForm(F, k)
