"""
Descent from a reduced lowered quartic to the syzygy equation

    h^3 + A a^2 h + B a^3 = r^2 g.

For F with I(F) = -4 A g^2 and J(F) = -4 B g^3, the seminvariant syzygy
4H^3 - I a^2 H - J a^3 = R^2 divides through once g | H and g^2 | R/2.
"""

from typing import NamedTuple

from common.exceptions import DescentError
from quartic.forms import BinaryQuartic, invariants, seminvariants


class SyzygyPoint(NamedTuple):
    h: int
    a: int
    r: int
    g: int

    @property
    def is_torsion(self) -> bool:
        """r = 0 means R = 0; these are handled apart from the main count"""
        return self.r == 0


def syzygy_coefficients(F: BinaryQuartic, g: int) -> tuple[int, int]:
    """(A, B) with I(F) = -4 A g^2 and J(F) = -4 B g^3."""
    if g <= 0:
        raise DescentError("g > 0", f"g = {g}")
    inv = invariants(F)
    if inv.I % (4 * g * g):
        raise DescentError("4g^2 | I", f"I = {inv.I}, g = {g}")
    if inv.J % (4 * g**3):
        raise DescentError("4g^3 | J", f"J = {inv.J}, g = {g}")
    return -inv.I // (4 * g * g), -inv.J // (4 * g**3)


def syzygy_descend(F: BinaryQuartic, g: int) -> SyzygyPoint:
    """
    Return (h, a, r) = (H/g, a0, (R/2)/g^2) for the seminvariants of F.

    Raises:
        DescentError: naming the first divisibility claim that fails, or the
            syzygy itself if the resulting triple does not satisfy it
    """
    A, B = syzygy_coefficients(F, g)
    semi = seminvariants(F)
    if semi.H % g:
        raise DescentError("g | H", f"H = {semi.H}, g = {g}")
    if semi.R % 2:
        raise DescentError("R even", f"R = {semi.R}")
    if (semi.R // 2) % (g * g):
        raise DescentError("g^2 | R/2", f"R = {semi.R}, g = {g}")

    h, a, r = semi.H // g, semi.a, (semi.R // 2) // (g * g)
    if h**3 + A * a * a * h + B * a**3 != r * r * g:
        raise DescentError("h^3 + A a^2 h + B a^3 = r^2 g", f"(h, a, r, g) = {(h, a, r, g)}, A = {A}, B = {B}")
    return SyzygyPoint(h, a, r, g)
