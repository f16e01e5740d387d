"""
Exhaustive solutions of Thue inequalities |F(x, y)| <= m.

Rows are taken for |y| <= m (1 + sum |r_i|). Within a row the integers x
with |F(x, y)| <= m lie between the extreme real roots of F(x, y) - m and
F(x, y) + m, which are isolated exactly; every candidate is then checked
by evaluating F.
"""

from math import ceil, floor

from sympy import Poly, symbols

from arith.binary_forms import evaluate_form
from common.exceptions import FormError
from quartic.forms import BinaryQuartic

_x = symbols("x")


def _raw(F) -> tuple[int, ...]:
    if isinstance(F, BinaryQuartic):
        return F.raw
    return tuple(int(c) for c in F)


def _validate(raw: tuple[int, ...]):
    if len(raw) < 4:
        raise FormError(f"Thue inequalities need degree >= 3, got {raw}")
    if raw[0] == 0:
        raise FormError(f"form {raw} is divisible by Y")
    poly = Poly(list(raw), _x)
    if poly.discriminant() == 0:
        raise FormError(f"form {raw} has zero discriminant")
    _, factors = poly.factor_list()
    if any(factor.degree() == 1 for factor, _ in factors):
        raise FormError(f"form {raw} has a rational linear factor")


def _row_hull(row: list[int], m: int) -> tuple[int, int] | None:
    """Integer range containing every real x with |row(x)| <= m, or None if empty."""
    ends = []
    for shift in (-m, m):
        shifted = row[:-1] + [row[-1] + shift]
        for (lo, hi), _ in Poly(shifted, _x).intervals():
            ends.extend((lo, hi))
    if not ends:
        return None
    return int(floor(min(ends))), int(ceil(max(ends)))


def thue_box(raw: tuple[int, ...], m: int) -> int:
    return m * (1 + sum(abs(r) for r in raw))


def thue_enumerate(F, m: int) -> list[tuple[int, int]]:
    """
    All integer pairs with |F(x, y)| <= m, sorted.

    F is a BinaryQuartic or the raw coefficient tuple of a form of degree >= 3.

    Raises:
        FormError: for degenerate forms (zero discriminant or a rational linear factor)
    """
    if m <= 0:
        raise FormError(f"m must be positive, got {m}")
    raw = _raw(F)
    _validate(raw)
    box = thue_box(raw, m)

    solutions = []
    for y in range(-box, box + 1):
        row = [r * y**i for i, r in enumerate(raw)]
        hull = _row_hull(row, m)
        if hull is None:
            continue
        lo, hi = hull
        for x in range(lo, hi + 1):
            if abs(evaluate_form(raw, x, y)) <= m:
                solutions.append((x, y))
    return sorted(solutions)
