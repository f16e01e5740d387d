"""
Integral binary forms.

A form of degree n is stored by its raw coefficients (r0, ..., rn), meaning
r0*X^n + r1*X^(n-1)*Y + ... + rn*Y^n. BinaryCubic is the cubic form C(x1, x2)
used by the surface counts, the rho functions and the twist constructions.
"""

from dataclasses import dataclass
from functools import cached_property
from math import comb

from sympy import Poly, symbols

from common.exceptions import FormError

_x = symbols("x")


def evaluate_form(raw: tuple[int, ...], x: int, y: int) -> int:
    """Value of the binary form with raw coefficients at (x, y)."""
    n = len(raw) - 1
    return sum(r * x ** (n - i) * y**i for i, r in enumerate(raw))


def poly_eval(coeffs: list[int] | tuple[int, ...], x: int) -> int:
    """Horner evaluation, coefficients highest degree first."""
    value = 0
    for c in coeffs:
        value = value * x + c
    return value


def poly_derivative(coeffs: list[int] | tuple[int, ...]) -> list[int]:
    n = len(coeffs) - 1
    return [c * (n - i) for i, c in enumerate(coeffs[:-1])]


def _mul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def substitute_form(raw: tuple[int, ...], a: int, b: int, c: int, d: int) -> tuple[int, ...]:
    """
    Raw coefficients of f(aX + bY, cX + dY).

    Homogeneous polynomials in X, Y are kept as lists indexed by the power of Y.
    """
    n = len(raw) - 1
    first, second = [a, b], [c, d]
    powers_first, powers_second = [[1]], [[1]]
    for _ in range(n):
        powers_first.append(_mul(powers_first[-1], first))
        powers_second.append(_mul(powers_second[-1], second))
    result = [0] * (n + 1)
    for i, r in enumerate(raw):
        if r:
            term = _mul(powers_first[n - i], powers_second[i])
            for k, t in enumerate(term):
                result[k] += r * t
    return tuple(result)


@dataclass(frozen=True)
class BinaryCubic:
    """
    Cubic form C(x1, x2) = c0*x1^3 + c1*x1^2*x2 + c2*x1*x2^2 + c3*x2^3.

    Construction rejects forms with zero discriminant, so every BinaryCubic
    is separable over Q.
    """

    c0: int
    c1: int
    c2: int
    c3: int

    def __post_init__(self):
        if self.discriminant == 0:
            raise FormError(f"cubic form {self.coefficients} is not separable (zero discriminant)")

    @classmethod
    def parse(cls, text: str) -> "BinaryCubic":
        """Build a cubic from four comma-separated integers, e.g. "1,0,0,1"."""
        try:
            values = [int(part) for part in text.split(",")]
        except ValueError as e:
            raise FormError(f"cubic coefficients must be integers: {text}") from e
        if len(values) != 4:
            raise FormError(f"a cubic form needs four coefficients, got {len(values)}")
        return cls(*values)

    @property
    def coefficients(self) -> tuple[int, int, int, int]:
        return (self.c0, self.c1, self.c2, self.c3)

    @property
    def discriminant(self) -> int:
        a, b, c, d = self.coefficients
        return b * b * c * c - 4 * a * c**3 - 4 * b**3 * d - 27 * a * a * d * d + 18 * a * b * c * d

    def __call__(self, x1: int, x2: int) -> int:
        return evaluate_form(self.coefficients, x1, x2)

    def dehomogenize(self, first: bool = True) -> list[int]:
        """
        Coefficients, highest degree first, of C(x, 1) when `first` is true,
        otherwise of C(1, x).
        """
        if first:
            return list(self.coefficients)
        return list(reversed(self.coefficients))

    @cached_property
    def factor_count(self) -> int:
        """Number of irreducible factors over Q (lambda)."""
        _, factors = Poly(self.dehomogenize(True), _x).factor_list()
        count = sum(multiplicity for _, multiplicity in factors)
        # x2 divides C when C(1, 0) = 0 and is invisible after setting x2 = 1
        return count + (1 if self.c0 == 0 else 0)

    def shear(self, b: int) -> "BinaryCubic":
        """The cubic C(x1, x2 + b*x1)."""
        c = self.coefficients
        return BinaryCubic(
            *(sum(c[i] * comb(i, k) * b ** (i - k) for i in range(k, 4)) for k in range(4))
        )

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coefficients)
