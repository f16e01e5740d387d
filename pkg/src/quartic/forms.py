"""
Binary quartic forms with binomial coefficients and the SL2(Z) action on them.

A BinaryQuartic (a0, a1, a2, a3, a4) is the form
    a0*X^4 + 4*a1*X^3*Y + 6*a2*X^2*Y^2 + 4*a3*X*Y^3 + a4*Y^4.
The group acts on the right: act(g, f)(v) = f(g v), so
act(g1, act(g2, f)) == act(g2.compose(g1), f).
"""

from dataclasses import dataclass
from typing import NamedTuple

from arith.binary_forms import evaluate_form, substitute_form
from common.exceptions import FormError


class Invariants(NamedTuple):
    I: int
    J: int
    disc: int


class Seminvariants(NamedTuple):
    a: int
    H: int
    R: int


@dataclass(frozen=True)
class BinaryQuartic:
    a0: int
    a1: int
    a2: int
    a3: int
    a4: int

    @classmethod
    def from_raw(cls, raw: tuple[int, ...]) -> "BinaryQuartic":
        """Build from plain coefficients r0*X^4 + r1*X^3*Y + ...; r1, r2, r3 must be divisible by 4, 6, 4."""
        if len(raw) != 5:
            raise FormError(f"a quartic needs five coefficients, got {len(raw)}")
        r0, r1, r2, r3, r4 = raw
        if r1 % 4 or r2 % 6 or r3 % 4:
            raise FormError(f"coefficients {tuple(raw)} are not binomially integral")
        return cls(r0, r1 // 4, r2 // 6, r3 // 4, r4)

    @property
    def coefficients(self) -> tuple[int, int, int, int, int]:
        return (self.a0, self.a1, self.a2, self.a3, self.a4)

    @property
    def raw(self) -> tuple[int, int, int, int, int]:
        return (self.a0, 4 * self.a1, 6 * self.a2, 4 * self.a3, self.a4)

    def __call__(self, x: int, y: int) -> int:
        return evaluate_form(self.raw, x, y)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coefficients) + ")"


@dataclass(frozen=True)
class Unimodular:
    """2x2 integer matrix (a b; c d) with determinant 1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise FormError(f"matrix ({self.a} {self.b}; {self.c} {self.d}) is not in SL2(Z)")

    @classmethod
    def identity(cls) -> "Unimodular":
        return cls(1, 0, 0, 1)

    @classmethod
    def translation(cls, b: int) -> "Unimodular":
        """X -> X + bY"""
        return cls(1, b, 0, 1)

    @classmethod
    def inversion(cls) -> "Unimodular":
        """(X, Y) -> (-Y, X)"""
        return cls(0, -1, 1, 0)

    @classmethod
    def from_columns(cls, first: tuple[int, int], second: tuple[int, int]) -> "Unimodular":
        return cls(first[0], second[0], first[1], second[1])

    def compose(self, other: "Unimodular") -> "Unimodular":
        """Matrix product self * other."""
        return Unimodular(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "Unimodular":
        return Unimodular(self.d, -self.b, -self.c, self.a)

    def apply(self, x: int, y: int) -> tuple[int, int]:
        return self.a * x + self.b * y, self.c * x + self.d * y


@dataclass(frozen=True)
class PointedForm:
    """A quartic together with an integer point; act_pointed preserves form(point)."""

    form: BinaryQuartic
    point: tuple[int, int]

    @property
    def value(self) -> int:
        return self.form(*self.point)


def invariants(f: BinaryQuartic) -> Invariants:
    a0, a1, a2, a3, a4 = f.coefficients
    I = a0 * a4 - 4 * a1 * a3 + 3 * a2 * a2
    J = a0 * a2 * a4 - a0 * a3 * a3 - a1 * a1 * a4 + 2 * a1 * a2 * a3 - a2**3
    return Invariants(I, J, I**3 - 27 * J * J)


def seminvariants(f: BinaryQuartic) -> Seminvariants:
    """Leading coefficient a, H = a1^2 - a0*a2 and R = 2a1^3 + a0^2*a3 - 3a0*a1*a2.

    They satisfy 4H^3 - I*a^2*H - J*a^3 = R^2.
    """
    a0, a1, a2, a3, _ = f.coefficients
    return Seminvariants(a0, a1 * a1 - a0 * a2, 2 * a1**3 + a0 * a0 * a3 - 3 * a0 * a1 * a2)


def covariant_G(f: BinaryQuartic) -> tuple[int, int, int, int, int]:
    """Plain coefficients of the quartic covariant G_f; the leading one is H(f)."""
    a0, a1, a2, a3, a4 = f.coefficients
    return (
        a1 * a1 - a0 * a2,
        2 * (a1 * a2 - a0 * a3),
        3 * a2 * a2 - a0 * a4 - 2 * a1 * a3,
        2 * (a2 * a3 - a1 * a4),
        a3 * a3 - a2 * a4,
    )


def act(gamma: Unimodular, f: BinaryQuartic) -> BinaryQuartic:
    """The form (X, Y) -> f(aX + bY, cX + dY)."""
    return BinaryQuartic.from_raw(substitute_form(f.raw, gamma.a, gamma.b, gamma.c, gamma.d))


def act_pointed(gamma: Unimodular, pointed: PointedForm) -> PointedForm:
    """gamma . (f, v) = (gamma . f, gamma^-1 v)"""
    return PointedForm(act(gamma, pointed.form), gamma.inverse().apply(*pointed.point))
