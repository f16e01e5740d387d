"""
Units of Z[sqrt(d)] and exact comparisons of numbers p + q*sqrt(d).

The fundamental unit is read off the continued fraction expansion of
sqrt(d). It lives in Z[sqrt(d)], not in the maximal order, so d = 5 gives
2 + sqrt(5) rather than the golden ratio.
"""

from dataclasses import dataclass

from sympy import continued_fraction_convergents, continued_fraction_periodic

from arith.integers import is_square
from common.exceptions import ArithmeticDomainError


def surd_sign(p: int, q: int, d: int) -> int:
    """Sign of p + q*sqrt(d) for non-square d > 0, decided with integers only."""
    if p >= 0 and q >= 0:
        return 0 if p == 0 and q == 0 else 1
    if p <= 0 and q <= 0:
        return -1
    # opposite signs: compare p^2 with d*q^2
    diff = p * p - d * q * q
    if diff == 0:
        return 0
    return (1 if p > 0 else -1) if diff > 0 else (1 if q > 0 else -1)


@dataclass(frozen=True)
class QuadraticUnit:
    """t + u*sqrt(d), a unit of Z[sqrt(d)]."""

    t: int
    u: int
    d: int

    @property
    def norm(self) -> int:
        return self.t * self.t - self.d * self.u * self.u

    def __mul__(self, other: "QuadraticUnit") -> "QuadraticUnit":
        if other.d != self.d:
            raise ArithmeticDomainError(f"cannot multiply units of Z[sqrt({self.d})] and Z[sqrt({other.d})]")
        return QuadraticUnit(self.t * other.t + self.d * self.u * other.u, self.t * other.u + self.u * other.t, self.d)

    def __pow__(self, k: int) -> "QuadraticUnit":
        if k < 0:
            raise ArithmeticDomainError("negative unit powers are not supported")
        result, base = QuadraticUnit(1, 0, self.d), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def positive_norm(self) -> "QuadraticUnit":
        """The least power of this unit with norm +1."""
        return self if self.norm == 1 else self * self

    def act(self, x: int, y: int) -> tuple[int, int]:
        """Coordinates of (x + y*sqrt(d)) * (t + u*sqrt(d))."""
        return x * self.t + self.d * y * self.u, x * self.u + y * self.t


def fundamental_unit(d: int) -> QuadraticUnit:
    """
    Least unit t + u*sqrt(d) > 1 of Z[sqrt(d)], from the period of the
    continued fraction of sqrt(d). Its norm is (-1)^(period length).
    """
    if d < 2 or is_square(d):
        raise ArithmeticDomainError(f"fundamental unit needs a non-square d >= 2, got {d}")
    a0, period = continued_fraction_periodic(0, 1, d)
    terms = [a0] + list(period[:-1])
    *_, last = continued_fraction_convergents(terms)
    unit = QuadraticUnit(int(last.p), int(last.q), d)
    if abs(unit.norm) != 1:
        raise ArithmeticDomainError(f"continued fraction of sqrt({d}) gave non-unit {unit}")
    return unit
