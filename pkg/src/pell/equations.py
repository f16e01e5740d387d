"""
Generalized and simultaneous Pell equations.

a x^2 - b y^2 = u is rewritten in Z[sqrt(ab)] as X^2 - ab y^2 = a u with
X = a x. Every element X + y sqrt(ab) > 0 of that norm is a base element
in [1, eps) times a power of the positive-norm unit eps, and eps keeps
a | X, so the base elements split the solutions into finitely many orbits.
Membership decisions use integer comparisons of surds only.
"""

from dataclasses import dataclass
from math import isqrt

from sympy import divisors

from arith.integers import is_square
from arith.units import QuadraticUnit, fundamental_unit, surd_sign
from common.exceptions import ArithmeticDomainError
from utils.workbench_logger import log_operation


@dataclass(frozen=True)
class PellOrbit:
    """Solutions of a x^2 - b y^2 = u generated from base by the unit."""

    a: int
    b: int
    u: int
    base: tuple[int, int]
    unit: QuadraticUnit

    def __post_init__(self):
        x, y = self.base
        if self.a * x * x - self.b * y * y != self.u:
            raise ArithmeticDomainError(f"{self.base} does not solve {self.a}x^2 - {self.b}y^2 = {self.u}")
        if self.unit.norm != 1:
            raise ArithmeticDomainError(f"orbit unit {self.unit} must have norm 1")

    def step(self, x: int, y: int) -> tuple[int, int]:
        """(a x + y sqrt(ab)) * eps, back in (x, y) coordinates."""
        t, w = self.unit.t, self.unit.u
        return x * t + self.b * y * w, self.a * x * w + y * t

    def elements(self, bound: int):
        """Yield base * eps^k for k >= 0 until a x exceeds 2 a bound + |a u|."""
        limit = 2 * self.a * bound + abs(self.a * self.u)
        d = self.a * self.b
        x, y = self.base
        while surd_sign(self.a * x - limit, y, d) <= 0:
            yield x, y
            x, y = self.step(x, y)


def _check(a: int, b: int, u: int):
    if a < 1 or b < 1:
        raise ArithmeticDomainError(f"a and b must be positive, got a={a}, b={b}")
    if u == 0:
        raise ArithmeticDomainError("u must be non-zero")


def _window(d: int, N: int, upper: tuple[int, int], strict: bool) -> list[tuple[int, int]]:
    """(X, Y) with X^2 - d Y^2 = N and 1 <= X + Y sqrt(d) below upper = p + q sqrt(d)."""
    p, q = upper
    root = isqrt(d)
    y_max = (p + abs(q) * (root + 1) + abs(N)) // (2 * root) + 1
    found = []
    for y in range(-y_max, y_max + 1):
        r = N + d * y * y
        if r < 0 or not is_square(r):
            continue
        for X in sorted({isqrt(r), -isqrt(r)}):
            if surd_sign(X - 1, y, d) < 0:
                continue
            above = surd_sign(p - X, q - y, d)
            if above > 0 or (above == 0 and not strict):
                found.append((X, y))
    return sorted(found)


def norm_elements(d: int, N: int, height: int) -> list[tuple[int, int]]:
    """
    All X + Y sqrt(d) with X^2 - d Y^2 = N and 1 <= X + Y sqrt(d) <= height.

    Raises:
        ArithmeticDomainError: for square d or d < 2
    """
    if d < 2 or is_square(d):
        raise ArithmeticDomainError(f"norm_elements needs a non-square d >= 2, got {d}")
    if height < 1:
        return []
    return _window(d, N, (height, 0), strict=False)


def pell_base_solutions(a: int, b: int, u: int) -> list[PellOrbit]:
    """
    One orbit per base element 1 <= a x + y sqrt(ab) < eps with eps the
    positive-norm fundamental unit of Z[sqrt(ab)].

    Raises:
        ArithmeticDomainError: for invalid input or square ab, whose
            solutions are finite and come from square_solutions
    """
    _check(a, b, u)
    d = a * b
    if is_square(d):
        raise ArithmeticDomainError(f"ab = {d} is a square; use square_solutions")
    unit = fundamental_unit(d).positive_norm()
    orbits = []
    for X, y in _window(d, a * u, (unit.t, unit.u), strict=True):
        if X % a == 0:
            orbits.append(PellOrbit(a, b, u, (X // a, y), unit))
    return orbits


def square_solutions(a: int, b: int, u: int) -> list[tuple[int, int]]:
    """
    Every integer solution when ab = s^2, from (a x - s y)(a x + s y) = a u.

    Raises:
        ArithmeticDomainError: if ab is not a square
    """
    _check(a, b, u)
    if not is_square(a * b):
        raise ArithmeticDomainError(f"ab = {a * b} is not a square")
    s = isqrt(a * b)
    n = a * u
    found = set()
    for e in divisors(abs(n)):
        for sign in (1, -1):
            first, second = sign * e, n // (sign * e)
            X2, Y2 = first + second, second - first
            if X2 % (2 * a) or Y2 % (2 * s):
                continue
            found.add((X2 // (2 * a), Y2 // (2 * s)))
    return sorted(found)


@log_operation()
def enumerate_solutions(a: int, b: int, u: int, bound: int) -> list[tuple[int, int]]:
    """All (x, y) with x, y > 0, x <= bound and a x^2 - b y^2 = u, ascending."""
    _check(a, b, u)
    if is_square(a * b):
        return [(x, y) for x, y in square_solutions(a, b, u) if 0 < x <= bound and y > 0]
    found = set()
    for orbit in pell_base_solutions(a, b, u):
        for x, y in orbit.elements(bound):
            if 0 < x <= bound and y > 0:
                found.add((x, y))
    return sorted(found)


@log_operation()
def simultaneous_solve(a: int, b: int, u: int, c: int, d: int, v: int, bound: int) -> list[tuple[int, int, int]]:
    """
    Positive (x, y, z) with a x^2 - b y^2 = u and c y^2 - d z^2 = v, for x <= bound.

    The first equation is enumerated; z is read off the second.
    """
    _check(c, d, v)
    found = []
    for x, y in enumerate_solutions(a, b, u, bound):
        rest = c * y * y - v
        if rest > 0 and rest % d == 0 and is_square(rest // d):
            found.append((x, y, isqrt(rest // d)))
    return found
