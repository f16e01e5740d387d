"""
Four-factor descent for square families A = a^2, B = b^2.

A point with x = D u^2 on y^2 = x (x - a^2 D)(x - b^2 D) gives
(u^2 - a^2)(u^2 - b^2) = D t^2, and the four linear factors split as
g_i y_i^2 with g1 g2 g3 g4 = D v^2 and v | 2ab(b^2 - a^2).
"""

from math import gcd, isqrt, prod
from typing import NamedTuple

from arith.integers import factorize, squarefree_part
from arith.symbols import jacobi
from common.exceptions import DescentError, InvariantViolation


class FourSquareDecomp(NamedTuple):
    """u - a = g1 y1^2, u + a = g2 y2^2, u - b = g3 y3^2, u + b = g4 y4^2."""

    u: int
    a: int
    b: int
    g: tuple[int, int, int, int]
    y: tuple[int, int, int, int]
    D: int
    v: int
    t: int

    @property
    def modulus(self) -> int:
        """2ab(b^2 - a^2)"""
        return 2 * self.a * self.b * (self.b * self.b - self.a * self.a)

    @property
    def n(self) -> tuple[int, int, int, int]:
        m = self.modulus
        return tuple(g // gcd(g, m) for g in self.g)


def four_square_decompose(u: int, a: int, b: int) -> FourSquareDecomp:
    """
    Raises:
        DescentError: unless u > b > a > 0 with gcd(a, b) = 1
        InvariantViolation: if v does not divide 2ab(b^2 - a^2)
    """
    if not u > b > a > 0 or gcd(a, b) != 1:
        raise DescentError("u > b > a > 0, gcd(a, b) = 1", f"u={u}, a={a}, b={b}")
    parts = [squarefree_part(f) for f in (u - a, u + a, u - b, u + b)]
    g = tuple(p.s for p in parts)
    product = prod(g)
    D = squarefree_part(product).s
    v = isqrt(product // D)
    t = prod(p.f for p in parts) * v
    decomp = FourSquareDecomp(u, a, b, g, tuple(p.f for p in parts), D, v, t)
    if decomp.modulus % v:
        raise InvariantViolation("v | 2ab(b^2 - a^2)", f"v = {v} for u={u}, a={a}, b={b}")
    return decomp


def _conditions(decomp: FourSquareDecomp) -> dict[int, tuple[int, int, int]]:
    """Coefficient of each symbol, keyed by the factor whose primes carry the condition."""
    a, b = decomp.a, decomp.b
    g1, g2, g3, g4 = decomp.g
    # u = a, -a, b, -b mod p in turn; each other factor is then a constant mod p
    return {
        1: (2 * a * g2, -(b - a) * g3, (a + b) * g4),
        2: (-2 * a * g1, -(a + b) * g3, (b - a) * g4),
        3: ((b - a) * g1, (a + b) * g2, 2 * b * g4),
        4: (-(a + b) * g1, -(b - a) * g2, -2 * b * g3),
    }


def local_conditions_4(decomp: FourSquareDecomp) -> bool:
    """True iff the twelve symbols at the primes of n_i = g_i / gcd(g_i, 2ab(b^2 - a^2)) all equal 1."""
    conditions = _conditions(decomp)
    for i, n in enumerate(decomp.n, start=1):
        for p in factorize(n).primes:
            if any(jacobi(c, p) != 1 for c in conditions[i]):
                return False
    return True
