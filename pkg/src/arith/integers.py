"""
Exact integer kernels shared by every module: square roots, square-free
structure, factorisations and prime-counting functions.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt, prod

from sympy import factorint, primerange

from common.exceptions import ArithmeticDomainError


@dataclass(frozen=True)
class Factorization:
    """
    Prime factorisation of a positive integer.

    Attributes:
        value (int): The factored integer
        factors (tuple[tuple[int, int], ...]): (prime, exponent) pairs, primes ascending
    """

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if prod(p**e for p, e in self.factors) != self.value:
            raise ArithmeticDomainError(f"factors {self.factors} do not multiply to {self.value}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def prime_powers(self) -> list[int]:
        return [p**e for p, e in self.factors]


@dataclass(frozen=True)
class SquarefreeDecomp:
    """n = s * f^2 with s square-free (sign carried on s) and f >= 1"""

    s: int
    f: int

    @property
    def value(self) -> int:
        return self.s * self.f * self.f


def int_sqrt(n: int) -> tuple[int, bool]:
    """Return (floor(sqrt(n)), whether n is a perfect square)."""
    if n < 0:
        raise ArithmeticDomainError(f"int_sqrt of negative integer {n}")
    root = isqrt(n)
    return root, root * root == n


def is_square(n: int) -> bool:
    """True for 0 and the positive perfect squares."""
    return n >= 0 and isqrt(n) ** 2 == n


@lru_cache(maxsize=1 << 16)
def factorize(n: int) -> Factorization:
    """Factor a positive integer with sympy; memoised, the cache holds immutable results only."""
    if n < 1:
        raise ArithmeticDomainError(f"can only factor positive integers, got {n}")
    return Factorization(n, tuple(sorted(factorint(n).items())))


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return all(e == 1 for _, e in factorize(abs(n)).factors)


def squarefree_part(n: int) -> SquarefreeDecomp:
    """
    Split a non-zero integer as n = s * f^2 with s square-free.

    The sign of n is carried on s, so squarefree_part(-8) == SquarefreeDecomp(-2, 2).
    """
    if n == 0:
        raise ArithmeticDomainError("squarefree_part of 0 is undefined")
    s, f = 1, 1
    for p, e in factorize(abs(n)).factors:
        if e % 2:
            s *= p
        f *= p ** (e // 2)
    return SquarefreeDecomp(s if n > 0 else -s, f)


def squarefree_sieve(N: int) -> list[int]:
    """Ascending list of the square-free integers in [1, N]."""
    if N < 1:
        return []
    flags = bytearray([1]) * (N + 1)
    flags[0] = 0
    for p in primerange(2, isqrt(N) + 1):
        square = p * p
        flags[square::square] = bytes(len(range(square, N + 1, square)))
    return [n for n in range(1, N + 1) if flags[n]]


def omega(n: int) -> int:
    """Number of distinct prime factors of |n|."""
    if n == 0:
        raise ArithmeticDomainError("omega(0) is undefined")
    return len(factorize(abs(n)).factors)
