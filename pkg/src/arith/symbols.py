"""
Quadratic residue symbols.

Jacobi symbols come from sympy; this module adds the argument checks the
descent code relies on, the Kronecker extension to even moduli and the
reciprocity sign that collapses a pair of symbols into one sign.
"""

from sympy import jacobi_symbol, sqrt_mod

from arith.integers import factorize
from common.exceptions import ArithmeticDomainError


def jacobi(a: int, n: int) -> int:
    """
    Jacobi symbol (a/n) for odd positive n.

    Returns 0 exactly when gcd(a, n) > 1. Negative a is allowed, so
    jacobi(-1, n) follows (-1)^((n-1)/2).
    """
    if n < 1 or n % 2 == 0:
        raise ArithmeticDomainError(f"Jacobi symbol needs an odd positive modulus, got {n}")
    if n == 1:
        return 1
    return int(jacobi_symbol(a % n, n))


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for positive n."""
    if n < 1:
        raise ArithmeticDomainError(f"Kronecker symbol needs a positive modulus, got {n}")
    twos = (n & -n).bit_length() - 1
    odd = n >> twos
    value = jacobi(a, odd)
    if twos:
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5) and twos % 2:
            value = -value
    return value


def reciprocity_sign(Di: int, Dj: int) -> int:
    """(-1)^(((Di-1)/2)((Dj-1)/2)) for odd positive Di, Dj; equals (Di/Dj)(Dj/Di) when coprime."""
    if Di < 1 or Dj < 1 or Di % 2 == 0 or Dj % 2 == 0:
        raise ArithmeticDomainError(f"reciprocity sign needs odd positive integers, got {Di}, {Dj}")
    return -1 if (Di % 4 == 3 and Dj % 4 == 3) else 1


def omega_d(n: int, d: int) -> int:
    """Number of primes p | n with (d/p) = 1."""
    if n == 0:
        raise ArithmeticDomainError("omega_d(0, d) is undefined")
    return sum(1 for p in factorize(abs(n)).primes if kronecker(d, p) == 1)


def in_split_set(n: int, d: int) -> bool:
    """True for odd positive n whose every prime p satisfies (d/p) = 1."""
    if n < 1 or n % 2 == 0:
        return False
    return all(jacobi(d, p) == 1 for p in factorize(n).primes)


def modular_sqrt(a: int, p: int) -> int | None:
    """Least s in [0, p) with s^2 = a mod p, or None when a is a non-residue."""
    root = sqrt_mod(a % p, p)
    return None if root is None else int(root)
