"""
Root counts of a cubic form modulo n.

rho(n) counts residues x mod n with C(x, 1) = 0 mod n, rho'(n) does the same
for C(1, x). Counts are built per prime power and combined with the Chinese
remainder theorem. Simple roots lift uniquely (Hensel); roots at which the
derivative vanishes are lifted exhaustively.
"""

from fractions import Fraction
from math import log
from typing import NamedTuple

import mpmath
from sympy import primerange
from sympy.ntheory.modular import crt
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_degree, gf_from_int_poly, gf_gcd, gf_pow_mod, gf_sub

from arith.binary_forms import BinaryCubic, poly_derivative, poly_eval
from arith.integers import factorize
from common.constants import RHO_EXACT_LIMIT, RHO_MP_PRECISION
from common.exceptions import ArithmeticDomainError


class RootCount(NamedTuple):
    count: int
    residues: list[int]


class RhoMean(NamedTuple):
    """Partial sum of rho(p)/p over p <= N next to its lambda * log log N reference."""

    N: int
    value: Fraction | mpmath.mpf
    reference: float
    exact: bool

    @property
    def deviation(self) -> float:
        return float(self.value) - self.reference


def hensel_lift(coeffs: list[int], r: int, p: int, v: int) -> int | None:
    """
    Lift a root r of the polynomial mod p to the unique root mod p^v above it.

    Returns None when the derivative vanishes at r mod p; lift_all handles
    that case.
    """
    if poly_eval(coeffs, r) % p:
        raise ArithmeticDomainError(f"{r} is not a root mod {p}")
    r %= p
    if v <= 1:
        return r
    derivative = poly_derivative(coeffs)
    if poly_eval(derivative, r) % p == 0:
        return None
    for k in range(2, v + 1):
        modulus = p**k
        step = poly_eval(coeffs, r) * pow(poly_eval(derivative, r), -1, modulus)
        r = (r - step) % modulus
    return r


def lift_all(coeffs: list[int], r: int, p: int, v: int) -> list[int]:
    """Every root mod p^v reducing to r mod p, by lifting one digit at a time."""
    current = [r % p] if poly_eval(coeffs, r) % p == 0 else []
    for k in range(1, v):
        step, modulus = p**k, p ** (k + 1)
        current = [
            s + t * step for s in current for t in range(p) if poly_eval(coeffs, s + t * step) % modulus == 0
        ]
    return sorted(current)


def _roots_mod_prime_power(coeffs: list[int], p: int, e: int) -> list[int]:
    roots = [x for x in range(p) if poly_eval(coeffs, x) % p == 0]
    if e == 1:
        return roots
    lifted = []
    for r in roots:
        lift = hensel_lift(coeffs, r, p, e)
        lifted.extend(lift_all(coeffs, r, p, e) if lift is None else [lift])
    return sorted(lifted)


def poly_roots_mod(coeffs: list[int], n: int) -> RootCount:
    """Roots of a univariate integer polynomial modulo n, CRT-combined across prime powers."""
    if n < 1:
        raise ArithmeticDomainError(f"modulus must be positive, got {n}")
    if n == 1:
        return RootCount(1, [0])
    moduli, root_lists = [], []
    for p, e in factorize(n).factors:
        roots = _roots_mod_prime_power(coeffs, p, e)
        if not roots:
            return RootCount(0, [])
        moduli.append(p**e)
        root_lists.append(roots)
    if len(moduli) == 1:
        return RootCount(len(root_lists[0]), root_lists[0])
    combos = [[]]
    for roots in root_lists:
        combos = [c + [r] for c in combos for r in roots]
    residues = sorted(int(crt(moduli, combo)[0]) for combo in combos)
    return RootCount(len(residues), residues)


def roots_mod(C: BinaryCubic, n: int, first: bool = True) -> RootCount:
    """rho(n) with residues when `first` is true (C(x, 1)), otherwise rho'(n) for C(1, x)."""
    return poly_roots_mod(C.dehomogenize(first), n)


def rho(C: BinaryCubic, n: int) -> int:
    return roots_mod(C, n, True).count


def rho_prime(C: BinaryCubic, n: int) -> int:
    return roots_mod(C, n, False).count


def mult_f(C: BinaryCubic, n: int) -> int:
    """
    Multiplicative bound on the number of lattices covering coprime solutions
    of C(y1, y2) = 0 mod n. At p^v it is rho if p does not divide C(1, 0), rho'
    if p divides C(1, 0) but not C(0, 1), and rho + rho' otherwise.
    """
    if C.c0 == 0:
        raise ArithmeticDomainError("mult_f needs C(1, 0) != 0")
    total = 1
    for p, e in factorize(n).factors:
        q = p**e
        if C.c0 % p:
            total *= rho(C, q)
        elif C.c3 % p:
            total *= rho_prime(C, q)
        else:
            total *= rho(C, q) + rho_prime(C, q)
    return total


def rho_at_prime(C: BinaryCubic, p: int) -> int:
    """Number of roots of C(x, 1) mod a prime p, via gcd(C(x, 1), x^p - x) over GF(p)."""
    f = gf_from_int_poly(C.dehomogenize(True), p)
    if not f:
        return p
    if gf_degree(f) == 0:
        return 0
    x_to_p = gf_pow_mod([1, 0], p, f, p, ZZ)
    return gf_degree(gf_gcd(f, gf_sub(x_to_p, [1, 0], p, ZZ), p, ZZ))


def rho_mean(C: BinaryCubic, N: int) -> RhoMean:
    """
    Sum of rho(p)/p over primes p <= N, exact while N <= RHO_EXACT_LIMIT and in
    128-bit mpmath arithmetic beyond.
    """
    if N < 3:
        raise ArithmeticDomainError(f"rho_mean needs N >= 3 so that log log N is defined, got {N}")
    reference = C.factor_count * log(log(N))
    if N <= RHO_EXACT_LIMIT:
        total = sum((Fraction(rho_at_prime(C, p), p) for p in primerange(2, N + 1)), Fraction(0))
        return RhoMean(N, total, reference, True)
    with mpmath.workprec(RHO_MP_PRECISION):
        total = mpmath.fsum(mpmath.mpf(rho_at_prime(C, p)) / p for p in primerange(2, N + 1))
    return RhoMean(N, total, reference, False)


def root_count_bound(C: BinaryCubic, p: int) -> int:
    """3 * p^floor(v_p(disc C) / 2), the bound on rho(p^v) and rho'(p^v)."""
    disc = abs(C.discriminant)
    v = 0
    while disc % p == 0:
        disc //= p
        v += 1
    return 3 * p ** (v // 2)
