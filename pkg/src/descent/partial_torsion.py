"""
Descent on the partial two-torsion model y^2 = x (x^2 + A D x + B D^2).

With g = gcd(x, D) and delta = gcd(x~, x~^2 + A D~ x~ + B D~^2), which
divides B, the two factors split as

    x~                      = g1 delta y1^2
    x~^2 + A D~ x~ + B D~^2 = g2 delta y2^2,   g1 g2 = g.

At a prime p | n2 with (B/p) = 1 the condition involves the class of
alpha = (-A + sqrt(A^2 - 4B)) / 2 modulo a prime above p, read off from a
square root s of A^2 - 4B mod p.
"""

from dataclasses import dataclass
from math import gcd

from arith.integers import factorize, squarefree_part
from arith.symbols import jacobi, modular_sqrt
from common.constants import Model
from common.exceptions import ArithmeticDomainError, CompactComponentError, DescentError
from twists.curves import TwistCurve
from twists.points import gcd_decompose, is_compact


@dataclass(frozen=True)
class PartialDecomp:
    A: int
    B: int
    g1: int
    g2: int
    delta: int
    y1: int
    y2: int
    Dt: int

    def validate(self):
        """
        Raises:
            DescentError: if delta does not divide B or the second factor does not match
        """
        if self.B % self.delta:
            raise DescentError("delta | B", f"delta = {self.delta}, B = {self.B}")
        if self.quadratic != self.g2 * self.delta * self.y2 * self.y2:
            raise DescentError("x~^2 + A D~ x~ + B D~^2 = g2 delta y2^2", f"{self}")

    @property
    def g(self) -> int:
        return self.g1 * self.g2

    @property
    def xt(self) -> int:
        return self.g1 * self.delta * self.y1 * self.y1

    @property
    def quadratic(self) -> int:
        xt, Dt = self.xt, self.Dt
        return xt * xt + self.A * Dt * xt + self.B * Dt * Dt


@dataclass(frozen=True)
class PartialRValues:
    """gamma_i = gcd(g_i, 2B(A^2 - 4B)), n_i = g_i / gamma_i, R12 = B delta gamma2, R21 = D~ delta gamma1."""

    gamma: tuple[int, int]
    n: tuple[int, int]
    R12: int
    R21: int


def partial_decompose(point: tuple[int, int], curve: TwistCurve) -> PartialDecomp:
    """
    Raises:
        DescentError: for a curve that is not a positive partial-model twist, or a torsion point
        CompactComponentError: for a point on the compact real component
    """
    if curve.model != Model.PARTIAL or curve.D < 1:
        raise DescentError("partial model, D > 0", f"{curve}")
    x, y = point
    if y == 0:
        raise DescentError("non-torsion point", f"{point} is 2-torsion")
    if is_compact(curve, x):
        raise CompactComponentError(point)
    g, xt, Dt, _ = gcd_decompose(point, curve)
    quadratic = xt * xt + curve.A * Dt * xt + curve.B * Dt * Dt
    delta = gcd(xt, quadratic)
    first, second = squarefree_part(xt // delta), squarefree_part(quadratic // delta)
    if first.s * second.s != g:
        raise DescentError("g1 g2 = g", f"g1 = {first.s}, g2 = {second.s}, g = {g}")
    decomp = PartialDecomp(curve.A, curve.B, first.s, second.s, delta, first.f, second.f, Dt)
    decomp.validate()
    return decomp


def partial_r_values(decomp: PartialDecomp, A: int, B: int) -> PartialRValues:
    modulus = 2 * B * (A * A - 4 * B)
    gamma = (gcd(decomp.g1, modulus), gcd(decomp.g2, modulus))
    n = (decomp.g1 // gamma[0], decomp.g2 // gamma[1])
    return PartialRValues(gamma, n, B * decomp.delta * gamma[1], decomp.Dt * decomp.delta * gamma[0])


def artin_symbol(A: int, B: int, p: int) -> int:
    """
    (alpha / P) for a prime P above p, from alpha = (-A + s) / 2 mod p with s^2 = A^2 - 4B.

    The value does not depend on s when (B/p) = 1, which is the only case allowed.

    Raises:
        ArithmeticDomainError: if p is even, divides B(A^2 - 4B), or (A^2 - 4B / p) or (B / p) is not 1
    """
    disc = A * A - 4 * B
    if p == 2 or (B * disc) % p == 0:
        raise ArithmeticDomainError(f"Artin symbol needs an odd prime coprime to B(A^2 - 4B), got {p}")
    if jacobi(disc, p) != 1 or jacobi(B, p) != 1:
        raise ArithmeticDomainError(f"{p} does not split completely in Q(sqrt({disc}), sqrt({B}))")
    s = modular_sqrt(disc, p)
    alpha = (-A + s) * pow(2, -1, p) % p
    return jacobi(alpha, p)


def local_conditions_partial(decomp: PartialDecomp, A: int, B: int) -> bool:
    """
    At p | n1: (R12 n2 / p) = 1.
    At p | n2: (A^2 - 4B / p) = 1 and, when (B/p) = 1, artin_symbol * (R21 n1 / p) = 1.
    """
    values = partial_r_values(decomp, A, B)
    n1, n2 = values.n
    disc = A * A - 4 * B
    for p in factorize(n1).primes:
        if jacobi(values.R12 * n2, p) != 1:
            return False
    for p in factorize(n2).primes:
        if jacobi(disc, p) != 1:
            return False
        if jacobi(B, p) == 1 and artin_symbol(A, B, p) * jacobi(values.R21 * n1, p) != 1:
            return False
    return True
