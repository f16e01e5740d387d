"""
Square-class descent on the full two-torsion model y^2 = x (x - A D)(x - B D).

A point with g = gcd(x, D) descends to g y~^2 = x~ (x~ - A D~)(x~ - B D~)
and each factor splits as G_i y_i^2 with G_i square-free:

    x~        = G1 y1^2
    x~ - A D~ = G2 y2^2
    x~ - B D~ = G3 y3^2

Local solubility at the primes of n_i = G_i / gcd(AB(B-A), G_i) is a system
of Jacobi symbol conditions indexed by the R-matrix below.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, prod

from arith.integers import factorize, is_squarefree, squarefree_part
from arith.symbols import jacobi
from common.constants import Model
from common.exceptions import CompactComponentError, DescentError
from twists.curves import TwistCurve
from twists.points import gcd_decompose

# j of the two symbols (R_ij n_k / p) at the primes of n_i, k the remaining index
CONDITION_PAIRS = {1: (3, 2), 2: (3, 1), 3: (2, 1)}


@dataclass(frozen=True)
class FullTorsionDecomp:
    """
    Attributes:
        G (tuple[int, int, int]): Square-free parts of x~, x~ - A D~, x~ - B D~
        y (tuple[int, int, int]): Positive square roots of the cofactors
        delta (tuple[int, int, int]): gcd(G2, G3), gcd(G3, G1), gcd(G1, G2)
    """

    A: int
    B: int
    g: int
    Dt: int
    G: tuple[int, int, int]
    y: tuple[int, int, int]
    delta: tuple[int, int, int]

    def __post_init__(self):
        values = self.values
        if values[0] - values[1] != self.A * self.Dt or values[0] - values[2] != self.B * self.Dt:
            raise DescentError("G_i y_i^2 differences", f"{self}")
        if prod(self.G) != self.g * prod(self.delta) ** 2:
            raise DescentError("G1 G2 G3 = g (d1 d2 d3)^2", f"{self}")
        d1, d2, d3 = self.delta
        if (self.B - self.A) % d1 or self.B % d2 or self.A % d3:
            raise DescentError("d1 | B - A, d2 | B, d3 | A", f"delta = {self.delta}")

    @property
    def values(self) -> tuple[int, int, int]:
        """(G1 y1^2, G2 y2^2, G3 y3^2)"""
        return tuple(G * y * y for G, y in zip(self.G, self.y))

    @property
    def xt(self) -> int:
        return self.values[0]

    @property
    def point(self) -> tuple[int, int, int]:
        """(x, D, y) with y > 0."""
        yt = prod(self.delta) * prod(self.y)
        return self.g * self.xt, self.g * self.Dt, self.g * self.g * yt


@dataclass(frozen=True)
class RMatrix:
    """
    Symbol coefficients R_ij of the full model for fixed (gamma, D~).

    Indexing is R[i, j] with i in 1..3 and j in {0, 1, 2, 3, 4} minus i;
    R[i, 0] = 1 and R[i, 4] is the product of the two other entries of row i.
    """

    A: int
    B: int
    Dt: int
    gamma: tuple[int, int, int]
    n: tuple[int, int, int] = (1, 1, 1)

    def _core(self, i: int, j: int) -> int:
        A, B, Dt = self.A, self.B, self.Dt
        g1, g2, g3 = self.gamma
        match (i, j):
            case (1, 3):
                return -A * Dt * g2
            case (1, 2):
                return -B * Dt * g3
            case (2, 1):
                return -(B - A) * Dt * g3
            case (2, 3):
                return A * Dt * g1
            case (3, 2):
                return B * Dt * g1
            case (3, 1):
                return (B - A) * Dt * g2
        raise DescentError("R index", f"no entry R{i}{j}")

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        if i not in (1, 2, 3) or j == i or j not in (0, 1, 2, 3, 4):
            raise DescentError("R index", f"no entry R{i}{j}")
        if j == 0:
            return 1
        if j == 4:
            return prod(self._core(i, k) for k in (1, 2, 3) if k != i)
        return self._core(i, j)

    def entries(self) -> dict[str, int]:
        """All twelve entries keyed by their two-digit index name."""
        return {f"{i}{j}": self[i, j] for i in (1, 2, 3) for j in (0, 1, 2, 3, 4) if j != i}


def full2_decompose(point: tuple[int, int], curve: TwistCurve) -> FullTorsionDecomp:
    """
    Split the three factors of a non-torsion point with x > B D.

    Raises:
        DescentError: for a curve that is not a positive full-model twist, or a torsion point
        CompactComponentError: for x < B D
    """
    if curve.model != Model.FULL or curve.D < 1:
        raise DescentError("full model, D > 0", f"{curve}")
    x, y = point
    if y == 0:
        raise DescentError("non-torsion point", f"{point} is 2-torsion")
    if x < curve.B * curve.D:
        raise CompactComponentError(point)
    g, xt, Dt, _ = gcd_decompose(point, curve)
    factors = (xt, xt - curve.A * Dt, xt - curve.B * Dt)
    parts = [squarefree_part(f) for f in factors]
    G = tuple(p.s for p in parts)
    delta = (gcd(G[1], G[2]), gcd(G[2], G[0]), gcd(G[0], G[1]))
    return FullTorsionDecomp(curve.A, curve.B, g, Dt, G, tuple(p.f for p in parts), delta)


def full2_recover(values: tuple[int, int], pair: tuple[int, int], A: int, B: int) -> tuple[int, int, int]:
    """
    Rebuild (x, D, y) from (G_i y_i^2, G_j y_j^2) for the index pair (i, j).

    D~ comes from the difference of the two values, the third value from D~,
    and g from the square-free part of the product of all three.

    Raises:
        DescentError: if D~ is not a positive integer or the product is not g times a square
        CompactComponentError: if one of the three values is not positive
    """
    i, j = pair
    shifts = {1: 0, 2: A, 3: B}
    if i == j or i not in shifts or j not in shifts:
        raise DescentError("index pair", f"{pair}")
    vi, vj = values
    Dt, rest = divmod(vi - vj, shifts[j] - shifts[i])
    if rest or Dt < 1:
        raise DescentError("D~ positive integer", f"values {values}, pair {pair}")
    xt = vi + shifts[i] * Dt
    factors = (xt, xt - A * Dt, xt - B * Dt)
    if min(factors) <= 0:
        raise CompactComponentError((xt, Dt), f"recovered factors {factors} are not all positive")
    product = prod(factors)
    g = squarefree_part(product).s
    yt = isqrt(product // g)
    if g * yt * yt != product:
        raise DescentError("g y~^2 = x~ (x~ - A D~)(x~ - B D~)", f"x~ = {xt}, D~ = {Dt}")
    return g * xt, g * Dt, g * g * yt


def r_matrix(decomp: FullTorsionDecomp, A: int, B: int) -> RMatrix:
    """gamma_i = gcd(AB(B-A), G_i) and n_i = G_i / gamma_i; gamma is taken positive."""
    modulus = A * B * (B - A)
    gamma = tuple(gcd(modulus, G) for G in decomp.G)
    n = tuple(G // c for G, c in zip(decomp.G, gamma))
    return RMatrix(A, B, decomp.Dt, gamma, n)


def _check_triple(n: tuple[int, int, int]):
    for value in n:
        if value < 1 or value % 2 == 0 or not is_squarefree(value):
            raise DescentError("n_i odd square-free positive", f"n = {n}")
    if gcd(n[0], n[1]) != 1 or gcd(n[0], n[2]) != 1 or gcd(n[1], n[2]) != 1:
        raise DescentError("n_i pairwise coprime", f"n = {n}")


def _symbols(n: tuple[int, int, int], R: RMatrix):
    """Yield (p, symbol) for the six condition families at every prime of n1 n2 n3."""
    for i in (1, 2, 3):
        for p in factorize(n[i - 1]).primes if n[i - 1] > 1 else ():
            for j in CONDITION_PAIRS[i]:
                yield p, jacobi(R[i, j] * n[5 - i - j], p)


def local_conditions_full(n1: int, n2: int, n3: int, R: RMatrix) -> bool:
    """
    True iff every symbol condition holds:

        p | n1: (R13 n2 / p) = (R12 n3 / p) = 1
        p | n2: (R23 n1 / p) = (R21 n3 / p) = 1
        p | n3: (R32 n1 / p) = (R31 n2 / p) = 1

    Raises:
        DescentError: for even, non-square-free or non-coprime n_i
    """
    n = (n1, n2, n3)
    _check_triple(n)
    return all(symbol == 1 for _, symbol in _symbols(n, R))


def indicator_triple(n1: int, n2: int, n3: int, R: RMatrix) -> Fraction:
    """4^-omega(n1 n2 n3) times the product of (1 + symbol) over the six families."""
    n = (n1, n2, n3)
    _check_triple(n)
    value = Fraction(1)
    for _, symbol in _symbols(n, R):
        value *= Fraction(1 + symbol, 2)
    return value
