"""
Rank 2 sublattices of Z^2 used to cover coprime solutions of C(y1, y2) = 0 mod d.

Lattices are kept in the triangular form ((a, 0), (t, g)) with 0 <= t < a,
so the points are (t k + a j, g k) and the determinant is a g.
"""

from dataclasses import dataclass
from itertools import product
from math import gcd

from sympy.core.intfunc import igcdex

from arith.binary_forms import BinaryCubic
from arith.integers import factorize
from arith.roots import roots_mod
from common.exceptions import ArithmeticDomainError, InvariantViolation


@dataclass(frozen=True)
class Lattice2:
    basis: tuple[tuple[int, int], tuple[int, int]]
    determinant: int

    def __post_init__(self):
        (a, b), (c, d) = self.basis
        if self.determinant < 1 or abs(a * d - b * c) != self.determinant:
            raise ArithmeticDomainError(f"basis {self.basis} does not have determinant {self.determinant}")

    @classmethod
    def from_generators(cls, vectors) -> "Lattice2":
        """The lattice spanned by the given vectors, which must have rank 2."""
        a, t, g = _triangular(vectors)
        if a == 0 or g == 0:
            raise ArithmeticDomainError(f"vectors {list(vectors)} do not span a rank 2 lattice")
        return cls(((a, 0), (t, g)), a * g)

    @classmethod
    def standard(cls) -> "Lattice2":
        return cls(((1, 0), (0, 1)), 1)

    def contains(self, v: tuple[int, int]) -> bool:
        """Solve v = c1 b1 + c2 b2 by Cramer's rule and test integrality."""
        (a, b), (c, d) = self.basis
        x, y = v
        det = a * d - b * c
        return (x * d - y * c) % det == 0 and (a * y - b * x) % det == 0

    def intersect(self, other: "Lattice2") -> "Lattice2":
        """Intersection with a lattice of coprime determinant: q2 L1 + q1 L2."""
        q1, q2 = self.determinant, other.determinant
        if gcd(q1, q2) != 1:
            raise ArithmeticDomainError(f"determinants {q1} and {q2} are not coprime")
        vectors = [(q2 * x, q2 * y) for x, y in self.basis] + [(q1 * x, q1 * y) for x, y in other.basis]
        return Lattice2.from_generators(vectors)

    def points_in_box(self, Y: int):
        """Yield the lattice points with max(|y1|, |y2|) <= Y."""
        a, t, g = _triangular(self.basis)
        for k in range(-(Y // g), Y // g + 1):
            base = t * k
            for j in range(-((Y + base) // a), (Y - base) // a + 1):
                yield base + a * j, g * k


def _triangular(vectors) -> tuple[int, int, int]:
    """
    Reduce generators to (a, t, g): the lattice is a Z x {0} plus Z (t, g).

    Pairs are combined with an extended gcd on the second coordinate; the
    transformation is unimodular so the span is unchanged.
    """
    a, pivot = 0, None
    for x, y in vectors:
        if y == 0:
            a = gcd(a, x)
            continue
        if pivot is None:
            pivot = (x, y)
            continue
        px, py = pivot
        s, r, h = map(int, igcdex(py, y))
        pivot = (s * px + r * x, h)
        a = gcd(a, (py * x - y * px) // h)
    if pivot is None:
        return a, 0, 0
    px, py = pivot
    if py < 0:
        px, py = -px, -py
    return a, (px % a if a else px), py


def _prime_power_cover(C: BinaryCubic, p: int, e: int) -> list[Lattice2]:
    q = p**e
    lattices = []
    # p | y2 forces p | C(1, 0) for coprime (y1, y2); p | y1 forces p | C(0, 1)
    if C.c0 % p:
        kinds = (True,)
    elif C.c3 % p:
        kinds = (False,)
    else:
        kinds = (True, False)
    for first in kinds:
        for r in roots_mod(C, q, first).residues:
            if first:
                lattices.append(Lattice2(((q, 0), (r, 1)), q))
            else:
                lattices.append(Lattice2.from_generators([(0, q), (1, r)]))
    return lattices


def lattice_cover(C: BinaryCubic, d: int) -> list[Lattice2]:
    """
    Lattices of determinant d covering every coprime (y1, y2) with d | C(y1, y2).

    Built per prime power of d and combined across primes; the list has at
    most mult_f(d) entries.
    """
    if d < 1:
        raise ArithmeticDomainError(f"lattice_cover needs d >= 1, got {d}")
    if d == 1:
        return [Lattice2.standard()]
    per_prime = [_prime_power_cover(C, p, e) for p, e in factorize(d).factors]
    cover = []
    for combo in product(*per_prime):
        lattice = combo[0]
        for other in combo[1:]:
            lattice = lattice.intersect(other)
        cover.append(lattice)
    return cover


def _norm2(v: tuple[int, int]) -> int:
    return v[0] * v[0] + v[1] * v[1]


def _dot(u: tuple[int, int], v: tuple[int, int]) -> int:
    return u[0] * v[0] + u[1] * v[1]


def _canonical_sign(v: tuple[int, int]) -> tuple[int, int]:
    return v if v[0] > 0 or (v[0] == 0 and v[1] > 0) else (-v[0], -v[1])


def reduced_basis(L: Lattice2) -> tuple[tuple[int, int], tuple[int, int]]:
    """Gauss-reduced basis (u, v) with |u| <= |v|."""
    u, v = L.basis
    if _norm2(u) > _norm2(v):
        u, v = v, u
    while True:
        n = _norm2(u)
        # nearest integer to <u, v> / |u|^2
        mu = (2 * _dot(u, v) + n) // (2 * n)
        v = (v[0] - mu * u[0], v[1] - mu * u[1])
        if _norm2(v) >= n:
            return _canonical_sign(u), _canonical_sign(v)
        u, v = v, u


def minkowski_small(L: Lattice2) -> tuple[int, int]:
    """
    A shortest non-zero vector of L.

    Raises:
        InvariantViolation: if its sup-norm exceeds 2 sqrt(det L)
    """
    u, _ = reduced_basis(L)
    if max(abs(u[0]), abs(u[1])) ** 2 > 4 * L.determinant:
        raise InvariantViolation("|v| <= 2 sqrt(det)", f"{u} in {L}")
    return u
