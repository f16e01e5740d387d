"""
Counting points on the surface C(x1, x2) = x3^2 x4.

N(B) counts (x1, x2, x3, x4) with max |x_i| <= B, x3 x4 != 0 and
gcd(x1, x2, x4) = 1. brute_count is the reference; count_via_lattices
splits gcd(x1, x2) = h1^2 h2 with h2 square-free, writes
x = h1^2 h2 y, x3 = h1^3 h2^2 u and solves C(y1, y2) = h2 u^2 v with the
coprime (y1, y2) enumerated lattice by lattice.
"""

from math import gcd, log
from typing import NamedTuple

from arith.binary_forms import BinaryCubic
from arith.integers import is_squarefree
from arith.roots import roots_mod
from common.exceptions import ConfigurationError, FormError, InvariantViolation
from surface.lattices import Lattice2, lattice_cover, reduced_basis
from utils.parallel import ordered_map
from utils.workbench_logger import log_operation


class SurfaceCount(NamedTuple):
    count: int
    solutions: list[tuple[int, int, int, int]] | None = None


class NormalizedCubic(NamedTuple):
    cubic: BinaryCubic
    shear: int

    @property
    def box_factor(self) -> int:
        """The (x1, x2) box of the sheared problem is B / box_factor wide."""
        return 1 + abs(self.shear)


class Emission(NamedTuple):
    x1: int
    x2: int
    x3: int
    x4: int


class LowerBound(NamedTuple):
    B: int
    emissions: list[Emission]
    in_box: list[Emission]

    @property
    def ratio(self) -> float:
        """Emissions per unit of B."""
        return len(self.emissions) / self.B


class GrowthRow(NamedTuple):
    B: int
    count: int
    linear_ratio: float
    log_ratio: float | None


@log_operation()
def brute_count(C: BinaryCubic, B: int, collect: bool = False) -> SurfaceCount:
    """Triple loop over (x1, x2, x3); x4 = C(x1, x2) / x3^2 when integral."""
    if B < 1:
        raise ConfigurationError(f"B must be positive, got {B}")
    count, solutions = 0, [] if collect else None
    for x1 in range(-B, B + 1):
        for x2 in range(-B, B + 1):
            c = C(x1, x2)
            if c == 0:
                continue
            g = gcd(x1, x2)
            x3 = 1
            while x3 <= B and x3 * x3 <= abs(c):
                x4, rest = divmod(c, x3 * x3)
                if not rest and abs(x4) <= B and gcd(g, x4) == 1:
                    count += 2
                    if collect:
                        solutions.extend([(x1, x2, x3, x4), (x1, x2, -x3, x4)])
                x3 += 1
    return SurfaceCount(count, solutions)


def normalize_cubic(C: BinaryCubic) -> NormalizedCubic:
    """
    Shear x2 -> x2 + b x1 so that C(1, b) != 0, with b = 0, 1, -1, 2, -2.

    A cubic vanishes at no more than three slopes, so |b| <= 2 suffices.
    """
    for b in (0, 1, -1, 2, -2):
        if C(1, b) != 0:
            return NormalizedCubic(C.shear(b), b)
    raise FormError(f"{C} vanishes at every small slope")


def _squarefree_up_to(n: int) -> list[int]:
    return [h for h in range(1, n + 1) if is_squarefree(h)]


def _descent_tasks(C: BinaryCubic, B: int) -> list[tuple]:
    tasks = []
    h1 = 1
    while h1 * h1 <= B:
        for h2 in _squarefree_up_to(B // (h1 * h1)):
            for u in range(1, B // (h1**3 * h2 * h2) + 1):
                tasks.append((C.coefficients, B, h1, h2, u))
        h1 += 1
    return tasks


def _count_task(task: tuple) -> int:
    """Solutions with fixed (h1, h2, u); both signs of u are counted."""
    coefficients, B, h1, h2, u = task
    C = BinaryCubic(*coefficients)
    scale = h1 * h1 * h2
    x3 = h1**3 * h2 * h2 * u
    if (x3 * x3) % scale**3:
        raise InvariantViolation("h1^3 h2^2 | x3", f"h1={h1}, h2={h2}, u={u}")
    d = h2 * u * u
    Y = B // scale
    seen = set()
    for lattice in lattice_cover(C, d):
        for y1, y2 in lattice.points_in_box(Y):
            if (y1, y2) in seen or gcd(y1, y2) != 1:
                continue
            c = C(y1, y2)
            if c == 0 or c % d:
                continue
            v = c // d
            if abs(v) <= B and gcd(scale, v) == 1:
                seen.add((y1, y2))
    return 2 * len(seen)


@log_operation()
def count_via_lattices(C: BinaryCubic, B: int, workers: int = 1) -> int:
    """
    Exact N(B) through the (h1, h2, u) descent.

    The lattice cover handles C(1, 0) = 0 through the second root family,
    so the count equals brute_count for every separable C.
    """
    if B < 1:
        raise ConfigurationError(f"B must be positive, got {B}")
    return sum(ordered_map(_count_task, _descent_tasks(C, B), workers))


def _short_solution(C: BinaryCubic, lattice: Lattice2) -> tuple[int, int] | None:
    u, v = reduced_basis(lattice)
    for candidate in (u, v, (u[0] + v[0], u[1] + v[1]), (u[0] - v[0], u[1] - v[1])):
        if C(*candidate) != 0:
            return candidate
    return None


def lower_bound_construct(C: BinaryCubic, B: int) -> LowerBound:
    """
    One solution per root alpha of C(x, 1) mod x3^2, for 1 <= x3 <= B coprime to disc C.

    The solution is the shortest vector of <(x3^2, 0), (alpha, 1)> off the
    zero set of C, with x4 = C(x1, x2) / x3^2. in_box keeps the emissions
    counted by N(B).
    """
    disc = C.discriminant
    emissions, seen = [], set()
    for x3 in range(1, B + 1):
        if gcd(x3, disc) != 1:
            continue
        q = x3 * x3
        for alpha in roots_mod(C, q).residues:
            point = _short_solution(C, Lattice2(((q, 0), (alpha, 1)), q))
            if point is None or point + (x3,) in seen:
                continue
            seen.add(point + (x3,))
            x1, x2 = point
            x4, rest = divmod(C(x1, x2), q)
            if rest:
                raise InvariantViolation("x3^2 | C(x1, x2)", f"x3={x3}, point={point}")
            emissions.append(Emission(x1, x2, x3, x4))
    in_box = [e for e in emissions if max(abs(e.x1), abs(e.x2), abs(e.x4)) <= B and gcd(e.x1, e.x2, e.x4) == 1]
    return LowerBound(B, emissions, in_box)


def growth_table(C: BinaryCubic, grid: list[int], workers: int = 1) -> list[GrowthRow]:
    """
    Rows (B, N(B), N(B)/B, N(B)/(B (log B)^max(lambda, 2))); the last ratio is None at B = 1.

    Raises:
        ConfigurationError: if the grid is empty or not increasing
    """
    if not grid or any(b <= a for a, b in zip(grid, grid[1:])) or grid[0] < 1:
        raise ConfigurationError(f"grid must be positive and increasing, got {grid}")
    exponent = max(C.factor_count, 2)
    rows = []
    for B in grid:
        count = count_via_lattices(C, B, workers)
        log_ratio = count / (B * log(B) ** exponent) if B > 1 else None
        rows.append(GrowthRow(B, count, count / B, log_ratio))
    return rows
