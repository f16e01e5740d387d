"""
Points the square-class descent cannot count generically, and the
compact-component catalogue.

First kind (full model): x B D and (x - A D)(B - A) D are squares, so
U^2 = B x~, V^2 = (B - A)(x~ - A) and x~ - B = G3 y3^2 give a solution of

    B V^2 - (B - A) U^2 = -A B (B - A),   U^2 - B G3 y3^2 = B^2.

Second kind (full model, A = a^2, B = b^2): x D is a square, x = D u^2.

Partial model: x B is a square; then eta = X + 2 sqrt(Q) with X = 2x~ + A D~
and Q = x~^2 + A D~ x~ + B D~^2 has norm D~^2 (A^2 - 4B).
"""

from fractions import Fraction
from math import ceil, floor, gcd, isqrt, log
from typing import NamedTuple

from arith.integers import factorize, is_square, is_squarefree, squarefree_part
from common.constants import ExceptionKind, Model
from common.exceptions import DescentError
from descent.four_square import FourSquareDecomp, four_square_decompose
from pell.equations import norm_elements
from twists.curves import TwistCurve, real_roots
from twists.points import gcd_decompose
from twists.scan import ScanCorpus
from utils.workbench_logger import log_operation

# Largest D~ of a compact catalogue, whatever (log N)^kappa says
CATALOGUE_DT_CAP = 500


class FirstKindWitness(NamedTuple):
    V: int
    U: int
    y3: int
    G3: int

    def system(self, A: int, B: int) -> tuple[int, int, int, int, int, int]:
        """(a, b, u, c, d, v) of the Pell system, in simultaneous_solve order."""
        return B, B - A, -A * B * (B - A), 1, B * self.G3, B * B


class ExceptionalPoint(NamedTuple):
    kind: ExceptionKind
    D: int
    x: int
    y: int
    witness: FirstKindWitness | FourSquareDecomp | tuple


class CatalogueEntry(NamedTuple):
    D: int
    x: int
    y: int
    Dt: int
    g: int


def _full_point(point: tuple[int, int], curve: TwistCurve):
    if curve.model != Model.FULL or curve.D < 1:
        raise DescentError("full model, D > 0", f"{curve}")
    x, _ = point
    if x % curve.D or x <= curve.B * curve.D:
        raise DescentError("D | x, x > B D", f"point {point} on {curve}")
    return x // curve.D


def first_kind_witness(point: tuple[int, int], curve: TwistCurve) -> FirstKindWitness:
    """
    Raises:
        DescentError: if the point is not a first-kind exceptional point of a positive full-model twist
    """
    xt = _full_point(point, curve)
    A, B = curve.A, curve.B
    if not is_square(B * xt) or not is_square((B - A) * (xt - A)):
        raise DescentError("x B D and (x - A D)(B - A) D squares", f"point {point} on {curve}")
    rest = squarefree_part(xt - B)
    return FirstKindWitness(isqrt((B - A) * (xt - A)), isqrt(B * xt), rest.f, rest.s)


def second_kind_decomp(point: tuple[int, int], curve: TwistCurve) -> FourSquareDecomp:
    """
    Raises:
        DescentError: unless A and B are squares and x D is a square with x > B D
    """
    xt = _full_point(point, curve)
    if not (is_square(curve.A) and is_square(curve.B) and is_square(xt)):
        raise DescentError("A, B, x D squares", f"point {point} on {curve}")
    return four_square_decompose(isqrt(xt), isqrt(curve.A), isqrt(curve.B))


def partial_eta(point: tuple[int, int], curve: TwistCurve) -> tuple[int, Fraction]:
    """
    (X, Y) with eta = X + Y sqrt(B); for square B the integer eta itself as (eta, 0).

    Raises:
        DescentError: unless the curve is a positive partial-model twist, x > 0 and x B is a square
    """
    if curve.model != Model.PARTIAL or curve.D < 1:
        raise DescentError("partial model, D > 0", f"{curve}")
    x, _ = point
    if x < 1 or not is_square(x * curve.B):
        raise DescentError("x > 0, x B square", f"point {point} on {curve}")
    _, xt, Dt, _ = gcd_decompose(point, curve)
    A, B = curve.A, curve.B
    Q = xt * xt + A * Dt * xt + B * Dt * Dt
    X = abs(2 * xt + A * Dt)
    if is_square(B):
        return X + 2 * isqrt(Q), 0
    return X, Fraction(2 * isqrt(Q * B), B)


def eta_candidates(A: int, B: int, Dt: int, height: int) -> list[tuple[int, int]]:
    """
    Possible eta = X + Y sqrt(B) of norm D~^2 (A^2 - 4B).

    Square B: every divisor of the norm up to sign, as (d, 0). Non-square
    B > 0: the norm elements with 1 < eta <= height. B < 0: none.
    """
    norm = Dt * Dt * (A * A - 4 * B)
    if B < 0:
        return []
    if is_square(B):
        divisors = [1]
        for p, e in factorize(abs(norm)).factors:
            divisors = [d * p**k for d in divisors for k in range(e + 1)]
        return sorted((s * d, 0) for d in divisors for s in (1, -1))
    return [element for element in norm_elements(B, norm, height) if element != (1, 0)]


def _classify(point: tuple[int, int], curve: TwistCurve) -> ExceptionalPoint | None:
    x, y = point
    if curve.model == Model.PARTIAL:
        if x > 0 and is_square(x * curve.B):
            return ExceptionalPoint(ExceptionKind.PARTIAL, curve.D, x, y, partial_eta(point, curve))
        return None
    if curve.model != Model.FULL or x % curve.D or x <= curve.B * curve.D:
        return None
    A, B, D = curve.A, curve.B, curve.D
    if is_square(x * B * D) and is_square((x - A * D) * (B - A) * D):
        return ExceptionalPoint(ExceptionKind.FIRST, D, x, y, first_kind_witness(point, curve))
    if is_square(A) and is_square(B) and is_square(x * D):
        return ExceptionalPoint(ExceptionKind.SECOND, D, x, y, second_kind_decomp(point, curve))
    return None


@log_operation()
def exceptional_scan(corpus: ScanCorpus) -> list[ExceptionalPoint]:
    """Exceptional points among the non-torsion y > 0 points of the positive twists, sorted by (D, x)."""
    params = corpus.params
    found = []
    for D in corpus.twists_with_points():
        if D < 1:
            continue
        curve = TwistCurve(params.A, params.B, D, params.model)
        for record in corpus.records[D]:
            if record.is_torsion or record.point.y < 0:
                continue
            hit = _classify(tuple(record.point), curve)
            if hit is not None:
                found.append(hit)
    return sorted(found, key=lambda p: (p.D, p.x))


def catalogue_bound(N: int, kappa: float, cap: int = CATALOGUE_DT_CAP) -> int:
    """min(floor((log N)^kappa), cap), at least 1."""
    if N < 3:
        return 1
    return max(1, min(floor(log(N) ** kappa), cap))


def compact_catalogue(A: int, B: int, model: Model, Dt_max: int) -> list[CatalogueEntry]:
    """
    Every integral point with y > 0 on a compact component of a positive twist,
    built from the coprime pairs (x~, D~) with D~ <= Dt_max and C(x~, D~) > 0.
    Sorted by (D, x).
    """
    entries = []
    for Dt in range(1, Dt_max + 1):
        if not is_squarefree(Dt):
            continue
        curve = TwistCurve(A, B, Dt, model)
        roots = real_roots(curve.rhs_coefficients)
        if len(roots) != 3:
            continue
        for xt in range(ceil(roots[0][0]), floor(roots[1][1]) + 1):
            value = curve.rhs(xt)
            if value <= 0 or gcd(xt, Dt) != 1:
                continue
            part = squarefree_part(value)
            if gcd(part.s, Dt) == 1:
                g = part.s
                entries.append(CatalogueEntry(g * Dt, g * xt, g * g * part.f, Dt, g))
    return sorted(entries, key=lambda e: (e.D, e.x))
