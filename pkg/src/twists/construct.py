"""
Twists with an integral point built by construction.

For pairs (alpha, beta) with beta != 0 put d = C(alpha, beta)
with C(a, b) = a^3 + A a b^2 + B b^3 and D = beta * d. Then (alpha d, d^2)
lies on y^2 = x^3 + A D^2 x + B D^3, since the right hand side equals
d^3 C(alpha, beta) = d^4.
"""

from typing import NamedTuple

import mpmath
from sympy import integer_nthroot

from arith.integers import is_squarefree
from common.exceptions import InvariantViolation
from twists.curves import TwistCurve
from utils.workbench_logger import log_operation


class Construction(NamedTuple):
    alpha: int
    beta: int
    witness: tuple[int, int]


def _real_parts(A: int, B: int) -> list[mpmath.mpf]:
    with mpmath.workdps(40):
        return sorted({mpmath.re(r) for r in mpmath.polyroots([1, 0, A, B], maxsteps=200, extraprec=100)})


def _alpha_window(centres, beta: int, m: int) -> set[int]:
    """
    Integers alpha that can satisfy |C(alpha, beta)| <= m.

    C(alpha, beta) is the product of alpha - beta r over the three roots r,
    so some |alpha - beta Re(r)| is at most m^(1/3).
    """
    radius = integer_nthroot(m, 3)[0] + 2
    window = set()
    for c in centres:
        centre = beta * c
        window.update(range(int(mpmath.floor(centre)) - radius, int(mpmath.ceil(centre)) + radius + 1))
    return window


@log_operation()
def construct_points(A: int, B: int, N: int) -> dict[int, Construction]:
    """
    Map each constructed D with |D| <= N to its first witness.

    beta runs over 1, -1, 2, -2, ... and alpha increases within a row, so
    the kept witness is the first in that order.

    Raises:
        InvariantViolation: if a witness is not on its curve
    """
    centres = _real_parts(A, B)
    found: dict[int, Construction] = {}
    for size in range(1, N + 1):
        m = N // size
        for beta in (size, -size):
            for alpha in sorted(_alpha_window(centres, beta, m)):
                d = alpha**3 + A * alpha * beta * beta + B * beta**3
                D = beta * d
                if D == 0 or abs(D) > N or D in found or not is_squarefree(D):
                    continue
                witness = (alpha * d, d * d)
                if not TwistCurve(A, B, D).on_curve(witness):
                    raise InvariantViolation("(alpha d, d^2) on E_D", f"alpha={alpha}, beta={beta}, D={D}")
                found[D] = Construction(alpha, beta, witness)
    return dict(sorted(found.items()))


def constructed_count(constructions: dict[int, Construction], bound: int) -> int:
    """Distinct constructed D with |D| <= bound."""
    return sum(1 for D in constructions if abs(D) <= bound)
