"""
Reduction of binary quartics and canonical representatives of pointed forms.

reduce looks for a primitive vector v1 minimising N(v) = f(v)^2 + G_f(v)^2;
completing v1 to a unimodular basis gives a form with leading coefficient
f(v1) and H = G_f(v1). The resulting seminvariants are checked against
    |a| <= 16 (|phi| + |I|^(1/2)),   |H| <= 16 (phi^2 + |I|),
where phi is the largest-modulus real root of 4X^3 - I X - J.
"""

from fractions import Fraction
from math import floor, gcd, isqrt
from typing import NamedTuple

from sympy import Poly, Rational, symbols
from sympy.core.intfunc import igcdex

from arith.binary_forms import evaluate_form, poly_eval, substitute_form
from common.constants import REDUCTION_C1, REDUCTION_C2, ROOT_ISOLATION_EPS
from common.exceptions import FormError, InvariantViolation
from quartic.forms import (
    BinaryQuartic,
    PointedForm,
    Unimodular,
    act,
    act_pointed,
    covariant_G,
    invariants,
    seminvariants,
)

_x = symbols("x")

# primitive coefficient pairs tried around a converged basis
_LOCAL_SEARCH_RADIUS = 3


class ReducedForm(NamedTuple):
    form: BinaryQuartic
    gamma: Unimodular


class ResolventRoot(NamedTuple):
    """Isolating interval [lo, hi] of phi"""

    lo: Fraction
    hi: Fraction

    @property
    def magnitude(self) -> Fraction:
        return max(abs(self.lo), abs(self.hi))


def _fraction(value) -> Fraction:
    value = Rational(value)
    return Fraction(int(value.p), int(value.q))


def resolvent_root(f: BinaryQuartic) -> ResolventRoot:
    """Interval of width <= 2^-64 around the largest-modulus real root of 4X^3 - IX - J."""
    inv = invariants(f)
    intervals = Poly([4, 0, -inv.I, -inv.J], _x).intervals(eps=Rational(ROOT_ISOLATION_EPS))
    roots = [ResolventRoot(_fraction(lo), _fraction(hi)) for (lo, hi), _ in intervals]
    return max(roots, key=lambda r: (r.magnitude, r.hi))


def _norm(raw: tuple[int, ...], G: tuple[int, ...], v: tuple[int, int]) -> int:
    return evaluate_form(raw, *v) ** 2 + evaluate_form(G, *v) ** 2


def _best_shift(raw, G, v1, v2) -> int:
    """Integer b minimising N(v2 + b*v1)."""
    p = Poly(list(substitute_form(raw, v1[0], v2[0], v1[1], v2[1])), _x)
    q = Poly(list(substitute_form(G, v1[0], v2[0], v1[1], v2[1])), _x)
    h = p**2 + q**2
    candidates = {0}
    for (lo, hi), _ in h.diff(_x).intervals(eps=1):
        candidates.update(range(int(floor(lo)), int(floor(hi)) + 2))
    coeffs = [int(c) for c in h.all_coeffs()]
    return min(candidates, key=lambda b: (poly_eval(coeffs, b), abs(b), b))


def _walk(raw, G, v1, v2):
    while True:
        if _norm(raw, G, v2) < _norm(raw, G, v1):
            v1, v2 = v2, (-v1[0], -v1[1])
        b = _best_shift(raw, G, v1, v2)
        if b == 0:
            return v1, v2
        v2 = (v2[0] + b * v1[0], v2[1] + b * v1[1])
        if _norm(raw, G, v2) >= _norm(raw, G, v1):
            return v1, v2


def _local_improvement(raw, G, v1, v2):
    best = _norm(raw, G, v1)
    r = _LOCAL_SEARCH_RADIUS
    for x in range(-r, r + 1):
        for y in range(-r, r + 1):
            if gcd(x, y) != 1 or (x, y) == (1, 0):
                continue
            w = (x * v1[0] + y * v2[0], x * v1[1] + y * v2[1])
            if _norm(raw, G, w) < best:
                s, t, _ = map(int, igcdex(x, y))
                # x*s + y*t = 1, so (w, -t*v1 + s*v2) has determinant det(v1, v2)
                return w, (-t * v1[0] + s * v2[0], -t * v1[1] + s * v2[1])
    return None


def reduce(f: BinaryQuartic) -> ReducedForm:
    """
    Return (f_red, gamma) with f_red = act(gamma, f) and small seminvariants.

    Raises:
        FormError: if the discriminant of f is zero
        InvariantViolation: if the seminvariant bounds are not met
    """
    inv = invariants(f)
    if inv.disc == 0:
        raise FormError(f"cannot reduce {f}: zero discriminant")
    raw, G = f.raw, covariant_G(f)

    v1, v2 = _walk(raw, G, (1, 0), (0, 1))
    while (better := _local_improvement(raw, G, v1, v2)) is not None:
        v1, v2 = _walk(raw, G, *better)

    gamma = Unimodular.from_columns(v1, v2)
    reduced = act(gamma, f)
    semi = seminvariants(reduced)

    phi = resolvent_root(f).magnitude
    root_I = isqrt(abs(inv.I))
    if root_I * root_I < abs(inv.I):
        root_I += 1
    if abs(semi.a) > REDUCTION_C1 * (phi + root_I):
        raise InvariantViolation("reduced |a| bound", f"a = {semi.a}, phi = {float(phi)}, I = {inv.I}")
    if abs(semi.H) > REDUCTION_C2 * (phi * phi + abs(inv.I)):
        raise InvariantViolation("reduced |H| bound", f"H = {semi.H}, phi = {float(phi)}, I = {inv.I}")
    return ReducedForm(reduced, gamma)


def canonical_pointed(F: BinaryQuartic, point: tuple[int, int] = (1, 0)) -> PointedForm:
    """
    Canonical representative of the SL2(Z)-class of (F, point).

    The point is moved to (e, 0) with e = gcd of its coordinates; the remaining
    freedom is X -> X + bY, used to bring a1 into [0, |a0|).
    """
    alpha, beta = point
    if alpha == 0 and beta == 0:
        raise FormError("pointed forms need a non-zero point")
    e = gcd(alpha, beta)
    p, q = alpha // e, beta // e
    s, t, _ = map(int, igcdex(p, q))
    pointed = act_pointed(Unimodular(p, -t, q, s), PointedForm(F, point))
    a0, a1 = pointed.form.a0, pointed.form.a1
    if a0 == 0:
        raise FormError(f"form {F} vanishes at {point}")
    b = (a1 % abs(a0) - a1) // a0
    return act_pointed(Unimodular.translation(b), pointed)
