"""
Property suites of the workbench at desk scale.

Each suite draws its inputs from one seeded random.Random and records every
check it makes. A corrupted suite flips one coefficient of its inputs
(B of a family, the constant of a cubic, the right-hand side of an
equation), so a correct build must report it as failed.
"""

import random
import time
from dataclasses import dataclass, field
from math import gcd, isqrt, prod
from typing import Callable, NamedTuple

from sympy import primerange

from arith.binary_forms import BinaryCubic, poly_eval
from arith.integers import factorize, is_square, is_squarefree, squarefree_part
from arith.roots import hensel_lift, rho, roots_mod
from arith.symbols import jacobi
from common.constants import Model
from common.exceptions import ConfigurationError, WorkbenchError
from descent.character_sums import truncated_S
from descent.full_torsion import RMatrix, full2_decompose, full2_recover, local_conditions_full, r_matrix
from descent.linkage import LinkageSpec, full_torsion_spec, unlinked_max_sets
from descent.partial_torsion import local_conditions_partial, partial_decompose
from pell.equations import enumerate_solutions, simultaneous_solve
from quartic.forms import BinaryQuartic, Unimodular, act, invariants, seminvariants
from quartic.mordell import mordell_form
from surface.counting import brute_count, count_via_lattices
from twists.construct import construct_points
from twists.curves import TwistCurve
from twists.points import gcd_decompose
from twists.scan import scan_family
from utils.workbench_logger import log_operation

TEST_CUBICS = (BinaryCubic(1, 0, 0, 1), BinaryCubic(1, 0, -1, 1), BinaryCubic(0, 1, 1, 0))


class SuiteResult(NamedTuple):
    name: str
    passed: bool
    checks: int
    failures: list[str]
    seconds: float


@dataclass
class VerifyReport:
    seed: int
    corrupt: str | None
    suites: list[SuiteResult] = field(default_factory=list)

    @property
    def passed_count(self) -> int:
        return sum(1 for suite in self.suites if suite.passed)

    @property
    def passed(self) -> bool:
        return self.passed_count == len(self.suites)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "corrupt": self.corrupt,
            "passed": self.passed,
            "suites": [suite._asdict() for suite in self.suites],
        }


class Checks:
    """Counts checks and keeps the messages of the failed ones."""

    def __init__(self):
        self.count = 0
        self.failures: list[str] = []

    def expect(self, ok: bool, message: str):
        self.count += 1
        if not ok:
            self.failures.append(message)


def arith_suite(rng: random.Random, corrupt: bool) -> Checks:
    checks = Checks()
    shift = 1 if corrupt else 0
    for _ in range(300):
        n = rng.randint(2, 10**6)
        target = n + shift
        checks.expect(prod(p**e for p, e in factorize(n).factors) == target, f"factorize({n})")
        decomp = squarefree_part(n)
        checks.expect(decomp.s * decomp.f**2 == target and is_squarefree(decomp.s), f"squarefree_part({n})")
    for _ in range(300):
        m, n = rng.randrange(1, 2000, 2), rng.randrange(1, 2000, 2)
        if gcd(m, n) != 1:
            continue
        sign = -1 if (m % 4 == 3 and n % 4 == 3) else 1
        checks.expect(jacobi(m, n) * jacobi(n, m) == sign, f"reciprocity ({m}, {n})")
    return checks


def rho_suite(rng: random.Random, corrupt: bool) -> Checks:
    checks = Checks()
    shift = 1 if corrupt else 0
    for C in TEST_CUBICS:
        coeffs = C.dehomogenize()
        for m in range(1, 31):
            for n in range(m + 1, 31):
                if gcd(m, n) == 1:
                    checks.expect(rho(C, m * n) == rho(C, m) * rho(C, n), f"rho multiplicative {C} at {m}, {n}")
        for n in rng.sample(range(2, 500), 20):
            for r in roots_mod(C, n).residues:
                checks.expect((poly_eval(coeffs, r) + shift) % n == 0, f"{r} is a root of {C} mod {n}")
        for p in primerange(3, 50):
            if C.discriminant % p == 0:
                continue
            for r in roots_mod(C, p).residues:
                lift = hensel_lift(coeffs, r, p, 3)
                ok = lift is not None and poly_eval(coeffs, lift) % p**3 == 0 and lift % p == r
                checks.expect(ok, f"hensel lift of {r} mod {p} for {C}")
    return checks


def quartic_suite(rng: random.Random, corrupt: bool) -> Checks:
    checks = Checks()
    for _ in range(500):
        f = BinaryQuartic(*(rng.randint(-100, 100) for _ in range(5)))
        I, J, disc = invariants(f)
        a, H, R = seminvariants(f)
        checks.expect(4 * H**3 - I * a * a * H - J * a**3 == R * R, f"seminvariant syzygy for {f}")
        checks.expect(disc == I**3 - 27 * J * J, f"discriminant of {f}")
        gamma = Unimodular.translation(rng.randint(-5, 5)).compose(Unimodular.inversion())
        checks.expect(invariants(act(gamma, f)) == (I, J, disc), f"invariants of {f} under {gamma}")

    A, B = 1, 1
    B_used = B + (1 if corrupt else 0)
    corpus = scan_family(A, B, Model.SHORT, 20, 10**4)
    for D, records in sorted(corpus.records.items()):
        for record in records:
            inv = invariants(mordell_form(tuple(record.point), A, B, D))
            ok = (inv.I, inv.J) == (-4 * A * D * D, -4 * B_used * D**3)
            checks.expect(ok, f"Mordell form invariants of {tuple(record.point)} on D = {D}")
    return checks


def twists_suite(rng: random.Random, corrupt: bool) -> Checks:
    checks = Checks()
    A, B = 1, 2
    B_used = B + (1 if corrupt else 0)
    corpus = scan_family(A, B, Model.FULL, 30, 2000)
    for D, records in sorted(corpus.records.items()):
        curve = TwistCurve(A, B_used, D, Model.FULL)
        for record in records:
            point = tuple(record.point)
            checks.expect(curve.on_curve(point), f"{point} on {curve}")
            g, xt, Dt, yt = gcd_decompose(point, TwistCurve(A, B, D, Model.FULL))
            checks.expect((g * xt, g * Dt, g * g * yt) == (point[0], D, point[1]), f"gcd decomposition of {point}")
    checks.expect({6, 14} <= set(corpus.twists_with_points()), "twists 6 and 14 carry points")

    N = rng.randint(50, 150)
    for D, construction in construct_points(0, 1, N).items():
        checks.expect(abs(D) <= N and is_squarefree(D), f"constructed D = {D} within {N}")
        checks.expect(TwistCurve(0, 1, D).on_curve(construction.witness), f"witness of D = {D}")
    return checks


def surface_suite(rng: random.Random, corrupt: bool) -> Checks:
    checks = Checks()
    C = TEST_CUBICS[0]
    checks.expect(brute_count(C, 2).count == 12, "brute_count(x1^3 + x2^3, 2) = 12")
    for cubic in TEST_CUBICS:
        for B in (10, rng.choice((20, 40))):
            checks.expect(brute_count(cubic, B).count == count_via_lattices(cubic, B), f"lattice count {cubic} B={B}")
    c0, c1, c2, c3 = C.coefficients
    used = BinaryCubic(c0, c1, c2, c3 + (1 if corrupt else 0))
    for x1, x2, x3, x4 in brute_count(C, 6, collect=True).solutions:
        checks.expect(used(x1, x2) == x3 * x3 * x4, f"({x1}, {x2}, {x3}, {x4}) on the surface of {C}")
    return checks


def descent_suite(rng: random.Random, corrupt: bool) -> Checks:
    checks = Checks()
    A, B = 1, 2
    B_used = B + (1 if corrupt else 0)
    corpus = scan_family(A, B, Model.FULL, 30, 3000)
    for D, records in sorted(corpus.records.items()):
        curve = TwistCurve(A, B, D, Model.FULL)
        for record in records:
            x, y = record.point
            if D < 1 or record.is_torsion or y < 0 or x < B * D:
                continue
            try:
                decomp = full2_decompose((x, y), curve)
                v1, v2, _ = decomp.values
                checks.expect(full2_recover((v1, v2), (1, 2), A, B_used) == (x, D, y), f"recover ({x}, {y}) on D={D}")
                R = r_matrix(decomp, A, B)
                checks.expect(local_conditions_full(*R.n, R), f"local conditions of ({x}, {y}) on D={D}")
            except WorkbenchError as e:
                checks.expect(False, f"({x}, {y}) on D={D}: {e}")

    decomp = partial_decompose((148, 2738), TwistCurve(1, 1, 111, Model.PARTIAL))
    fields = (decomp.g, decomp.xt, decomp.Dt, decomp.delta, decomp.g1, decomp.y1, decomp.g2, decomp.y2)
    checks.expect(fields == (37, 4, 3, 1, 1, 2, 37, 1), "partial fixture decomposition")
    checks.expect(local_conditions_partial(decomp, 1, 1), "partial fixture local conditions")

    M, sets = unlinked_max_sets(full_torsion_spec(RMatrix(1, 2, 1, (1, 1, 1))))
    checks.expect((M, len(sets)) == (4, 9), "nine unlinked sets of size four")
    checks.expect(truncated_S(3, LinkageSpec(("1", "2"), ((0, 1), (0, 0)))) == 3, "S(3) = 3")
    return checks


def pell_suite(rng: random.Random, corrupt: bool) -> Checks:
    checks = Checks()
    shift = 1 if corrupt else 0
    bound = rng.randint(150, 250)
    for a in range(1, 5):
        for b in range(1, 5):
            for u in range(-6, 7):
                if u == 0:
                    continue
                brute = []
                for x in range(1, bound + 1):
                    rest = a * x * x - u
                    if rest > 0 and rest % b == 0 and is_square(rest // b):
                        brute.append((x, isqrt(rest // b)))
                found = enumerate_solutions(a, b, u, bound)
                checks.expect(found == brute, f"{a}x^2 - {b}y^2 = {u} up to {bound}")
                for x, y in found:
                    checks.expect(a * x * x - b * y * y == u + shift, f"({x}, {y}) solves {a}x^2 - {b}y^2 = {u}")
    checks.expect(simultaneous_solve(1, 2, 1, 1, 3, 1, 10**4) == [(3, 2, 1)], "x^2 - 2y^2 = 1 and y^2 - 3z^2 = 1")
    return checks


SUITES: dict[str, Callable[[random.Random, bool], Checks]] = {
    "arith": arith_suite,
    "rho": rho_suite,
    "quartic": quartic_suite,
    "twists": twists_suite,
    "surface": surface_suite,
    "descent": descent_suite,
    "pell": pell_suite,
}


@log_operation()
def run_suites(seed: int, corrupt: str | None = None, names: list[str] | None = None) -> VerifyReport:
    """
    Run the named suites (all by default) in a fixed order.

    Every suite gets its own Random seeded from `seed` and its name, so the
    selection does not change the inputs of a suite. An error escaping a
    suite counts as a failed check.

    Raises:
        ConfigurationError: for an unknown suite name
    """
    selected = list(SUITES) if names is None else names
    for name in selected + ([corrupt] if corrupt else []):
        if name not in SUITES:
            raise ConfigurationError(f"unknown suite '{name}', expected one of {list(SUITES)}")

    report = VerifyReport(seed, corrupt)
    for name in SUITES:
        if name not in selected:
            continue
        start = time.perf_counter()
        rng = random.Random(f"{seed}:{name}")
        try:
            checks = SUITES[name](rng, name == corrupt)
        except Exception as e:
            checks = Checks()
            checks.expect(False, f"{type(e).__name__}: {e}")
        seconds = time.perf_counter() - start
        report.suites.append(SuiteResult(name, not checks.failures, checks.count, checks.failures, seconds))
    return report
