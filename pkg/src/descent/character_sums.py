"""
Exact truncated character sums over a linkage spec.

    S(N) = sum over (D_i) of  prod_i f_i(D_i) chi_i(D_i)  prod_{i,j} (D_i / D_j)^Phi(i,j)

with prod D_i square-free, at most N, coprime to 2 * modulus, and
prod_{i not in J_k} D_i != 1 for every excluded set J_k. Every D_i is odd,
so (D_i / D_j) is a Jacobi symbol.

A tuple is a distribution of the primes of n = prod D_i over the indices.
Weights and characters are multiplicative, so they are tabulated per prime.
"""

from fractions import Fraction
from itertools import product
from math import gcd
from typing import Callable, NamedTuple

from arith.integers import factorize, omega, squarefree_sieve
from arith.symbols import in_split_set, jacobi, kronecker, omega_d
from common.exceptions import LinkageError
from descent.linkage import LinkageSpec, admissible, unlinked_max_sets
from descent.partial_torsion import artin_symbol
from utils.parallel import ordered_map
from utils.workbench_logger import log_operation

# Square-free n handed to one worker task
TASK_CHUNK = 64


class OmegaWeight(NamedTuple):
    """n -> base^-omega(n)"""

    base: int

    def __call__(self, n: int) -> Fraction:
        return Fraction(1, self.base ** omega(n)) if n > 1 else Fraction(1)


class SplitOmegaWeight(NamedTuple):
    """n -> base^-omega_d(n) on the n whose primes all split in every Q(sqrt(m)), m in members; 0 elsewhere."""

    base: int
    d: int
    members: tuple[int, ...] = ()

    def __call__(self, n: int) -> Fraction:
        if n == 1:
            return Fraction(1)
        if not all(in_split_set(n, m) for m in self.members):
            return Fraction(0)
        return Fraction(1, self.base ** omega_d(n, self.d))


class JacobiCharacter(NamedTuple):
    R: int

    def __call__(self, n: int) -> int:
        return jacobi(self.R, n)


class ArtinCharacter(NamedTuple):
    """Artin symbol of alpha times (R / p) at primes split in Q(sqrt(A^2 - 4B), sqrt(B)); 0 at the others."""

    A: int
    B: int
    R: int

    def __call__(self, n: int) -> int:
        value = 1
        disc = self.A * self.A - 4 * self.B
        for p in factorize(n).primes if n > 1 else ():
            if p == 2 or (self.B * disc) % p == 0 or kronecker(disc, p) != 1 or kronecker(self.B, p) != 1:
                return 0
            value *= artin_symbol(self.A, self.B, p) * jacobi(self.R, p)
        return value


def omega_weight(base: int) -> OmegaWeight:
    return OmegaWeight(base)


def omega_d_weight(base: int, d: int, members: tuple[int, ...] = ()) -> SplitOmegaWeight:
    return SplitOmegaWeight(base, d, tuple(members))


def jacobi_character(R: int) -> JacobiCharacter:
    return JacobiCharacter(R)


def artin_character(A: int, B: int, R: int) -> ArtinCharacter:
    return ArtinCharacter(A, B, R)


class MainTermComparison(NamedTuple):
    N: int
    S: Fraction
    main_term: Fraction
    sets: list[frozenset[str]]

    @property
    def difference(self) -> Fraction:
        return self.S - self.main_term


def _unit(_: int) -> int:
    return 1


def _tuple_sum(
    n: int,
    indices: tuple[str, ...],
    phi: dict[tuple[int, int], int],
    weights: list[Callable],
    characters: list[Callable],
    excluded: list[set[int]],
) -> Fraction:
    """Sum of the summand over the distributions of the primes of n."""
    primes = factorize(n).primes if n > 1 else ()
    k = len(indices)
    table = [[weights[i](p) * characters[i](p) for p in primes] for i in range(k)]
    pairs = [(i, j) for (i, j), value in phi.items() if value]
    total = Fraction(0)
    for assignment in product(range(k), repeat=len(primes)):
        term = Fraction(1)
        for t, i in enumerate(assignment):
            term *= table[i][t]
            if not term:
                break
        if not term:
            continue
        used = set(assignment)
        if any(used <= J for J in excluded):
            continue
        D = [1] * k
        for t, i in enumerate(assignment):
            D[i] *= primes[t]
        for i, j in pairs:
            if D[i] > 1 and D[j] > 1:
                term *= jacobi(D[i], D[j])
        total += term
    return total


def _sum_task(task: tuple) -> Fraction:
    chunk, indices, phi, weights, characters, excluded = task
    return sum((_tuple_sum(n, indices, phi, weights, characters, excluded) for n in chunk), Fraction(0))


def _support(N: int, modulus: int) -> list[int]:
    """Odd square-free n <= N coprime to modulus."""
    return [n for n in squarefree_sieve(N) if n % 2 and gcd(n, modulus) == 1]


def _prepare(spec: LinkageSpec, members: list[str], weights: dict | None, characters: dict | None):
    weights, characters = weights or {}, characters or {}
    unknown = (set(weights) | set(characters)) - set(spec.indices)
    if unknown:
        raise LinkageError(f"weights or characters for unknown indices {sorted(unknown)}")
    position = {name: k for k, name in enumerate(members)}
    phi = {(position[u], position[v]): spec.Phi(u, v) for u in members for v in members}
    return (
        tuple(members),
        phi,
        [weights.get(name, _unit) for name in members],
        [characters.get(name, _unit) for name in members],
        position,
    )


def _run(N: int, tasks_args: tuple, modulus: int, workers: int) -> Fraction:
    support = _support(N, modulus)
    chunks = [support[k : k + TASK_CHUNK] for k in range(0, len(support), TASK_CHUNK)]
    tasks = [(chunk,) + tasks_args for chunk in chunks]
    return sum(ordered_map(_sum_task, tasks, workers), Fraction(0))


@log_operation()
def truncated_S(
    N: int,
    spec: LinkageSpec,
    weights: dict | None = None,
    characters: dict | None = None,
    modulus: int = 1,
    workers: int = 1,
) -> Fraction:
    """
    Exact S(N); weights and characters map index names to multiplicative
    functions and default to 1. modulus is prod beta_i.

    Work is split over chunks of n = prod D_i and summed in input order.
    """
    members, phi, f, chi, position = _prepare(spec, list(spec.indices), weights, characters)
    excluded = [{position[name] for name in J} for J in spec.excluded]
    return _run(N, (members, phi, f, chi, excluded), modulus, workers)


def main_term(
    N: int,
    spec: LinkageSpec,
    weights: dict | None = None,
    characters: dict | None = None,
    modulus: int = 1,
) -> MainTermComparison:
    """
    S(N) next to the sum over the maximal unlinked sets U of size M that pass
    every admissibility check, each summed with D_i = 1 off U and without exclusions.
    """
    S = truncated_S(N, spec, weights, characters, modulus)
    _, candidates = unlinked_max_sets(spec)
    sets = [U for U in candidates if admissible(spec, U).in_main_term]
    total = Fraction(0)
    for U in sets:
        members = [name for name in spec.indices if name in U]
        args = _prepare(spec, members, weights, characters)[:4]
        total += _run(N, args + ([],), modulus, 1)
    return MainTermComparison(N, S, total, sets)
