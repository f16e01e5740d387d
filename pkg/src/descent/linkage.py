"""
Linkage graphs of indexed character sums.

Indices i, j are linked when Phi(i, j) + Phi(j, i) = 1 over F_2. Unlinked
sets are cliques of the unlinked graph; the maximal ones are found with
Bron-Kerbosch on integer bitmasks.

The square-class checks of admissibility need sqrt(alpha) inside a cyclotomic extension.
For rational alpha this is a conductor test; for alpha = R (-A + sqrt(A^2 - 4B)) / 2
it is a character test on the primes that split completely.
"""

from dataclasses import dataclass, field
from itertools import product
from math import lcm, prod
from typing import NamedTuple

from sympy import primerange

from arith.integers import is_square, squarefree_part
from arith.symbols import jacobi, modular_sqrt
from common.constants import AdmissibilityCheck
from common.exceptions import LinkageError
from descent.full_torsion import RMatrix

MAX_INDICES = 64
# Split primes checked by the character test of quadratic square classes
ADMISSIBILITY_PRIME_LIMIT = 3000


@dataclass(frozen=True)
class IndexDatum:
    """
    Square-class datum of one index.

    Attributes:
        value (int): Rational part R of alpha
        c (int): Modulus of the cyclotomic field the root may live in
        field (tuple[int, int] | None): (A, B) when alpha = R (-A + sqrt(A^2 - 4B)) / 2
    """

    value: int = 1
    c: int = 1
    field: tuple[int, int] | None = None


class Admissibility(NamedTuple):
    failures: tuple[tuple[AdmissibilityCheck, str], ...]

    @property
    def admissible(self) -> bool:
        """Every check but NOT_EXCLUDED holds; exclusion by some J_k does not affect admissibility."""
        return all(check == AdmissibilityCheck.NOT_EXCLUDED for check, _ in self.failures)

    @property
    def in_main_term(self) -> bool:
        return not self.failures

    @property
    def checks(self) -> set[AdmissibilityCheck]:
        return {check for check, _ in self.failures}


@dataclass(frozen=True)
class LinkageSpec:
    indices: tuple[str, ...]
    phi: tuple[tuple[int, ...], ...]
    excluded: tuple[frozenset[str], ...] = ()
    data: dict[str, IndexDatum] = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.indices)
        if not 0 < n <= MAX_INDICES:
            raise LinkageError(f"index sets must have 1 to {MAX_INDICES} entries, got {n}")
        if len(set(self.indices)) != n or any(not name or name.split()[0] != name for name in self.indices):
            raise LinkageError(f"index names must be unique and free of spaces: {self.indices}")
        if len(self.phi) != n or any(len(row) != n for row in self.phi):
            raise LinkageError(f"Phi must be a {n} x {n} matrix")
        if any(value not in (0, 1) for row in self.phi for value in row):
            raise LinkageError("Phi takes values in F_2")
        if any(self.phi[k][k] for k in range(n)):
            raise LinkageError("Phi must vanish on the diagonal")
        known = set(self.indices)
        for subset in self.excluded:
            if not subset <= known:
                raise LinkageError(f"excluded set {sorted(subset)} has unknown indices")
        if not set(self.data) <= known:
            raise LinkageError(f"square-class data for unknown indices {sorted(set(self.data) - known)}")

    def position(self, name: str) -> int:
        try:
            return self.indices.index(name)
        except ValueError as e:
            raise LinkageError(f"unknown index '{name}'") from e

    def Phi(self, u: str, v: str) -> int:
        return self.phi[self.position(u)][self.position(v)]

    def linked(self, u: str, v: str) -> bool:
        return (self.Phi(u, v) + self.Phi(v, u)) % 2 == 1

    def datum(self, name: str) -> IndexDatum:
        return self.data.get(name, IndexDatum())

    def names(self, mask: int) -> frozenset[str]:
        return frozenset(name for k, name in enumerate(self.indices) if (mask >> k) & 1)

    def to_text(self) -> str:
        """`index`, one `phi` row per index, `exclude` and `alpha` lines."""
        lines = ["index " + " ".join(self.indices)]
        for name, row in zip(self.indices, self.phi):
            lines.append(f"phi {name} " + " ".join(map(str, row)))
        for subset in self.excluded:
            lines.append("exclude " + " ".join(n for n in self.indices if n in subset))
        for name in self.indices:
            if name not in self.data:
                continue
            datum = self.data[name]
            line = f"alpha {name} {datum.value}"
            if datum.c != 1:
                line += f" c={datum.c}"
            if datum.field is not None:
                line += f" field={datum.field[0]},{datum.field[1]}"
            lines.append(line)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "LinkageSpec":
        """
        Raises:
            LinkageError: for a missing `index` line, unknown keywords or malformed rows
        """
        indices, rows, excluded, data = None, {}, [], {}
        try:
            for number, line in enumerate(text.splitlines(), start=1):
                words = line.split("#", 1)[0].split()
                if not words:
                    continue
                match words[0]:
                    case "index":
                        indices = tuple(words[1:])
                    case "phi":
                        rows[words[1]] = tuple(int(w) for w in words[2:])
                    case "exclude":
                        excluded.append(frozenset(words[1:]))
                    case "alpha":
                        data[words[1]] = _parse_datum(words[2:])
                    case _:
                        raise LinkageError(f"line {number}: unknown keyword '{words[0]}'")
        except LinkageError:
            raise
        except (IndexError, ValueError) as e:
            raise LinkageError(f"malformed linkage spec: {e}") from e
        if indices is None:
            raise LinkageError("linkage spec has no 'index' line")
        if set(rows) != set(indices):
            raise LinkageError("every index needs exactly one 'phi' row")
        return cls(indices, tuple(rows[name] for name in indices), tuple(excluded), data)


def _parse_datum(words: list[str]) -> IndexDatum:
    value, c, family = int(words[0]), 1, None
    for word in words[1:]:
        key, _, raw = word.partition("=")
        match key:
            case "c":
                c = int(raw)
            case "field":
                A, B = raw.split(",")
                family = (int(A), int(B))
            case _:
                raise LinkageError(f"unknown alpha option '{word}'")
    return IndexDatum(value, c, family)


def _spec(indices: list[str], phi_of, excluded=(), data=None) -> LinkageSpec:
    phi = tuple(tuple(phi_of(u, v) for v in indices) for u in indices)
    return LinkageSpec(tuple(indices), phi, tuple(frozenset(s) for s in excluded), data or {})


def full_torsion_spec(R: RMatrix) -> LinkageSpec:
    """
    The twelve indices ij, i in 1..3, j in {0, 1, 2, 3, 4} minus i, with
    Phi(kl, ij) = 1 iff k is not in {i, j} and j != 0.

    The excluded set is {30, 31, 32, 34} when D~ = 1, AB is not a square and
    R31, R32 are squares; {20, ..., 34} when D~ = 1 and AB, R32 are squares.
    """
    indices = [f"{i}{j}" for i in (1, 2, 3) for j in (0, 1, 2, 3, 4) if j != i]

    def phi_of(u: str, v: str) -> int:
        k, i, j = int(u[0]), int(v[0]), int(v[1])
        return int(k not in (i, j) and j != 0)

    excluded = []
    if R.Dt == 1:
        square_ab = is_square(R.A * R.B)
        if not square_ab and is_square(R[3, 2]) and is_square(R[3, 1]):
            excluded.append([u for u in indices if u[0] == "3"])
        elif square_ab and is_square(R[3, 2]):
            excluded.append([u for u in indices if u[0] in "23"])
    data = {u: IndexDatum(R[int(u[0]), int(u[1])]) for u in indices}
    return _spec(indices, phi_of, excluded, data)


def _subset_name(i: int, S: tuple[int, ...]) -> str:
    return f"{i}{{{','.join(map(str, S))}}}"


def power_set_spec() -> LinkageSpec:
    """
    The 32 indices (i, S), S a subset of {1, 2, 3, 4} minus i, with
    Phi((i, S), (j, S')) = 1 iff j is in S, and J_{i,j} the indices with first entry i or j.
    """
    pairs = []
    for i in (1, 2, 3, 4):
        others = [k for k in (1, 2, 3, 4) if k != i]
        for mask in range(8):
            pairs.append((i, tuple(k for t, k in enumerate(others) if (mask >> t) & 1)))
    names = {_subset_name(i, S): (i, S) for i, S in pairs}

    def phi_of(u: str, v: str) -> int:
        return int(names[v][0] in names[u][1])

    excluded = [
        [name for name, (k, _) in names.items() if k in (i, j)] for i in (1, 2, 3, 4) for j in (1, 2, 3, 4) if i < j
    ]
    return _spec(list(names), phi_of, excluded)


def partial_torsion_spec(R12: int, R21: int = 1, family: tuple[int, int] | None = None) -> LinkageSpec:
    """
    Indices {10, 12, 20, 21} with Phi(kl, ij) = 1 iff k != i and j != 0;
    J = {10, 12} when R12 is a square.

    With family = (A, B) the index 21 carries alpha R21 over Q(sqrt(A^2 - 4B))
    and the indices 20, 21 use c = |2B(A^2 - 4B)|.
    """
    indices = ["10", "12", "20", "21"]

    def phi_of(u: str, v: str) -> int:
        return int(u[0] != v[0] and v[1] != "0")

    excluded = [["10", "12"]] if is_square(R12) else []
    c = abs(2 * family[1] * (family[0] ** 2 - 4 * family[1])) if family else 1
    data = {
        "10": IndexDatum(1),
        "12": IndexDatum(R12),
        "20": IndexDatum(1, c),
        "21": IndexDatum(R21, c, family),
    }
    return _spec(indices, phi_of, excluded, data)


def _unlinked_adjacency(spec: LinkageSpec) -> list[int]:
    n = len(spec.indices)
    adjacency = [0] * n
    for a in range(n):
        for b in range(n):
            if a != b and spec.phi[a][b] == spec.phi[b][a]:
                adjacency[a] |= 1 << b
    return adjacency


def _maximal_cliques(adjacency: list[int]) -> list[int]:
    """Bron-Kerbosch with pivoting; masks of every maximal clique."""
    found = []

    def expand(R: int, P: int, X: int):
        if not P and not X:
            found.append(R)
            return
        pivot = (P | X).bit_length() - 1
        candidates = P & ~adjacency[pivot]
        while candidates:
            v = candidates.bit_length() - 1
            bit = 1 << v
            expand(R | bit, P & adjacency[v], X & adjacency[v])
            P &= ~bit
            X |= bit
            candidates &= ~bit

    expand(0, (1 << len(adjacency)) - 1, 0)
    return found


def maximal_unlinked_sets(spec: LinkageSpec) -> list[frozenset[str]]:
    """Every maximal unlinked set, ordered by size then by index positions."""
    masks = _maximal_cliques(_unlinked_adjacency(spec))
    masks.sort(key=lambda m: (m.bit_count(), [k for k in range(len(spec.indices)) if (m >> k) & 1]))
    return [spec.names(m) for m in masks]


def unlinked_max_sets(spec: LinkageSpec) -> tuple[int, list[frozenset[str]]]:
    """(M, the unlinked sets of the maximum size M)."""
    sets = maximal_unlinked_sets(spec)
    M = max(len(s) for s in sets)
    return M, [s for s in sets if len(s) == M]


def _conductor(m: int) -> int:
    return abs(m) if m % 4 == 1 else 4 * abs(m)


def _rational_root(value: int, c: int, disc: int | None = None) -> bool:
    """sqrt(value) lies in Q(zeta_c), or in Q(sqrt(disc), zeta_c) when disc is given."""
    candidates = [value] if disc is None else [value, value * disc]
    return any(c % _conductor(squarefree_part(m).s) == 0 for m in candidates)


def _root_in_cyclotomic(data: list[IndexDatum]) -> bool:
    """sqrt(prod alpha) lies in the compositum of the K_i(zeta_c_i)."""
    c = lcm(*(abs(d.c) for d in data))
    value = prod(d.value for d in data)
    fields = {d.field for d in data if d.field is not None}
    if len(fields) > 1:
        raise LinkageError(f"square classes over several quadratic fields {sorted(fields)}")
    if not fields:
        return _rational_root(value, c)
    A, B = next(iter(fields))
    disc = A * A - 4 * B
    if sum(1 for d in data if d.field is not None) % 2 == 0:
        # alpha^2 is a square in K
        return _rational_root(value, c, disc)
    for p in primerange(3, ADMISSIBILITY_PRIME_LIMIT):
        if (p - 1) % c or (value * B * disc) % p == 0 or jacobi(disc, p) != 1:
            continue
        s = modular_sqrt(disc, p)
        half = pow(2, -1, p)
        for root in (s, -s):
            if jacobi(value * (-A + root) * half, p) != 1:
                return False
    return True


def admissible(spec: LinkageSpec, U) -> Admissibility:
    """
    Check an index subset against every AdmissibilityCheck; every failure is reported.

    Raises:
        LinkageError: for unknown indices or an empty set
    """
    names = set(U)
    if not names or not names <= set(spec.indices):
        raise LinkageError(f"admissibility needs a non-empty subset of the index set, got {sorted(names)}")
    U = [name for name in spec.indices if name in names]
    failures = []
    members = frozenset(U)
    for k, subset in enumerate(spec.excluded, start=1):
        if members <= subset:
            failures.append((AdmissibilityCheck.NOT_EXCLUDED, f"contained in J_{k}"))
    for u, v in product(U, U):
        if u < v and spec.linked(u, v):
            failures.append((AdmissibilityCheck.UNLINKED, f"{u} and {v} are linked"))
    rows = {u: tuple(spec.Phi(u, w) for w in U) for u in U}
    for u in U:
        if not any(rows[u]) and not _root_in_cyclotomic([spec.datum(u)]):
            failures.append((AdmissibilityCheck.SINGLE_SQUARE, f"alpha_{u} has no root over K(zeta_c)"))
    for u, v in product(U, U):
        if u < v and rows[u] == rows[v] and not _root_in_cyclotomic([spec.datum(u), spec.datum(v)]):
            failures.append((AdmissibilityCheck.PAIR_SQUARE, f"alpha_{u} alpha_{v} has no root over K(zeta_c)"))
    return Admissibility(tuple(failures))
