"""
Densities, moments and Szpiro-type bounds over scan corpora.

Every count here is exact with respect to the scan's x_max and nothing more;
tables carry that bound in their headers.
"""

from fractions import Fraction
from math import fsum, log, sqrt
from typing import NamedTuple

import mpmath

from common.exceptions import ConfigurationError, CurveValidationError
from twists.construct import Construction, constructed_count
from twists.curves import TwistCurve, to_short_model
from twists.scan import ScanCorpus, twist_range

DEFAULT_KAPPA = Fraction(1, 8)

# Szpiro bound values are rounded to this grid
_SZPIRO_GRID = 2**32


class DensityRow(NamedTuple):
    N: int
    twists: int
    count: int
    sqrt_ref: float
    log_ref: float | None
    constructed: int | None


class TrendRow(NamedTuple):
    N: int
    count: int
    ratio: float


def default_x_max(N: int) -> int:
    """Integral point search bound used when none is configured."""
    return 10**8 if N <= 10**3 else 10**6


def density_table(
    corpus: ScanCorpus,
    thresholds: list[int],
    kappa: Fraction = DEFAULT_KAPPA,
    constructions: dict[int, Construction] | None = None,
) -> list[DensityRow]:
    """
    Rows (N', #D(N'), #{|D| <= N' : E*_D non-empty}, N'^(1/2), N'/(log N')^kappa, constructed).

    The log reference is None at N' = 1. The constructed column is filled
    when constructions are given.

    Raises:
        ConfigurationError: if the thresholds are not increasing or exceed the corpus N
    """
    if any(b <= a for a, b in zip(thresholds, thresholds[1:])):
        raise ConfigurationError(f"density thresholds must increase, got {thresholds}")
    if thresholds and (thresholds[0] < 1 or thresholds[-1] > corpus.params.N):
        raise ConfigurationError(f"density thresholds must lie in [1, {corpus.params.N}], got {thresholds}")

    with_points = corpus.twists_with_points()
    all_twists = twist_range(corpus.params.N)
    rows = []
    for bound in thresholds:
        count = sum(1 for D in with_points if abs(D) <= bound)
        twists = sum(1 for D in all_twists if abs(D) <= bound)
        log_ref = bound / log(bound) ** float(kappa) if bound > 1 else None
        constructed = constructed_count(constructions, bound) if constructions is not None else None
        rows.append(DensityRow(bound, twists, count, sqrt(bound), log_ref, constructed))
    return rows


def moments(corpus: ScanCorpus, k: int) -> Fraction:
    """
    (1 / #D(N)) * sum over D of #E*_D(Z)^k, counting both signs of y.

    Raises:
        ConfigurationError: if k < 1
    """
    if k < 1:
        raise ConfigurationError(f"moment order must be positive, got {k}")
    if corpus.twist_count == 0:
        return Fraction(0)
    return Fraction(sum(corpus.nontorsion(D) ** k for D in corpus.records), corpus.twist_count)


def szpiro_upper(curve: TwistCurve) -> Fraction:
    """
    6 + 2 log(16 |4A^3 + 27B^2|) / log |D| for the short model of the curve.

    This is an upper bound for the Szpiro ratio, not the ratio itself. The
    value is computed with mpmath and rounded to a multiple of 2^-32.

    Raises:
        CurveValidationError: if |D| < 2
    """
    if abs(curve.D) < 2:
        raise CurveValidationError(f"the bound needs |D| >= 2, got D = {curve.D}")
    short = to_short_model(curve).curve
    disc = abs(4 * short.A**3 + 27 * short.B**2)
    with mpmath.workprec(128):
        value = 6 + 2 * mpmath.log(16 * disc) / mpmath.log(abs(curve.D))
        scaled = int(mpmath.nint(value * _SZPIRO_GRID))
    return Fraction(scaled, _SZPIRO_GRID)


def construction_trend(constructions: dict[int, Construction], grid: list[int]) -> list[TrendRow]:
    """Constructed twists with |D| <= N against N^(1/2)."""
    rows = []
    for N in grid:
        count = constructed_count(constructions, N)
        rows.append(TrendRow(N, count, count / sqrt(N)))
    return rows


def fitted_constant(rows: list[TrendRow]) -> float:
    """Least-squares c in count ~ c N^(1/2) over the grid rows; 0.0 without rows."""
    weight = sum(row.N for row in rows)
    if not weight:
        return 0.0
    return fsum(row.count * sqrt(row.N) for row in rows) / weight

