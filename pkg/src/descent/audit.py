"""
Descent checks over a scan corpus.

Every non-torsion point with D >= 1 and y > 0 on the unbounded component is
decomposed, rebuilt and tested against its local conditions; points on the
compact component are compared with the compact catalogue instead.
"""

from dataclasses import dataclass, field

from common.constants import LogLevel, Model
from common.exceptions import CompactComponentError, ConfigurationError, InvariantViolation
from config.project_config import config
from descent.exceptional import CatalogueEntry, ExceptionalPoint, compact_catalogue, exceptional_scan
from descent.full_torsion import full2_decompose, full2_recover, local_conditions_full, r_matrix
from descent.partial_torsion import local_conditions_partial, partial_decompose
from twists.curves import TwistCurve
from twists.points import gcd_decompose
from twists.scan import ScanCorpus
from utils.workbench_logger import log_operation

RECOVER_PAIRS = ((1, 2), (2, 3), (3, 1))


@dataclass
class DescentAudit:
    checked: int = 0
    compact: int = 0
    skipped: int = 0
    violations: list[str] = field(default_factory=list)
    exceptional: list[ExceptionalPoint] = field(default_factory=list)
    catalogue: list[CatalogueEntry] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "checked": self.checked,
            "compact": self.compact,
            "skipped": self.skipped,
            "violations": list(self.violations),
            "exceptional": len(self.exceptional),
            "catalogue": len(self.catalogue),
            "passed": self.passed,
        }


def _check_full(point: tuple[int, int], curve: TwistCurve) -> list[str]:
    x, y = point
    decomp = full2_decompose(point, curve)
    problems = []
    if decomp.point != (x, curve.D, y):
        problems.append(f"decomposition of {point} on {curve} rebuilds {decomp.point}")
    values = decomp.values
    for i, j in RECOVER_PAIRS:
        rebuilt = full2_recover((values[i - 1], values[j - 1]), (i, j), curve.A, curve.B)
        if rebuilt != (x, curve.D, y):
            problems.append(f"recover{(i, j)} of {point} on {curve} gives {rebuilt}")
    R = r_matrix(decomp, curve.A, curve.B)
    if not local_conditions_full(*R.n, R):
        problems.append(f"local conditions fail for {point} on {curve}, n = {R.n}")
    return problems


def _check_partial(point: tuple[int, int], curve: TwistCurve) -> list[str]:
    decomp = partial_decompose(point, curve)
    decomp.validate()
    if decomp.g * decomp.xt != point[0] or decomp.g * decomp.Dt != curve.D:
        return [f"decomposition of {point} on {curve} does not rebuild x and D"]
    if not local_conditions_partial(decomp, curve.A, curve.B):
        return [f"local conditions fail for {point} on {curve}"]
    return []


def _compare_catalogue(
    scanned: set[CatalogueEntry], catalogue: list[CatalogueEntry], Dt_max: int, N: int, x_max: int
) -> list[str]:
    expected = {entry for entry in catalogue if entry.D <= N and entry.x <= x_max}
    found = {entry for entry in scanned if entry.Dt <= Dt_max}
    problems = [f"compact point {entry} missing from the scan" for entry in sorted(expected - found)]
    problems += [f"compact point {entry} missing from the catalogue" for entry in sorted(found - expected)]
    return problems


@log_operation()
def audit_corpus(corpus: ScanCorpus, Dt_max: int) -> DescentAudit:
    """
    Run the descent checks over a full- or partial-model corpus.

    Violations are collected, not raised, so one run reports all of them.

    Raises:
        ConfigurationError: for a short-model corpus
    """
    params = corpus.params
    if params.model == Model.SHORT:
        raise ConfigurationError("descent checks need the full or partial model")
    logger = config.get_logger()
    check = _check_full if params.model == Model.FULL else _check_partial

    audit = DescentAudit()
    scanned_compact = set()
    for D in sorted(corpus.records):
        curve = TwistCurve(params.A, params.B, D, params.model)
        for record in corpus.records[D]:
            x, y = record.point
            if record.is_torsion or y < 0:
                continue
            if D < 1:
                audit.skipped += 1
                continue
            try:
                audit.violations += check((x, y), curve)
                audit.checked += 1
            except CompactComponentError:
                audit.compact += 1
                g, _, Dt, _ = gcd_decompose((x, y), curve)
                scanned_compact.add(CatalogueEntry(D, x, y, Dt, g))
            except InvariantViolation as e:
                audit.checked += 1
                audit.violations.append(f"{(x, y)} on {curve}: {e}")

    audit.exceptional = exceptional_scan(corpus)
    audit.catalogue = compact_catalogue(params.A, params.B, params.model, Dt_max)
    audit.violations += _compare_catalogue(scanned_compact, audit.catalogue, Dt_max, params.N, params.x_max)

    for message in audit.violations:
        logger.log(LogLevel.DEBUG, f"[VIOLATION] {message}")
    return audit
