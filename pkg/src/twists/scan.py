"""
Family scans: integral points on every twist E_D with D square-free, |D| <= N.

Twists with D < 0 are scanned on their reflected positive-D curve and mapped
back. Work is split into chunks of D, run through the ordered worker pool,
and every finished chunk is checkpointed as a part file so an interrupted
scan resumes where it stopped. The finished corpus is cached under a key
derived from the scan parameters.
"""

import hashlib
from dataclasses import dataclass, field
from pathlib import Path

from arith.integers import squarefree_sieve
from common.constants import CORPUS_FORMAT_VERSION, Component, LogLevel, Model
from common.exceptions import CorpusError
from config.project_config import config
from twists.curves import TwistCurve, real_roots, reflect, validate_family
from twists.points import PointRecord, classify_point, integral_points
from utils.corpus_io import CorpusReader, CorpusWriter
from utils.parallel import ordered_map
from utils.statistics import ScanStatistics
from utils.workbench_logger import log_operation

DEFAULT_CHUNK_SIZE = 64


@dataclass(frozen=True)
class ScanParams:
    A: int
    B: int
    model: Model
    N: int
    x_max: int

    @property
    def key(self) -> str:
        text = f"A={self.A};B={self.B};model={self.model};N={self.N};x_max={self.x_max}"
        text += f";format={CORPUS_FORMAT_VERSION}"
        return hashlib.sha256(text.encode("utf-8")).hexdigest()

    def header(self, twists: int) -> dict:
        return {"A": self.A, "B": self.B, "model": str(self.model), "N": self.N, "x_max": self.x_max, "twists": twists}


@dataclass
class ScanCorpus:
    params: ScanParams
    twist_count: int
    records: dict[int, list[PointRecord]] = field(default_factory=dict)

    def nontorsion(self, D: int) -> int:
        return sum(1 for r in self.records.get(D, ()) if not r.is_torsion)

    @property
    def nontorsion_count(self) -> int:
        return sum(self.nontorsion(D) for D in self.records)

    def twists_with_points(self) -> list[int]:
        return sorted(D for D in self.records if self.nontorsion(D))

    def statistics(self) -> ScanStatistics:
        stats = ScanStatistics(twists_scanned=self.twist_count)
        for D, records in self.records.items():
            stats.twists_with_points += 1 if self.nontorsion(D) else 0
            for r in records:
                stats.record_point(r.is_torsion, r.component == Component.COMPACT)
        return stats


def twist_range(N: int) -> list[int]:
    """Square-free D with 1 <= |D| <= N, ordered 1, -1, 2, -2, 3, -3, 5, ..."""
    return [D for s in squarefree_sieve(N) for D in (s, -s)]


def scan_twist(curve: TwistCurve, x_max: int) -> list[PointRecord]:
    """Classified points of one twist with x <= x_max."""
    reflected, shift = reflect(curve)
    roots = real_roots(curve.rhs_coefficients)
    records = []
    for x, y in integral_points(reflected, x_max + shift):
        records.append(classify_point(curve, (x - shift, y), roots))
    return records


def _scan_chunk(task: tuple) -> dict[int, list[PointRecord]]:
    A, B, model, x_max, Ds = task
    found = {}
    for D in Ds:
        records = scan_twist(TwistCurve(A, B, D, model), x_max)
        if records:
            found[D] = records
    return found


def _part_path(cache_dir: Path, key: str, index: int) -> Path:
    return cache_dir / f"scan-{key[:16]}.part{index:05d}"


def corpus_path(cache_dir: Path, params: ScanParams) -> Path:
    return Path(cache_dir) / f"scan-{params.key[:16]}.txt"


def load_corpus(path: str | Path) -> ScanCorpus:
    """
    Raises:
        CorpusError: if the file is missing or its header is incomplete
    """
    with CorpusReader(path) as reader:
        records = reader.read_all()
        header = reader.header
    try:
        params = ScanParams(
            int(header["A"]), int(header["B"]), Model(header["model"]), int(header["N"]), int(header["x_max"])
        )
        return ScanCorpus(params, int(header["twists"]), records)
    except (KeyError, ValueError) as e:
        raise CorpusError(f"corpus '{path}' has an incomplete header: {e}") from e


def _load_part(path: Path) -> dict[int, list[PointRecord]]:
    with CorpusReader(path) as reader:
        return reader.read_all()


@log_operation()
def scan_family(
    A: int,
    B: int,
    model: Model,
    N: int,
    x_max: int,
    workers: int = 1,
    cache_dir: str | Path | None = None,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
) -> ScanCorpus:
    """
    Scan every twist with |D| <= N for integral points with x <= x_max.

    With a cache_dir, a finished corpus for equal parameters is reused and
    finished chunks of an interrupted run are picked up from their part files.

    Raises:
        CurveValidationError: for an invalid family
        CorpusError: if a cached corpus does not match the parameters
    """
    model = Model(model)
    validate_family(A, B, model)
    params = ScanParams(A, B, model, N, x_max)
    logger = config.get_logger()

    cache = Path(cache_dir) if cache_dir is not None else None
    if cache is not None and corpus_path(cache, params).is_file():
        corpus = load_corpus(corpus_path(cache, params))
        if corpus.params != params:
            raise CorpusError(f"cached corpus {corpus_path(cache, params)} was written for {corpus.params}")
        logger.log(LogLevel.DEBUG, f"Reusing cached corpus {corpus_path(cache, params)}")
        return corpus

    twists = twist_range(N)
    chunks = [tuple(twists[i : i + chunk_size]) for i in range(0, len(twists), chunk_size)]
    header = params.header(len(twists))

    done: dict[int, dict[int, list[PointRecord]]] = {}
    if cache is not None:
        for index in range(len(chunks)):
            part = _part_path(cache, params.key, index)
            if part.is_file():
                done[index] = _load_part(part)
        if done:
            logger.log(LogLevel.NORMAL, f"Resuming scan: {len(done)}/{len(chunks)} chunks already done")

    todo = [index for index in range(len(chunks)) if index not in done]
    tasks = [(A, B, model, x_max, chunks[index]) for index in todo]
    for index, found in zip(todo, ordered_map(_scan_chunk, tasks, workers)):
        done[index] = found
        if cache is not None:
            with CorpusWriter(_part_path(cache, params.key, index), header) as writer:
                writer.write(found)
        logger.log(LogLevel.DEBUG, f"Scanned chunk {index + 1}/{len(chunks)}")

    records: dict[int, list[PointRecord]] = {}
    for index in range(len(chunks)):
        records.update(done[index])
    corpus = ScanCorpus(params, len(twists), dict(sorted(records.items())))

    if cache is not None:
        with CorpusWriter(corpus_path(cache, params), header) as writer:
            writer.write(corpus.records)
        for index in range(len(chunks)):
            _part_path(cache, params.key, index).unlink(missing_ok=True)
    return corpus
