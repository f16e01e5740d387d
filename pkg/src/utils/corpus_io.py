"""
Reading and writing scan corpora.

A corpus is UTF-8 text: `# key = value` header lines followed by one record
per integral point, `D x y flags`. flags is two letters: N (non-torsion) or
T (2-torsion), then U (unbounded) or C (compact component).
"""

import warnings
from math import gcd
from pathlib import Path
from typing import Iterator, Optional, TextIO

from common.constants import CORPUS_FORMAT_VERSION, Component, LogLevel, Model
from common.exceptions import CorpusError, CurveValidationError
from config.project_config import config
from twists.curves import TwistCurve
from twists.points import IntegralPoint, PointRecord
from utils.workbench_logger import WorkbenchLogger

HEADER_KEYS = ("format", "A", "B", "model", "N", "x_max", "twists")


def format_header(header: dict) -> list[str]:
    lines = [f"# {key} = {header[key]}" for key in HEADER_KEYS]
    lines.append(f"# note = complete up to x_max = {header['x_max']}")
    return lines


def format_record(D: int, record: PointRecord) -> str:
    return f"{D} {record.point.x} {record.point.y} {record.flags}"


def write_records(stream: TextIO, records: dict[int, list[PointRecord]]):
    for D in sorted(records):
        for record in records[D]:
            stream.write(format_record(D, record) + "\n")


class CorpusWriter:
    """
    Write a corpus atomically: lines go to a temporary file that replaces the
    target on a clean exit.
    """

    def __init__(self, path: str | Path, header: dict):
        self.path = Path(path)
        self.header = {"format": CORPUS_FORMAT_VERSION} | header
        self._tmp = self.path.with_suffix(self.path.suffix + ".tmp")
        self.fd = None

    def __enter__(self):
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.fd = open(self._tmp, "w", encoding="utf-8", newline="\n")
        for line in format_header(self.header):
            self.fd.write(line + "\n")
        return self

    def write(self, records: dict[int, list[PointRecord]]):
        write_records(self.fd, records)

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.fd.close()
        if exc_type is None:
            self._tmp.replace(self.path)
        else:
            self._tmp.unlink(missing_ok=True)


class CorpusReader:
    """
    A parser for scan corpora.

    Header lines are collected into `header`; every record line is parsed
    and re-checked against its curve. Malformed lines and points that fail
    the curve equation are reported with warnings.warn and skipped.

    Attributes:
        path (Path): Path to the corpus file
        header (dict): Parsed header values
        fd: File descriptor for the opened corpus
    """

    def __init__(self, path: str | Path, logger: Optional[WorkbenchLogger] = None):
        self.logger = logger if logger is not None else config.get_logger()
        self.path = Path(path)
        self.fd = None
        self.header: dict = {}
        self._curves: dict[int, TwistCurve] = {}

    def open(self):
        """
        Raises:
            CorpusError: if the file is missing or unreadable
        """
        try:
            self.fd = open(self.path, "r", encoding="utf-8")
        except FileNotFoundError as e:
            raise CorpusError(f"could not find corpus '{self.path}'; run the scan command first") from e
        except OSError as e:
            raise CorpusError(f"could not open corpus '{self.path}': {e}") from e
        self.logger.log(LogLevel.DEBUG, f"Using corpus file: {self.path}")

    def close(self):
        if self.fd:
            self.fd.close()
            self.fd = None

    def __enter__(self):
        self.open()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.close()

    def _family(self) -> tuple[int, int, Model]:
        try:
            return int(self.header["A"]), int(self.header["B"]), Model(self.header["model"])
        except (KeyError, ValueError) as e:
            raise CorpusError(f"corpus '{self.path}' has an incomplete header: {e}") from e

    def _curve(self, D: int) -> TwistCurve:
        if D not in self._curves:
            A, B, model = self._family()
            self._curves[D] = TwistCurve(A, B, D, model)
        return self._curves[D]

    def records(self) -> Iterator[tuple[int, PointRecord]]:
        """Yield (D, record) for every valid record line."""
        for line in self.fd:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, sep, value = line[1:].partition("=")
                if sep:
                    self.header[key.strip()] = value.strip()
                continue
            parsed = self._parse_line(line)
            if parsed is not None:
                yield parsed
        self.logger.log(LogLevel.DEBUG, "[COMPLETE] - End of corpus file reached.")

    def _parse_line(self, line: str) -> Optional[tuple[int, PointRecord]]:
        parts = line.split()
        if len(parts) != 4:
            warnings.warn(f"Invalid corpus line format: {line}")
            return None
        try:
            D, x, y = (int(p) for p in parts[:3])
            flags = parts[3]
            if len(flags) != 2 or flags[0] not in "NT":
                raise ValueError(f"bad flags {flags}")
            component = Component(flags[1])
        except ValueError:
            warnings.warn(f"Invalid corpus line format: {line}")
            return None
        try:
            curve = self._curve(D)
        except CurveValidationError as e:
            warnings.warn(f"Invalid twist in corpus line '{line}': {e}")
            return None
        if not curve.on_curve((x, y)):
            warnings.warn(f"Point not on curve, skipping: {line}")
            return None
        return D, PointRecord(IntegralPoint(x, y), flags[0] == "T", gcd(x, D), component)

    def read_all(self) -> dict[int, list[PointRecord]]:
        records: dict[int, list[PointRecord]] = {}
        for D, record in self.records():
            records.setdefault(D, []).append(record)
        return records
