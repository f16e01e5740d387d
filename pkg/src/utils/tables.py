"""
CSV output and B/N grids for the table commands.

Every table starts with `# schema: <name> v<version>` followed by a header
row, then RFC 4180 rows written with the csv module. None is written as an
empty cell and Fractions as p/q.
"""

import csv
from fractions import Fraction
from pathlib import Path
from typing import Iterable, TextIO

from common.constants import CSV_SCHEMA_VERSION
from common.exceptions import ConfigurationError


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def write_table(stream: TextIO, schema: str, columns: list[str], rows: Iterable[Iterable], notes: list[str] = ()):
    """Write one table; notes become extra `# ` lines after the schema line."""
    stream.write(f"# schema: {schema} v{CSV_SCHEMA_VERSION}\n")
    for note in notes:
        stream.write(f"# {note}\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(value) for value in row])


def save_table(path: str | Path, schema: str, columns: list[str], rows: Iterable[Iterable], notes: list[str] = ()):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as stream:
        write_table(stream, schema, columns, rows, notes)


def read_table(stream: TextIO) -> tuple[str, list[str], list[list[str]]]:
    """Return (schema line, columns, rows) of a table written by write_table."""
    lines = stream.read().splitlines()
    comments = [line for line in lines if line.startswith("#")]
    body = [line for line in lines if not line.startswith("#")]
    reader = list(csv.reader(body))
    return comments[0] if comments else "", reader[0] if reader else [], reader[1:]


def dyadic_grid(N: int) -> list[int]:
    """Powers of two up to N, then N itself."""
    grid = [2**i for i in range(N.bit_length())]
    return grid + ([N] if N & (N - 1) else [])


def linear_grid(N: int, steps: int = 10) -> list[int]:
    return sorted({max(1, N * i // steps) for i in range(1, steps + 1)})


def parse_grid(text: str, N: int) -> list[int]:
    """
    A comma list of integers, `dyadic` or `linear`.

    Raises:
        ConfigurationError: for unparsable or non-positive entries
    """
    match text.strip():
        case "dyadic":
            return dyadic_grid(N)
        case "linear":
            return linear_grid(N)
        case _:
            try:
                grid = sorted({int(item) for item in text.split(",") if item.strip()})
            except ValueError as e:
                raise ConfigurationError(f"invalid grid '{text}': {e}") from e
            if not grid or grid[0] < 1:
                raise ConfigurationError(f"grid entries must be positive, got '{text}'")
            return grid
