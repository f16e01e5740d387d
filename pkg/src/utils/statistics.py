import sys
from dataclasses import asdict, dataclass
from typing import TextIO


@dataclass
class ScanStatistics:
    """
    Simple data class used to store essential statistics for a family scan.

    Attributes:
        twists_scanned (int): Number of square-free D searched, both signs
        twists_with_points (int): Number of D with a non-torsion integral point
        nontorsion_points (int): Integral points with y != 0, both signs of y
        torsion_points (int): Integral points with y = 0
        compact_points (int): Points on the compact real component

    Note:
     As a dataclass, this class automatically generates:
        - __init__: The constructor method
        - __repr__: Defines string represention of object
        - __eq__: Enables equality comparison between instances
    """

    twists_scanned: int = 0
    twists_with_points: int = 0
    nontorsion_points: int = 0
    torsion_points: int = 0
    compact_points: int = 0

    @property
    def twist_ratio(self) -> float:
        """Share of scanned twists with a non-torsion point"""
        return self.twists_with_points / self.twists_scanned if self.twists_scanned > 0 else 0

    def record_point(self, is_torsion: bool, compact: bool):
        """Record one integral point"""
        if is_torsion:
            self.torsion_points += 1
        else:
            self.nontorsion_points += 1
        if compact:
            self.compact_points += 1

    def to_dict(self) -> dict:
        return asdict(self) | {"twist_ratio": self.twist_ratio}

    def print_stats(self, stream: TextIO = sys.stdout):
        """Print formatted scan statistics to specified stream"""
        # Basic ANSI color codes
        BLUE = "\033[34m"
        GREEN = "\033[32m"
        YELLOW = "\033[33m"
        RED = "\033[31m"
        BOLD = "\033[1m"
        RESET = "\033[0m"

        DIVIDER = f"{BOLD}|{RESET}"

        stats = (
            f"{BOLD}Scan Stats: {RESET} "
            f"Twists: {BLUE}{self.twists_scanned:<2}{RESET} "
            f"With points: {GREEN}{self.twists_with_points:<2}{RESET} {DIVIDER} "
            f"Non-torsion: {GREEN}{self.nontorsion_points:<2}{RESET} "
            f"Torsion: {RED}{self.torsion_points:<2}{RESET} "
            f"Compact: {RED}{self.compact_points:<2}{RESET} {DIVIDER} "
            f"Ratio: {YELLOW}{self.twist_ratio:.1%}{RESET}"
        )

        print(stats, file=stream, flush=True)
