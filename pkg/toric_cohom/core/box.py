from dataclasses import dataclass
from itertools import product
from typing import Iterator, Tuple

import numpy as np


@dataclass(frozen=True)
class Box:
    """Inclusive integer ranges, one per coordinate."""

    ranges: Tuple[Tuple[int, int], ...]

    @property
    def size(self) -> int:
        total = 1
        for lo, hi in self.ranges:
            total *= max(0, hi - lo + 1)
        return total

    def broadcast(self, n: int) -> "Box":
        """One range applies to every coordinate; otherwise the count must be ``n``."""
        if len(self.ranges) == 1:
            return Box(self.ranges * n)
        if len(self.ranges) != n:
            raise ValueError(f"box has {len(self.ranges)} ranges, expected 1 or {n}")
        return self

    def padded(self, n: int) -> "Box":
        """Ranges for the leading coordinates; the rest are fixed at 0."""
        if len(self.ranges) > n:
            raise ValueError(f"box has {len(self.ranges)} ranges, expected at most {n}")
        return Box(self.ranges + ((0, 0),) * (n - len(self.ranges)))

    def contains(self, point) -> bool:
        return all(lo <= x <= hi for x, (lo, hi) in zip(point, self.ranges))

    def points(self) -> Iterator[Tuple[int, ...]]:
        return product(*(range(lo, hi + 1) for lo, hi in self.ranges))

    def grid(self) -> np.ndarray:
        """Every point as a row of an int64 array, in lexicographic order."""
        n = len(self.ranges)
        if self.size == 0:
            return np.zeros((0, n), dtype=np.int64)
        axes = [np.arange(lo, hi + 1, dtype=np.int64) for lo, hi in self.ranges]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack(mesh, axis=-1).reshape(-1, n)

    def as_text(self) -> str:
        return ",".join(f"{lo}:{hi}" for lo, hi in self.ranges)


def parse_box(s: str) -> Box:
    """Parse a box string.

    The expected format is ``"lo:hi"`` or ``"lo:hi,lo:hi,..."`` with integer,
    inclusive bounds. A range with ``lo > hi`` is allowed and is empty.
    ``ValueError`` is raised on malformed input.
    """

    try:
        ranges = []
        for part in s.split(","):
            lo, hi = part.split(":")
            ranges.append((int(lo), int(hi)))
    except Exception as exc:
        raise ValueError("box must be like 'lo:hi' or 'lo:hi,lo:hi,...'") from exc
    return Box(tuple(ranges))


def default_box(n: int, d: int, lo_offset: int = 2, hi_offset: int = 1) -> Box:
    return Box(((-(d + lo_offset), d + hi_offset),) * n)
