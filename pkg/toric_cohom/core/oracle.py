"""Ground truth for the graded cohomology, straight from the fan complex P.

For i >= 1 the piece of H^i_*(O_X) in degree p depends only on I = Neg(p) and
has the dimension of the reduced homology of P restricted to the complement of
I, in degree d - 1 - i. Bundle cohomology is then a sum over the lattice
points of a box. Nothing here touches Stanley–Reisner sets, U_SR or Λ_I, so
agreement with the algorithm is evidence rather than a tautology.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from tqdm.auto import tqdm

from .box import Box
from .classgroup import ClassGroup, class_group
from .fan import Fan, fan_complex
from .polytope import SignPatternPolytopes, UnboundedPolytopeError
from .simplicial import HomologyDims, SimplicialComplex, reduced_homology_dims, restriction

log = logging.getLogger("toric_cohom")

MAX_ORACLE_RAYS = 16
DEFAULT_MAX_POINTS = 5_000_000


class BoxTooSmallError(ValueError):
    """Some contributing lattice point of the requested class lies outside the box."""


@lru_cache(maxsize=65536)
def _restricted_homology(P: SimplicialComplex, keep: int) -> HomologyDims:
    return reduced_homology_dims(restriction(P, keep))


def oracle_graded_dim(support: int, i: int, P: SimplicialComplex, d: int) -> int:
    """dim H̃_{d-1-i}(P restricted to the complement of I)."""
    if i < 1:
        raise ValueError("oracle_graded_dim is defined for i >= 1")
    return _restricted_homology(P, P.ground & ~support)[d - 1 - i]


@dataclass(frozen=True)
class Mismatch:
    stage: str  # "graded" or "cohomology"
    point: Tuple[int, ...]
    degree: int
    algorithm: int
    oracle: int


@dataclass
class OracleReport:
    fan: str
    box: Box
    mismatches: List[Mismatch] = field(default_factory=list)
    matches: int = 0
    classes_compared: int = 0
    classes_skipped: int = 0
    unbounded: List[Tuple[int, ...]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.unbounded


class BoxScan:
    """Every point of a box with its Neg mask and class coordinates."""

    def __init__(self, box: Box, group: ClassGroup) -> None:
        self.box = box
        self.points = box.grid()
        n = self.points.shape[1]
        weights = np.left_shift(np.int64(1), np.arange(n, dtype=np.int64))
        self.masks = (self.points < 0).astype(np.int64) @ weights
        classes = group.classes_of(self.points)
        self.class_cols = [f"c{k}" for k in range(classes.shape[1])]
        df = pd.DataFrame(classes, columns=self.class_cols)
        df["mask"] = self.masks
        df["row"] = np.arange(len(df))
        self.frame = df
        counts = df.groupby(self.class_cols + ["mask"], sort=True).size()
        self._counts: Dict[Tuple[int, ...], Dict[int, int]] = {}
        for key, size in counts.items():
            key = tuple(int(x) for x in key)
            self._counts.setdefault(key[:-1], {})[key[-1]] = int(size)

    def point(self, row: int) -> Tuple[int, ...]:
        return tuple(int(x) for x in self.points[row])

    def mask_counts(self, class_key: Tuple[int, ...]) -> Dict[int, int]:
        return self._counts.get(tuple(class_key), {})

    def class_representatives(self) -> List[Tuple[Tuple[int, ...], int]]:
        firsts = self.frame.drop_duplicates(subset=self.class_cols)
        return [
            (tuple(int(x) for x in rec[:-1]), int(rec[-1]))
            for rec in firsts[self.class_cols + ["row"]].itertuples(index=False, name=None)
        ]

    def mask_representatives(self) -> Dict[int, Tuple[int, int]]:
        """mask -> (first row with that mask, number of rows with it)."""
        masks, first, totals = np.unique(self.masks, return_index=True, return_counts=True)
        return {int(m): (int(r), int(t)) for m, r, t in zip(masks, first, totals)}


class Oracle:
    def __init__(self, fan: Fan, max_points: int = DEFAULT_MAX_POINTS) -> None:
        if fan.n_rays > MAX_ORACLE_RAYS:
            raise ValueError(f"the oracle scans all 2^n sign patterns; n={fan.n_rays} exceeds {MAX_ORACLE_RAYS}")
        self.fan = fan
        self.dim = fan.dim
        self.complex = fan_complex(fan)
        self.group = class_group(fan)
        self.polytopes = SignPatternPolytopes(fan.rays)
        self.max_points = max_points
        self.profile: Dict[int, Tuple[int, ...]] = {
            s: tuple(oracle_graded_dim(s, i, self.complex, self.dim) for i in range(1, self.dim + 1))
            for s in range(1 << fan.n_rays)
        }
        self.contributing = [0] + [s for s, dims in self.profile.items() if s and any(dims)]
        self._scans: Dict[Box, BoxScan] = {}
        log.info(f"oracle {fan.name}: {len(self.contributing) - 1} sign patterns carry higher cohomology")

    def graded_dim(self, support: int, i: int) -> int:
        if i < 1:
            raise ValueError("graded_dim is defined for i >= 1")
        return self.profile[support][i - 1]

    def scan(self, box: Box) -> BoxScan:
        box = box.broadcast(self.fan.n_rays)
        if box.size > self.max_points:
            raise ValueError(f"box has {box.size} points, more than the configured {self.max_points}")
        if box not in self._scans:
            self._scans[box] = BoxScan(box, self.group)
        return self._scans[box]

    def check_support(self, divisor: Sequence[int], box: Box) -> None:
        """Raise unless every contributing point of the class of L lies in the box."""
        for support in self.contributing:
            for p in self.polytopes.points(support, divisor):
                if not box.contains(p):
                    raise BoxTooSmallError(f"point {list(p)} of the class of {list(divisor)} lies outside box {box.as_text()}")

    def cohomology(self, divisor: Sequence[int], box: Box) -> Tuple[int, ...]:
        box = box.broadcast(self.fan.n_rays)
        self.check_support(divisor, box)
        scan = self.scan(box)
        key = tuple(int(x) for x in self.group.classes_of(np.array([divisor], dtype=np.int64))[0])
        h = [0] * (self.dim + 1)
        for mask, count in scan.mask_counts(key).items():
            if mask == 0:
                h[0] += count
            dims = self.profile[mask]
            for i in range(1, self.dim + 1):
                h[i] += count * dims[i - 1]
        return tuple(h)


def oracle_cohomology(fan: Fan, divisor: Sequence[int], box: Box) -> Tuple[int, ...]:
    return Oracle(fan).cohomology(divisor, box)


def verify(
    fan: Fan,
    box: Box,
    engine=None,
    oracle: Optional[Oracle] = None,
    progress: bool = False,
) -> OracleReport:
    """Compare the algorithm with the oracle on every point and class of a box.

    Classes whose support leaks out of the box are counted as skipped; classes
    with infinitely many contributing points (the fan is not complete) are
    listed in ``unbounded`` and fail the report.
    ``engine`` is anything with ``graded_dim(support, i)`` and
    ``cohomology(divisor).dims``; by default the SR-based engine.
    """
    if engine is None:
        from .algorithm import CohomologyEngine

        engine = CohomologyEngine(fan)
    oracle = oracle or Oracle(fan)
    box = box.broadcast(fan.n_rays)
    scan = oracle.scan(box)
    report = OracleReport(fan=fan.name, box=box)

    for mask, (row, total) in scan.mask_representatives().items():
        for i in range(1, fan.dim + 1):
            a, o = engine.graded_dim(mask, i), oracle.graded_dim(mask, i)
            if a != o:
                report.mismatches.append(Mismatch("graded", scan.point(row), i, a, o))
            else:
                report.matches += total

    reps = scan.class_representatives()
    for _, row in tqdm(reps, desc=f"{fan.name} classes", unit="class", leave=False, dynamic_ncols=True, disable=not progress, mininterval=0.2, smoothing=0.1):
        divisor = scan.point(row)
        try:
            expected = oracle.cohomology(divisor, box)
            got = engine.cohomology(divisor).dims
        except BoxTooSmallError:
            report.classes_skipped += 1
            continue
        except UnboundedPolytopeError:
            report.unbounded.append(divisor)
            continue
        report.classes_compared += 1
        for i, (a, o) in enumerate(zip(got, expected)):
            if a != o:
                report.mismatches.append(Mismatch("cohomology", divisor, i, a, o))
            else:
                report.matches += 1

    log.info(
        f"verify {fan.name} box={box.as_text()}: matches={report.matches} mismatches={len(report.mismatches)} unbounded={len(report.unbounded)} "
        f"classes={report.classes_compared} skipped={report.classes_skipped}"
    )
    return report
