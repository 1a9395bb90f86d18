"""The class group Cl(X) = Z^{Δ(1)} / im(R) of a fan, R the n×d ray matrix."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .exactlinalg import IntegerMatrix, smith_normal_form, solve_diophantine
from .fan import Fan

log = logging.getLogger("toric_cohom")


@dataclass(frozen=True)
class ClassElement:
    free: Tuple[int, ...]
    torsion: Tuple[int, ...]

    def key(self) -> Tuple[int, ...]:
        return self.free + self.torsion


@dataclass(frozen=True, eq=False)
class ClassGroup:
    """Cl(X) presented through one Smith decomposition ``U R V = D``.

    The coordinates of a divisor ``a`` are ``U a``: the first ``d`` entries
    are taken modulo the diagonal of ``D`` (only entries > 1 survive, as
    torsion) and the remaining ``n - d`` entries are free.
    """

    n: int
    free_rank: int
    torsion_invariants: Tuple[int, ...]
    ray_matrix: IntegerMatrix
    projection: IntegerMatrix
    lift: IntegerMatrix
    torsion_rows: Tuple[int, ...]

    def divisor_class(self, a: Sequence[int]) -> ClassElement:
        if len(a) != self.n:
            raise ValueError(f"divisor has {len(a)} coefficients, expected {self.n}")
        c = self.projection.dot(np.array([int(x) for x in a], dtype=object))
        d = self.n - self.free_rank
        free = tuple(int(x) for x in c[d:])
        torsion = tuple(int(c[r]) % q for r, q in zip(self.torsion_rows, self.torsion_invariants))
        return ClassElement(free, torsion)

    def zero(self) -> ClassElement:
        return ClassElement((0,) * self.free_rank, (0,) * len(self.torsion_invariants))

    def add(self, x: ClassElement, y: ClassElement) -> ClassElement:
        return ClassElement(
            tuple(a + b for a, b in zip(x.free, y.free)),
            tuple((a + b) % q for a, b, q in zip(x.torsion, y.torsion, self.torsion_invariants)),
        )

    def particular_preimage(self, c: ClassElement) -> List[int]:
        """Some divisor whose class is ``c``; the degree map is onto."""
        d = self.n - self.free_rank
        t = [0] * self.n
        for r, residue in zip(self.torsion_rows, c.torsion):
            t[r] = residue
        t[d:] = list(c.free)
        a = self.lift.dot(np.array(t, dtype=object))
        return [int(x) for x in a]

    def principal_witness(self, a: Sequence[int]) -> Optional[List[int]]:
        """A character m with R·m = a when ``a`` is principal, else None."""
        return solve_diophantine(self.ray_matrix, list(a))

    def are_equivalent(self, a: Sequence[int], b: Sequence[int]) -> bool:
        return self.principal_witness([x - y for x, y in zip(a, b)]) is not None

    def classes_of(self, points: np.ndarray) -> np.ndarray:
        """Class coordinates of each row of an int64 array, free part first."""
        d = self.n - self.free_rank
        rows = list(range(d, self.n)) + list(self.torsion_rows)
        P = np.array([[int(x) for x in self.projection[r]] for r in rows], dtype=np.int64).reshape(len(rows), self.n)
        coords = points.astype(np.int64) @ P.T
        for k, q in enumerate(self.torsion_invariants):
            col = self.free_rank + k
            coords[:, col] = np.mod(coords[:, col], q)
        return coords

    def describe(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts.extend(f"Z/{q}" for q in self.torsion_invariants)
        return " + ".join(parts) if parts else "0"


def class_group(fan: Fan) -> ClassGroup:
    R = fan.ray_matrix()
    n, d = R.shape
    snf = smith_normal_form(R)
    diag = snf.diagonal
    if snf.rank < d:
        raise ValueError(f"rays do not span: rank {snf.rank} < dim {d}")
    torsion_rows = tuple(i for i, x in enumerate(diag) if x > 1)
    group = ClassGroup(
        n=n,
        free_rank=n - d,
        torsion_invariants=tuple(diag[i] for i in torsion_rows),
        ray_matrix=R,
        projection=snf.U,
        lift=snf.U_inv,
        torsion_rows=torsion_rows,
    )
    log.debug(f"{fan.name}: Cl(X) = {group.describe()}")
    return group


def kernel_basis(fan: Fan) -> List[Tuple[int, ...]]:
    """The d columns of R: the divisors of the characters e_1, …, e_d of M."""
    return [tuple(int(r[k]) for r in fan.rays) for k in range(fan.dim)]
