"""Integer points of rational polytopes {m : A m <= b} by Fourier–Motzkin.

The elimination depends on ``A`` only: every derived inequality records the
nonnegative combination of base rows it came from, so one projection serves
all right-hand sides. This is what lets a fan reuse the same systems for
every divisor class.
"""

from __future__ import annotations

import logging
from math import gcd
from typing import Dict, Iterator, List, Sequence, Tuple

log = logging.getLogger("toric_cohom")

Row = Tuple[Tuple[int, ...], Tuple[int, ...]]  # (coefficients, weights on base rows)


class UnboundedPolytopeError(ValueError):
    """A feasible system has infinitely many rational points."""


def _normalize(coeffs: Sequence[int], weights: Sequence[int]) -> Row:
    g = 0
    for x in coeffs:
        g = gcd(g, x)
    for x in weights:
        g = gcd(g, x)
    if g > 1:
        coeffs = [x // g for x in coeffs]
        weights = [x // g for x in weights]
    return tuple(coeffs), tuple(weights)


class FourierMotzkin:
    """Projections of ``A m <= b`` onto the leading variables.

    ``levels[k]`` holds the inequalities in the variables ``m_0 .. m_{k-1}``;
    ``levels[0]`` has no variables left and decides rational feasibility.
    """

    def __init__(self, rows: Sequence[Sequence[int]], n_vars: int) -> None:
        self.n_vars = n_vars
        self.n_rows = len(rows)
        base: List[Row] = []
        for i, row in enumerate(rows):
            if len(row) != n_vars:
                raise ValueError(f"row {i} has {len(row)} coefficients, expected {n_vars}")
            weights = [0] * len(rows)
            weights[i] = 1
            base.append(_normalize([int(x) for x in row], weights))
        levels: List[List[Row]] = [[] for _ in range(n_vars + 1)]
        levels[n_vars] = list(dict.fromkeys(base))
        for k in range(n_vars, 0, -1):
            levels[k - 1] = self._eliminate(levels[k], k - 1)
        self.levels = levels

    @staticmethod
    def _eliminate(rows: List[Row], j: int) -> List[Row]:
        kept: Dict[Row, None] = {}
        pos = [r for r in rows if r[0][j] > 0]
        neg = [r for r in rows if r[0][j] < 0]
        for r in rows:
            if r[0][j] == 0:
                kept[r] = None
        for pc, pw in pos:
            for nc, nw in neg:
                a, b = pc[j], -nc[j]
                coeffs = [b * x + a * y for x, y in zip(pc, nc)]
                weights = [b * x + a * y for x, y in zip(pw, nw)]
                kept[_normalize(coeffs, weights)] = None
        return list(kept)

    @property
    def bounded(self) -> bool:
        for k in range(1, self.n_vars + 1):
            signs = {r[0][k - 1] > 0 for r in self.levels[k] if r[0][k - 1] != 0}
            if signs != {True, False}:
                return False
        return True

    def _rhs(self, b: Sequence[int]) -> List[List[Tuple[Tuple[int, ...], int]]]:
        if len(b) != self.n_rows:
            raise ValueError(f"rhs has {len(b)} entries, expected {self.n_rows}")
        return [[(c, sum(w * x for w, x in zip(ws, b) if w)) for c, ws in level] for level in self.levels]

    def feasible(self, b: Sequence[int]) -> bool:
        return all(r >= 0 for _, r in self._rhs(b)[0])

    def integer_points(self, b: Sequence[int]) -> Iterator[Tuple[int, ...]]:
        """Integer solutions in lexicographic order.

        Raises UnboundedPolytopeError when the system is feasible but unbounded.
        """
        levels = self._rhs(b)
        if not all(r >= 0 for _, r in levels[0]):
            return
        if not self.bounded:
            raise UnboundedPolytopeError("polytope is unbounded (is the fan complete?)")
        d = self.n_vars
        prefix: List[int] = []

        def walk(k: int) -> Iterator[Tuple[int, ...]]:
            if k == d:
                yield tuple(prefix)
                return
            lo = hi = None
            for coeffs, r in levels[k + 1]:
                a = coeffs[k]
                if a == 0:
                    continue
                rest = r - sum(c * x for c, x in zip(coeffs, prefix))
                if a > 0:
                    v = rest // a
                    hi = v if hi is None or v < hi else hi
                else:
                    v = -(rest // -a)
                    lo = v if lo is None or v > lo else lo
            for x in range(lo, hi + 1):
                prefix.append(x)
                yield from walk(k + 1)
                prefix.pop()

        yield from walk(0)

    def count(self, b: Sequence[int]) -> int:
        return sum(1 for _ in self.integer_points(b))


class SignPatternPolytopes:
    """Lattice points p = anchor + R·m with Neg(p) = I, for every I of one fan.

    The constraints are p_ρ <= -1 for ρ in I and p_ρ >= 0 otherwise; one
    FourierMotzkin system is built per I and cached.
    """

    def __init__(self, ray_rows: Sequence[Sequence[int]]) -> None:
        self.rays = [tuple(int(x) for x in r) for r in ray_rows]
        self.n = len(self.rays)
        self.d = len(self.rays[0]) if self.rays else 0
        self._systems: Dict[int, FourierMotzkin] = {}

    def system(self, support: int) -> FourierMotzkin:
        fm = self._systems.get(support)
        if fm is None:
            rows = [r if support >> k & 1 else tuple(-x for x in r) for k, r in enumerate(self.rays)]
            fm = FourierMotzkin(rows, self.d)
            self._systems[support] = fm
            log.debug(f"FM system for support {support:#x}: {[len(l) for l in fm.levels]} rows per level")
        return fm

    def _rhs(self, support: int, anchor: Sequence[int]) -> List[int]:
        if len(anchor) != self.n:
            raise ValueError(f"anchor has {len(anchor)} coordinates, expected {self.n}")
        return [-1 - a if support >> k & 1 else a for k, a in enumerate(anchor)]

    def points(self, support: int, anchor: Sequence[int]) -> Iterator[Tuple[int, ...]]:
        for m in self.system(support).integer_points(self._rhs(support, anchor)):
            yield tuple(a + sum(r * x for r, x in zip(ray, m)) for a, ray in zip(anchor, self.rays))

    def count(self, support: int, anchor: Sequence[int]) -> int:
        return self.system(support).count(self._rhs(support, anchor))

    def is_bounded(self, support: int) -> bool:
        return self.system(support).bounded
