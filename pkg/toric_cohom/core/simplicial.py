"""Abstract simplicial complexes on small vertex sets.

Vertex subsets are bit masks (bit ``v`` set means vertex ``v`` is present).
A complex carries its ground vertex set explicitly because the Alexander dual
and the duality degree shifts depend on it, not only on the faces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

import numpy as np

from .exactlinalg import SparseColumn, sparse_rank

MAX_VERTICES = 64
MAX_FACES = 1 << 21


class ComplexSizeError(RuntimeError):
    """A complex has more faces than can be held for a homology computation."""


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        if v < 0 or v >= MAX_VERTICES:
            raise ValueError(f"vertex {v} outside 0..{MAX_VERTICES - 1}")
        m |= 1 << v
    return m


def members(mask: int) -> List[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def full_mask(n: int) -> int:
    return (1 << n) - 1


def submasks(mask: int) -> Iterator[int]:
    s = mask
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & mask


def lex_key(mask: int) -> Tuple[int, ...]:
    return tuple(members(mask))


def _maximal(faces: Iterable[int]) -> Tuple[int, ...]:
    uniq = sorted(set(faces), key=lambda f: (-f.bit_count(), f))
    kept: List[int] = []
    for f in uniq:
        if not any(f & ~g == 0 for g in kept):
            kept.append(f)
    return tuple(sorted(kept, key=lex_key))


@dataclass(frozen=True)
class HomologyDims:
    """Reduced Betti numbers, ``betti[0]`` being degree -1.

    Trailing zeros are stripped so equal homology compares equal whatever the
    dimension of the complexes involved.
    """

    betti: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        b = list(self.betti)
        while b and b[-1] == 0:
            b.pop()
        object.__setattr__(self, "betti", tuple(b))

    def __getitem__(self, degree: int) -> int:
        k = degree + 1
        if 0 <= k < len(self.betti):
            return self.betti[k]
        return 0

    def nonzero(self) -> Dict[int, int]:
        return {k - 1: v for k, v in enumerate(self.betti) if v}

    def euler_characteristic(self) -> int:
        return sum((-1) ** (k + 1) * v for k, v in enumerate(self.betti))


@dataclass(frozen=True)
class SimplicialComplex:
    """A complex given by its maximal faces on the ground set ``ground``.

    ``maximal_faces == ()`` is the void complex (not even the empty face);
    ``maximal_faces == (0,)`` is the irrelevant complex {∅}.
    """

    ground: int
    maximal_faces: Tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.ground >> MAX_VERTICES:
            raise ValueError(f"at most {MAX_VERTICES} vertices are supported")
        if any(f & ~self.ground for f in self.maximal_faces):
            raise ValueError("face outside the ground vertex set")
        object.__setattr__(self, "maximal_faces", _maximal(self.maximal_faces))

    @classmethod
    def from_faces(cls, n_vertices: int, faces: Iterable[Iterable[int]]) -> "SimplicialComplex":
        return cls(full_mask(n_vertices), tuple(mask_of(f) for f in faces))

    @classmethod
    def void(cls, n_vertices: int) -> "SimplicialComplex":
        return cls(full_mask(n_vertices), ())

    @classmethod
    def irrelevant(cls, n_vertices: int) -> "SimplicialComplex":
        return cls(full_mask(n_vertices), (0,))

    @classmethod
    def simplex(cls, n_vertices: int) -> "SimplicialComplex":
        g = full_mask(n_vertices)
        return cls(g, (g,))

    @property
    def n_vertices(self) -> int:
        return self.ground.bit_count()

    @property
    def is_void(self) -> bool:
        return not self.maximal_faces

    @property
    def dimension(self) -> int:
        if self.is_void:
            return -2
        return max(f.bit_count() for f in self.maximal_faces) - 1

    def contains(self, face: int) -> bool:
        return any(face & ~m == 0 for m in self.maximal_faces)

    def with_ground(self, ground: int) -> "SimplicialComplex":
        return SimplicialComplex(ground, self.maximal_faces)

    @cached_property
    def faces(self) -> frozenset:
        out = set()
        for m in self.maximal_faces:
            out.update(submasks(m))
            if len(out) > MAX_FACES:
                raise ComplexSizeError(f"complex on {self.n_vertices} vertices has more than {MAX_FACES} faces")
        return frozenset(out)

    @cached_property
    def faces_by_dim(self) -> Tuple[Tuple[int, ...], ...]:
        """Faces grouped by dimension, index 0 holding dimension -1."""
        levels: List[List[int]] = [[] for _ in range(self.dimension + 2)]
        for f in self.faces:
            levels[f.bit_count()].append(f)
        return tuple(tuple(sorted(level, key=lex_key)) for level in levels)

    def as_lists(self) -> List[List[int]]:
        return [members(f) for f in self.maximal_faces]


def restriction(complex_: SimplicialComplex, sigma: int) -> SimplicialComplex:
    """Faces contained in ``sigma``; the ground set is unchanged."""
    if complex_.is_void:
        return complex_
    return SimplicialComplex(complex_.ground, tuple(m & sigma for m in complex_.maximal_faces))


def link(complex_: SimplicialComplex, sigma: int) -> SimplicialComplex:
    if not complex_.contains(sigma):
        raise ValueError(f"{members(sigma)} is not a face of the complex")
    faces = tuple(m & ~sigma for m in complex_.maximal_faces if sigma & ~m == 0)
    return SimplicialComplex(complex_.ground & ~sigma, faces)


def minimal_nonfaces(complex_: SimplicialComplex) -> Tuple[int, ...]:
    """Subsets of the ground set that are not faces but whose proper subsets are.

    Each candidate ``F ∪ {v}`` is generated once, from the face ``F`` with
    ``v`` above every vertex of ``F``, in ascending cardinality.
    """
    if complex_.is_void:
        return (0,)
    faces = complex_.faces
    out: List[int] = []
    for level in complex_.faces_by_dim:
        for f in level:
            top = f.bit_length()
            for v in members(complex_.ground):
                if v < top:
                    continue
                cand = f | (1 << v)
                if cand in faces:
                    continue
                if all((cand & ~(1 << w)) in faces for w in members(cand)):
                    out.append(cand)
    return tuple(sorted(out, key=lambda m: (m.bit_count(), m)))


def alexander_dual(complex_: SimplicialComplex) -> SimplicialComplex:
    """{σ ⊆ V : V∖σ ∉ Γ}; its maximal faces are complements of minimal non-faces."""
    V = complex_.ground
    return SimplicialComplex(V, tuple(V & ~n for n in minimal_nonfaces(complex_)))


def nerve(cover: Sequence[int]) -> SimplicialComplex:
    """Index sets of cover members with a common vertex (∅ always included)."""
    if not cover:
        raise ValueError("nerve of an empty cover")
    m = len(cover)
    ground = full_mask(m)
    maximal: List[int] = []

    def extend(chosen: int, common: int, start: int) -> None:
        grown = False
        for k in range(start, m):
            meet = common & cover[k]
            if meet:
                grown = True
                extend(chosen | (1 << k), meet, k + 1)
        if not grown:
            maximal.append(chosen)

    everything = 0
    for c in cover:
        everything |= c
    extend(0, everything, 0)
    return SimplicialComplex(ground, tuple(maximal))


def boundary_columns(complex_: SimplicialComplex, k: int) -> List[SparseColumn]:
    """The boundary map from k-faces to (k-1)-faces of the augmented chain complex.

    One ``{row: sign}`` column per k-face. Rows and columns follow the
    lexicographic face order; removing the vertex in position ``i`` of a face
    carries sign ``(-1)**i``.
    """
    levels = complex_.faces_by_dim
    if k < 0 or k + 1 >= len(levels):
        return []
    index = {f: i for i, f in enumerate(levels[k])}
    return [
        {index[face & ~(1 << v)]: -1 if pos % 2 else 1 for pos, v in enumerate(members(face))}
        for face in levels[k + 1]
    ]


def boundary_matrix(complex_: SimplicialComplex, k: int) -> np.ndarray:
    """Dense form of ``boundary_columns``."""
    levels = complex_.faces_by_dim
    if k < 0 or k + 1 >= len(levels):
        return np.zeros((0, 0), dtype=object)
    B = np.zeros((len(levels[k]), len(levels[k + 1])), dtype=object)
    for j, col in enumerate(boundary_columns(complex_, k)):
        for i, v in col.items():
            B[i, j] = v
    return B


@lru_cache(maxsize=4096)
def reduced_homology_dims(complex_: SimplicialComplex) -> HomologyDims:
    """Reduced homology over the rationals, from exact boundary ranks."""
    levels = complex_.faces_by_dim
    if not levels:
        return HomologyDims()
    counts = [len(level) for level in levels]
    top = len(levels) - 2
    ranks = [sparse_rank(boundary_columns(complex_, k)) for k in range(top + 1)]
    betti = []
    for k in range(-1, top + 1):
        r_out = ranks[k] if k >= 0 else 0
        r_in = ranks[k + 1] if k + 1 <= top else 0
        betti.append(counts[k + 1] - r_out - r_in)
    dims = HomologyDims(tuple(betti))
    chi = sum((-1) ** (k + 1) * c for k, c in enumerate(counts))
    if dims.euler_characteristic() != chi:
        raise ArithmeticError(f"Euler characteristic mismatch: {dims.euler_characteristic()} != {chi}")
    return dims
