"""Line bundle cohomology from Stanley–Reisner data.

For a Neg-pattern I ⊆ Δ(1) and i >= 1 the graded piece of H^i is nonzero only
when I is a union of SR generators, and then it has the dimension of the
reduced homology of Λ_I in degree |I| - i - 2. For 0 < i < d the complement
of I must be such a union too. Multiplying by the number of lattice points of
the right class with that sign pattern and summing gives h^i.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .classgroup import ClassElement, ClassGroup, class_group
from .fan import Fan, fan_complex
from .polytope import SignPatternPolytopes
from .simplicial import (
    HomologyDims,
    SimplicialComplex,
    full_mask,
    members,
    minimal_nonfaces,
    nerve,
    reduced_homology_dims,
)

log = logging.getLogger("toric_cohom")

DEFAULT_USR_CAP = 1 << 20


class USRSizeError(RuntimeError):
    """The union closure of the SR generators exceeded the configured cap."""


@dataclass(frozen=True)
class SRSet:
    """Minimal non-faces of P, sorted by (cardinality, bit mask)."""

    n_rays: int
    generators: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "generators", tuple(sorted(set(self.generators), key=lambda m: (m.bit_count(), m))))

    def as_lists(self) -> List[List[int]]:
        return [members(g) for g in self.generators]


def stanley_reisner(P: SimplicialComplex) -> SRSet:
    return SRSet(P.n_vertices, minimal_nonfaces(P))


def enumerate_usr(sr: SRSet, cap: int = DEFAULT_USR_CAP) -> FrozenSet[int]:
    """All unions of nonempty collections of generators (∅ excluded)."""
    usr = set(sr.generators)
    if len(usr) > cap:
        raise USRSizeError(f"U_SR exceeds cap {cap}")
    frontier = set(usr)
    while frontier:
        grown = set()
        for u in frontier:
            for g in sr.generators:
                w = u | g
                if w not in usr:
                    grown.add(w)
        usr |= grown
        if len(usr) > cap:
            raise USRSizeError(f"U_SR exceeds cap {cap} (combinatorial blowup)")
        frontier = grown
    return frozenset(usr)


def _generators_inside(support: int, sr: SRSet) -> List[int]:
    return [g for g in sr.generators if g & ~support == 0]


def lambda_complex(support: int, sr: SRSet) -> SimplicialComplex:
    """Λ_I: collections of the generators inside I whose union is not I.

    Vertex k stands for the k-th generator (in SR order) contained in I. A
    collection misses I exactly when it avoids some ray v in I, so the maximal
    faces are among the sets of generators avoiding a single ray.
    """
    inside = _generators_inside(support, sr)
    m = len(inside)
    return SimplicialComplex(full_mask(m), tuple(_avoiding(support, inside)))


def _check_union(support: int, inside: Sequence[int]) -> None:
    union = 0
    for g in inside:
        union |= g
    if not inside or union != support:
        raise ValueError(f"{members(support)} is not a union of SR generators")


def _avoiding(support: int, inside: Sequence[int]) -> List[int]:
    """For each ray v in I, the mask of generators inside I that miss v."""
    _check_union(support, inside)
    out = []
    for v in members(support):
        k_v = 0
        for k, g in enumerate(inside):
            if not g >> v & 1:
                k_v |= 1 << k
        out.append(k_v)
    return out


def lambda_homology(support: int, sr: SRSet) -> HomologyDims:
    """Reduced homology of Λ_I, computed on the nerve of its cover by simplices.

    Λ_I is the union of the full simplices on the generator sets avoiding each
    ray of I; their intersections are simplices again, so Λ_I has the homology
    of the nerve of that cover, a complex on at most |I| vertices.
    """
    cover = [k_v for k_v in _avoiding(support, _generators_inside(support, sr)) if k_v]
    if not cover:
        return reduced_homology_dims(SimplicialComplex.irrelevant(0))
    return reduced_homology_dims(nerve(cover))


@dataclass(frozen=True)
class SupportEntry:
    support: int
    generators: Tuple[int, ...]
    complex: SimplicialComplex
    homology: HomologyDims
    dual_in_usr: bool


@dataclass
class SupportTable:
    """Λ_I and its homology for every I in U_SR; independent of the line bundle."""

    n_rays: int
    dim: int
    entries: Dict[int, SupportEntry] = field(default_factory=dict)

    @classmethod
    def build(cls, sr: SRSet, dim: int, cap: int = DEFAULT_USR_CAP) -> "SupportTable":
        usr = enumerate_usr(sr, cap)
        full = full_mask(sr.n_rays)
        table = cls(sr.n_rays, dim)
        for support in sorted(usr, key=lambda m: (m.bit_count(), m)):
            lam = lambda_complex(support, sr)
            table.entries[support] = SupportEntry(
                support=support,
                generators=tuple(k for k, g in enumerate(sr.generators) if g & ~support == 0),
                complex=lam,
                homology=lambda_homology(support, sr),
                dual_in_usr=(full & ~support) in usr,
            )
        log.info(f"support table: |SR|={len(sr.generators)} |U_SR|={len(usr)} dual-filtered={len(table.dual_filtered())}")
        return table

    def __contains__(self, support: int) -> bool:
        return support in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def supports(self) -> List[int]:
        return list(self.entries)

    def dual_filtered(self) -> List[int]:
        return [s for s, e in self.entries.items() if e.dual_in_usr]


def graded_dim(support: int, i: int, table: SupportTable, dual_filter: bool = True) -> int:
    """dim H^i_*(O_X)_I for i >= 1, read off the support table.

    With ``dual_filter`` off the complement test is skipped, which is the
    original unfiltered sum; both must give the same numbers.
    """
    if i < 1:
        raise ValueError("graded_dim is defined for i >= 1")
    entry = table.entries.get(support)
    if entry is None:
        return 0
    if dual_filter and i != table.dim and not entry.dual_in_usr:
        return 0
    return entry.homology[support.bit_count() - i - 2]


@dataclass(frozen=True)
class Contribution:
    support: int
    degree: int
    multiplicity: int
    homology_dim: int


@dataclass(frozen=True)
class CohomologyVector:
    dims: Tuple[int, ...]
    divisor: Tuple[int, ...]
    divisor_class: ClassElement
    contributions: Tuple[Contribution, ...] = ()

    def __getitem__(self, i: int) -> int:
        return self.dims[i]

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * h for i, h in enumerate(self.dims))


def multiplicity(
    polytopes: SignPatternPolytopes,
    group: ClassGroup,
    support: int,
    divisor: Sequence[int],
) -> int:
    """#{p : Neg(p) = I, [p] = [L]}, anchored at a preimage of the class of L."""
    anchor = group.particular_preimage(group.divisor_class(divisor))
    return polytopes.count(support, anchor)


class CohomologyEngine:
    """Everything about a fan that does not depend on the line bundle.

    The SR set, U_SR, each Λ_I with its homology and the Fourier–Motzkin
    projections are built once; ``cohomology`` then only counts lattice points.
    An explicit ``sr`` replaces the computed generators (used to check that
    verification catches a wrong SR set).
    """

    def __init__(
        self,
        fan: Fan,
        usr_cap: int = DEFAULT_USR_CAP,
        dual_filter: bool = True,
        sr: Optional[SRSet] = None,
    ) -> None:
        self.fan = fan
        self.dim = fan.dim
        self.complex = fan_complex(fan)
        self.sr = sr if sr is not None else stanley_reisner(self.complex)
        self.table = SupportTable.build(self.sr, fan.dim, usr_cap)
        self.group = class_group(fan)
        self.polytopes = SignPatternPolytopes(fan.rays)
        self.dual_filter = dual_filter

    def graded_dim(self, support: int, i: int) -> int:
        return graded_dim(support, i, self.table, self.dual_filter)

    def multiplicity(self, support: int, divisor: Sequence[int]) -> int:
        return multiplicity(self.polytopes, self.group, support, divisor)

    def cohomology(self, divisor: Sequence[int]) -> CohomologyVector:
        if len(divisor) != self.fan.n_rays:
            raise ValueError(f"divisor has {len(divisor)} coefficients, fan has {self.fan.n_rays} rays")
        divisor = tuple(int(a) for a in divisor)
        cls = self.group.divisor_class(divisor)
        anchor = self.group.particular_preimage(cls)
        counts: Dict[int, int] = {}

        def count(support: int) -> int:
            if support not in counts:
                counts[support] = self.polytopes.count(support, anchor)
            return counts[support]

        h = [0] * (self.dim + 1)
        contributions: List[Contribution] = []
        h[0] = count(0)
        if h[0]:
            contributions.append(Contribution(0, 0, h[0], 1))
        for i in range(1, self.dim + 1):
            for support in self.table.supports():
                dim_i = self.graded_dim(support, i)
                if dim_i == 0:
                    continue
                mult = count(support)
                if mult:
                    h[i] += mult * dim_i
                    contributions.append(Contribution(support, i, mult, dim_i))
        log.debug(f"{self.fan.name}: h{list(divisor)} = {h}")
        return CohomologyVector(tuple(h), divisor, cls, tuple(contributions))

    def cohomology_many(self, divisors: Iterable[Sequence[int]]) -> List[CohomologyVector]:
        return [self.cohomology(d) for d in divisors]


def cohomology(fan: Fan, divisor: Sequence[int], **kwargs) -> CohomologyVector:
    return CohomologyEngine(fan, **kwargs).cohomology(divisor)
