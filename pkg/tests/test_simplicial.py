from functools import reduce
from operator import and_

import numpy as np
import pytest

from toric_cohom.core import simplicial
from toric_cohom.core.simplicial import (
    ComplexSizeError,
    HomologyDims,
    SimplicialComplex,
    alexander_dual,
    boundary_matrix,
    full_mask,
    link,
    mask_of,
    members,
    minimal_nonfaces,
    nerve,
    reduced_homology_dims,
    restriction,
)

TRIANGLE = SimplicialComplex.from_faces(3, [[0, 1], [1, 2], [0, 2]])
SQUARE = SimplicialComplex.from_faces(4, [[0, 1], [1, 2], [2, 3], [3, 0]])


def faces(c: SimplicialComplex):
    return sorted(members(f) for f in c.maximal_faces)


def test_restriction_examples() -> None:
    assert faces(restriction(TRIANGLE, mask_of([0, 1]))) == [[0, 1]]
    assert restriction(SQUARE, full_mask(4)) == SQUARE
    full = SimplicialComplex.simplex(3)
    assert restriction(full, 0).maximal_faces == (0,)


def test_restriction_of_void_stays_void() -> None:
    assert restriction(SimplicialComplex.void(3), 0b011).is_void


def test_link_examples() -> None:
    assert faces(link(SQUARE, mask_of([1]))) == [[0], [2]]
    assert link(SQUARE, 0) == SQUARE
    lk = link(SimplicialComplex.simplex(3), mask_of([0]))
    assert faces(lk) == [[1, 2]]
    assert lk.ground == mask_of([1, 2])


def test_link_of_nonface_raises() -> None:
    with pytest.raises(ValueError):
        link(TRIANGLE, full_mask(3))


def test_minimal_nonfaces() -> None:
    assert minimal_nonfaces(TRIANGLE) == (0b111,)
    assert minimal_nonfaces(SQUARE) == (mask_of([0, 2]), mask_of([1, 3]))
    assert minimal_nonfaces(SimplicialComplex.simplex(3)) == ()
    assert minimal_nonfaces(SimplicialComplex.void(2)) == (0,)


def test_minimal_nonfaces_include_ghost_vertices() -> None:
    c = SimplicialComplex(0b111, (0b011,))
    assert minimal_nonfaces(c) == (0b100,)


def test_alexander_dual_examples() -> None:
    assert alexander_dual(TRIANGLE).maximal_faces == (0,)
    assert alexander_dual(SimplicialComplex.simplex(3)).is_void
    assert faces(alexander_dual(SimplicialComplex.irrelevant(2))) == [[0], [1]]


def test_nerve_examples() -> None:
    tri = nerve([mask_of([0, 1]), mask_of([1, 2]), mask_of([0, 2])])
    assert tri == TRIANGLE
    assert nerve([0b11]) == SimplicialComplex.simplex(1)
    assert faces(nerve([0b01, 0b10])) == [[0], [1]]
    with pytest.raises(ValueError):
        nerve([])


def test_boundary_matrices_compose_to_zero() -> None:
    full = SimplicialComplex.simplex(4)
    for k in range(1, 3):
        prod = boundary_matrix(full, k - 1).dot(boundary_matrix(full, k))
        assert not prod.any()


@pytest.mark.parametrize(
    "complex_, expected",
    [
        (TRIANGLE, {1: 1}),
        (SQUARE, {1: 1}),
        (SimplicialComplex.simplex(4), {}),
        (SimplicialComplex.from_faces(2, [[0], [1]]), {0: 1}),
        (SimplicialComplex.irrelevant(3), {-1: 1}),
        (SimplicialComplex.void(3), {}),
    ],
)
def test_reduced_homology_examples(complex_, expected) -> None:
    assert reduced_homology_dims(complex_).nonzero() == expected


def test_homology_of_sphere_boundaries() -> None:
    for n in range(2, 6):
        sphere = SimplicialComplex(full_mask(n), tuple(full_mask(n) & ~(1 << v) for v in range(n)))
        assert reduced_homology_dims(sphere).nonzero() == {n - 2: 1}


def test_homology_dims_indexing() -> None:
    h = HomologyDims((0, 2, 0, 0))
    assert h.betti == (0, 2)
    assert h[0] == 2
    assert h[-1] == 0
    assert h[7] == 0
    assert h.euler_characteristic() == 2


def random_complex(rng: np.random.Generator) -> SimplicialComplex:
    n = int(rng.integers(1, 8))
    k = int(rng.integers(0, 6))
    chosen = [int(rng.integers(0, 1 << n)) for _ in range(k)]
    return SimplicialComplex(full_mask(n), tuple(chosen) + (0,))


@pytest.fixture(scope="module")
def random_complexes():
    rng = np.random.default_rng(20240613)
    return [random_complex(rng) for _ in range(200)]


def test_alexander_duality_betti(random_complexes) -> None:
    for c in random_complexes:
        n = c.n_vertices
        h = reduced_homology_dims(c)
        h_dual = reduced_homology_dims(alexander_dual(c))
        for j in range(-1, n):
            assert h_dual[j] == h[n - 3 - j], (c, j)


def test_alexander_dual_is_an_involution(random_complexes) -> None:
    for c in random_complexes:
        assert alexander_dual(alexander_dual(c)) == c


def test_alexander_duality_link_form(random_complexes) -> None:
    rng = np.random.default_rng(7)
    for c in random_complexes:
        dual = alexander_dual(c)
        if dual.is_void:
            continue
        candidates = sorted(dual.faces)
        sigma = candidates[int(rng.integers(0, len(candidates)))]
        rest = c.ground & ~sigma
        h_link = reduced_homology_dims(link(dual, sigma))
        h_res = reduced_homology_dims(restriction(c, rest))
        assert link(dual, sigma) == alexander_dual(restriction(c, rest).with_ground(rest))
        for j in range(-1, rest.bit_count()):
            assert h_link[j] == h_res[rest.bit_count() - 3 - j], (c, sigma, j)


def test_link_is_acyclic_when_maximal_cofaces_share_more_than_the_face(random_complexes) -> None:
    checked = 0
    for c in random_complexes:
        for sigma in c.faces:
            cofaces = [m for m in c.maximal_faces if sigma & ~m == 0]
            if reduce(and_, cofaces) == sigma:
                continue
            assert reduced_homology_dims(link(c, sigma)).nonzero() == {}, (c, sigma)
            checked += 1
    assert checked > 0


def test_face_cap(monkeypatch) -> None:
    monkeypatch.setattr(simplicial, "MAX_FACES", 10)
    with pytest.raises(ComplexSizeError):
        SimplicialComplex.simplex(6).faces
