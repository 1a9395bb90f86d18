import pytest

from toric_cohom.core.algorithm import CohomologyEngine, SRSet
from toric_cohom.core.box import Box, default_box, parse_box
from toric_cohom.core.fan import Fan, fan_complex, validate
from toric_cohom.core.oracle import BoxTooSmallError, Oracle, oracle_cohomology, oracle_graded_dim, verify
from toric_cohom.core.simplicial import full_mask, mask_of


@pytest.fixture(scope="module")
def oracles():
    cache = {}

    def _oracle(fan) -> Oracle:
        if fan.name not in cache:
            cache[fan.name] = Oracle(fan)
        return cache[fan.name]

    return _oracle


def test_oracle_graded_examples(load) -> None:
    P2 = fan_complex(load("p2"))
    assert oracle_graded_dim(0b111, 2, P2, 2) == 1
    assert oracle_graded_dim(0, 1, P2, 2) == 0
    square = fan_complex(load("p1xp1"))
    assert oracle_graded_dim(mask_of([0, 2]), 1, square, 2) == 1
    with pytest.raises(ValueError):
        oracle_graded_dim(0b111, 0, P2, 2)


def test_oracle_cohomology_examples(load) -> None:
    fan = load("p2")
    box = parse_box("-4:3")
    assert oracle_cohomology(fan, (-3, 0, 0), box) == (0, 0, 1)
    assert oracle_cohomology(fan, (0, 0, 0), box) == (1, 0, 0)


def test_box_too_small(load, oracles) -> None:
    oracle = oracles(load("p2"))
    with pytest.raises(BoxTooSmallError):
        oracle.cohomology((3, 0, 0), parse_box("0:2"))


def test_scan_masks_follow_signs(load, oracles) -> None:
    oracle = oracles(load("p1xp1"))
    scan = oracle.scan(parse_box("-2:1"))
    for row in (0, 17, 100, len(scan.points) - 1):
        p = scan.point(row)
        assert int(scan.masks[row]) == mask_of(k for k, x in enumerate(p) if x < 0)


def test_graded_dim_ignores_magnitudes(load, oracles) -> None:
    # (-1,0,-1,0) and (-5,3,-2,7) share Neg = {0,2}
    oracle = oracles(load("p1xp1"))
    scan = oracle.scan(parse_box("-5:7"))
    a = next(r for r in range(len(scan.points)) if scan.point(r) == (-1, 0, -1, 0))
    b = next(r for r in range(len(scan.points)) if scan.point(r) == (-5, 3, -2, 7))
    assert scan.masks[a] == scan.masks[b]
    assert oracle.graded_dim(int(scan.masks[a]), 1) == oracle.graded_dim(int(scan.masks[b]), 1) == 1


def test_empty_support_never_contributes(load, oracles, fan_name) -> None:
    oracle = oracles(load(fan_name))
    for i in range(1, oracle.dim + 1):
        assert oracle.graded_dim(0, i) == 0


def test_vanishing_outside_usr(load, engine, oracles, fan_name) -> None:
    fan = load(fan_name)
    eng, oracle = engine(fan_name), oracles(fan)
    for support in range(1 << fan.n_rays):
        if support in eng.table:
            continue
        for i in range(1, fan.dim + 1):
            assert oracle.graded_dim(support, i) == 0, (support, i)


def test_dual_also_in_usr_for_middle_degrees(load, engine, oracles, fan_name) -> None:
    fan = load(fan_name)
    eng, oracle = engine(fan_name), oracles(fan)
    full = full_mask(fan.n_rays)
    for support in range(1, 1 << fan.n_rays):
        for i in range(1, fan.dim):
            if oracle.graded_dim(support, i):
                assert support in eng.table and (full & ~support) in eng.table


def test_graded_dims_agree_everywhere(load, engine, oracles, fan_name) -> None:
    fan = load(fan_name)
    eng, oracle = engine(fan_name), oracles(fan)
    for support in range(1 << fan.n_rays):
        for i in range(1, fan.dim + 1):
            assert eng.graded_dim(support, i) == oracle.graded_dim(support, i), (support, i)


def test_verify_acceptance_box(load, engine, oracles, fan_name) -> None:
    fan = load(fan_name)
    report = verify(fan, parse_box("-4:3"), engine=engine(fan_name), oracle=oracles(fan))
    assert report.ok, report.mismatches[:5]
    assert report.classes_compared > 0
    assert report.matches > 0


def test_verify_euler_characteristic(load, engine, oracles) -> None:
    fan = load("hirzebruch_f2")
    eng, oracle = engine("hirzebruch_f2"), oracles(fan)
    box = default_box(fan.n_rays, fan.dim)
    for a in [(0, 0, 0, 0), (-2, 1, 0, 0), (1, -2, 0, 0), (-1, -1, -1, -1)]:
        expected = oracle.cohomology(a, box)
        got = eng.cohomology(a)
        assert got.dims == expected
        assert got.euler_characteristic() == sum((-1) ** i * h for i, h in enumerate(expected))


def test_corrupted_sr_is_caught(load, oracles) -> None:
    fan = load("p2")
    bad = CohomologyEngine(fan, sr=SRSet(3, (0b011,)))
    report = verify(fan, parse_box("-4:3"), engine=bad, oracle=oracles(fan))
    assert not report.ok
    stages = {m.stage for m in report.mismatches}
    assert stages == {"graded", "cohomology"}


def test_verify_default_engine(load) -> None:
    fan = load("p2")
    report = verify(fan, Box(((-2, 1),)))
    assert report.ok


def test_scan_size_limit(load) -> None:
    oracle = Oracle(load("p1xp1"), max_points=100)
    with pytest.raises(ValueError):
        oracle.scan(parse_box("-4:3"))


def test_overlapping_cones_fail_verification_without_raising() -> None:
    # the cones {0,2} and {0,1} overlap, yet every ridge lies on two cones
    fan = Fan(dim=2, rays=((1, 0), (0, 1), (-1, 1)), max_cones=((0, 1), (1, 2), (0, 2)), name="overlap")
    assert validate(fan).ok
    report = verify(fan, parse_box("-4:3"))
    assert not report.ok
    assert report.unbounded
