import json

import pytest

from toric_cohom.core.fan import (
    Fan,
    FanFormatError,
    canonical_divisor,
    fan_complex,
    load_fan,
    parse_fan,
    serialize_fan,
    serre_dual,
    validate,
)
from toric_cohom.core.simplicial import SimplicialComplex, members

P2_DOC = {"dim": 2, "rays": [[1, 0], [0, 1], [-1, -1]], "max_cones": [[0, 1], [1, 2], [0, 2]]}


def doc(**changes) -> str:
    d = dict(P2_DOC)
    d.update(changes)
    return json.dumps(d)


def test_parse_p2() -> None:
    fan = parse_fan(doc(), name="p2")
    assert fan.dim == 2
    assert fan.n_rays == 3
    assert fan.max_cones == ((0, 1), (1, 2), (0, 2))
    assert parse_fan(serialize_fan(fan)) == fan


@pytest.mark.parametrize(
    "text, message",
    [
        (doc(rays=[[2, 0], [0, 1], [-1, -1]]), "non-primitive ray"),
        (doc(max_cones=[[0, 3]]), "out of range"),
        (doc(rays=[[1, 0], [0, 1], [0, 0]]), "zero vector"),
        (doc(rays=[[1, 0], [0, 1], [-1, -1, 0]]), "wrong length"),
        (doc(rays=[[1, 0], [1, 0], [-1, -1]]), "duplicate rays"),
        (doc(max_cones=[[0, 0]]), "repeated ray index"),
        ("{not json", "malformed"),
        (json.dumps({"dim": 2, "rays": []}), "malformed"),
        (json.dumps([1, 2]), "malformed"),
    ],
)
def test_parse_errors(text: str, message: str) -> None:
    with pytest.raises(FanFormatError, match=message):
        parse_fan(text)


def test_load_missing_file(tmp_path) -> None:
    with pytest.raises(FileNotFoundError):
        load_fan(tmp_path / "nope.json")


def test_validate_p2() -> None:
    diag = validate(parse_fan(doc()))
    assert diag.ok
    assert diag.messages == []


def test_validate_incomplete_fan() -> None:
    diag = validate(parse_fan(doc(max_cones=[[0, 1]])))
    assert diag.is_simplicial
    assert diag.spans
    assert not diag.ridge_counts_ok
    assert not diag.ok


def test_validate_rays_not_spanning() -> None:
    diag = validate(Fan(dim=2, rays=((1, 0), (-1, 0)), max_cones=((0,), (1,))))
    assert not diag.spans
    assert not diag.ok


def test_validate_non_simplicial_cone() -> None:
    fan = Fan(dim=2, rays=((1, 0), (0, 1), (-1, -1)), max_cones=((0, 1, 2),))
    assert not validate(fan).is_simplicial


def test_shipped_fans_validate(load, fan_name) -> None:
    diag = validate(load(fan_name))
    assert diag.ok, diag.messages


def test_fan_complex_examples(load) -> None:
    assert sorted(members(f) for f in fan_complex(load("p2")).maximal_faces) == [[0, 1], [0, 2], [1, 2]]
    square = fan_complex(load("p1xp1"))
    assert sorted(members(f) for f in square.maximal_faces) == [[0, 1], [0, 3], [1, 2], [2, 3]]
    single = fan_complex(Fan(dim=2, rays=((1, 0), (0, 1)), max_cones=((0, 1),)))
    assert single == SimplicialComplex.simplex(2)


def test_canonical_and_serre_dual(load) -> None:
    fan = load("p2")
    assert canonical_divisor(fan) == (-1, -1, -1)
    assert serre_dual(fan, (2, 0, 0)) == (-3, -1, -1)
    with pytest.raises(ValueError):
        serre_dual(fan, (1, 2))
