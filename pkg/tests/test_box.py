import numpy as np
import pytest

from toric_cohom.core.box import Box, default_box, parse_box


def test_parse_box_valid() -> None:
    box = parse_box("-3:2,0:1")
    assert box.ranges == ((-3, 2), (0, 1))
    assert box.size == 12
    assert box.as_text() == "-3:2,0:1"


@pytest.mark.parametrize("bad", ["", "1", "1:2:3", "a:b", "1:2,", "-3:2;0:1"])
def test_parse_box_invalid(bad: str) -> None:
    with pytest.raises(ValueError):
        parse_box(bad)


def test_empty_range_is_allowed() -> None:
    box = parse_box("2:1")
    assert box.size == 0
    assert list(box.points()) == []
    assert box.grid().shape == (0, 1)


def test_broadcast_and_padded() -> None:
    assert parse_box("-1:1").broadcast(3).ranges == ((-1, 1),) * 3
    assert parse_box("-1:1,0:2").padded(4).ranges == ((-1, 1), (0, 2), (0, 0), (0, 0))
    with pytest.raises(ValueError):
        parse_box("0:1,0:1").broadcast(3)
    with pytest.raises(ValueError):
        parse_box("0:1,0:1,0:1").padded(2)


def test_grid_matches_points() -> None:
    box = Box(((-1, 1), (2, 3), (0, 0)))
    assert [tuple(int(x) for x in row) for row in box.grid()] == list(box.points())
    assert box.grid().dtype == np.int64
    assert box.contains((0, 3, 0))
    assert not box.contains((0, 4, 0))


def test_default_box() -> None:
    assert default_box(3, 2).ranges == ((-4, 3),) * 3
    assert default_box(4, 3, lo_offset=1, hi_offset=0).ranges == ((-4, 3),) * 4
