import math

import numpy as np
import pytest

from pytelebench.utils.exceptions import DomainError
from pytelebench.utils.grids import parse_grid, parse_value


@pytest.mark.parametrize(
    "text, expected",
    [
        ("0.25", 0.25),
        ("pi", math.pi),
        ("pi/2", math.pi / 2),
        ("3*pi/16", 3 * math.pi / 16),
        ("-pi/4", -math.pi / 4),
        (" 1e-3 ", 1e-3),
    ],
)
def test_parse_value(text: str, expected: float) -> None:
    assert parse_value(text) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize(
    "text", ["", "tau", "2**3", "__import__('os')", "1/0", "1e400"]
)
def test_parse_value_rejects(text: str) -> None:
    with pytest.raises(DomainError):
        parse_value(text)


def test_parse_grid_range_is_inclusive() -> None:
    grid = parse_grid("0:pi/2:9")
    assert len(grid) == 9
    assert grid[0] == 0.0
    assert grid[-1] == pytest.approx(math.pi / 2)
    assert np.all(np.diff(grid) > 0)


def test_parse_grid_list_and_single_value() -> None:
    np.testing.assert_allclose(parse_grid("0.1,0.5,1"), [0.1, 0.5, 1.0])
    np.testing.assert_allclose(parse_grid("2"), [2.0])
    np.testing.assert_allclose(parse_grid("0.3:0.9:1"), [0.3])


@pytest.mark.parametrize("text", ["0:1", "0:1:2:3", "0:1:x", "0:1:0", "0:1:-4"])
def test_parse_grid_rejects(text: str) -> None:
    with pytest.raises(DomainError):
        parse_grid(text)
