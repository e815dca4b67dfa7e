from __future__ import annotations

import json

import pytest

from supersnake.polygon import oriented


@pytest.fixture
def pentagon():
    # vertices 0..4 counterclockwise, arcs (1,4),(1,3), longest arc 0 -> 2
    return oriented(5, [(1, 4), (1, 3)], 0, 2)


@pytest.fixture
def octagon():
    # the classical-expansion octagon; longest arc 2 -> 7, example arc (2,6)
    return oriented(8, [(1, 3), (1, 4), (1, 5), (0, 5), (0, 6)], 2, 7)


@pytest.fixture
def fan_octagon():
    # the fan-decomposition octagon; longest arc 1 -> 4
    return oriented(8, [(0, 2), (2, 7), (3, 7), (3, 6), (3, 5)], 1, 4)


@pytest.fixture
def square():
    return oriented(4, [(1, 3)], 0, 2)


@pytest.fixture
def pentagon_file(tmp_path):
    path = tmp_path / "pentagon.json"
    path.write_text(json.dumps({
        "vertices": 5,
        "arcs": [[1, 4], [1, 3]],
        "gamma": [0, 2],
    }))
    return str(path)
