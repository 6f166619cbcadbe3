import pytest

from path_coloring.models import DPEDInstance
from tests.builders import dped


@pytest.fixture
def forced_alternation() -> DPEDInstance:
    """Middle vertex precolored 1, both ends must take color 2."""
    return dped([3], 2, 1, (0, 2), {2: 1})


@pytest.fixture
def three_colors_window_two() -> DPEDInstance:
    return dped([5], 3, 2, (2, 2, 1))


@pytest.fixture
def suffix_precolored() -> DPEDInstance:
    return dped([4], 2, 1, (1, 2), {4: 1})


@pytest.fixture
def two_adjacent_one_color() -> DPEDInstance:
    return dped([2], 1, 1, (2,))
