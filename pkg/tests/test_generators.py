from math import comb

import pytest

from path_coloring.generators import (
    compositions,
    iter_end_precolored_instances,
    iter_sparse_precolored_instances,
    random_dped,
    random_lcd,
    random_mss,
    random_non_alternating_lcd,
    random_pce,
)
from path_coloring.greedy import EndPrecoloredView
from path_coloring.oracle import oracle_dped, oracle_lcd, oracle_mss
from path_coloring.verify import is_non_alternating


def test_equal_seeds_equal_instances():
    assert random_dped(9, 30, 4, 2, p=3) == random_dped(9, 30, 4, 2, p=3)
    assert random_lcd(9, 10, 3) == random_lcd(9, 10, 3)
    assert random_pce(9, 4, 3, p=2) == random_pce(9, 4, 3, p=2)


@pytest.mark.parametrize("seed", range(20))
def test_planted_dped_is_feasible(seed):
    instance = random_dped(seed, 8, 3, seed % 3, p=seed % 4)
    assert instance.is_demand_consistent()
    assert oracle_dped(instance) is not None


@pytest.mark.parametrize("seed", range(10))
def test_end_precolored_dped(seed):
    instance = random_dped(seed, 12, 4, 1, p=4, end=True)
    view = EndPrecoloredView.of(instance)
    assert view.s + (instance.n + 1 - view.t) == 4


def test_too_few_colors_for_planting():
    with pytest.raises(ValueError):
        random_dped(1, 5, 2, 2)


@pytest.mark.parametrize("seed", range(10))
def test_planted_lcd_is_feasible(seed):
    assert oracle_lcd(random_lcd(seed, 7, 3)) is not None


@pytest.mark.parametrize("seed", range(10))
@pytest.mark.parametrize("n", [2, 3, 4, 8])
def test_non_alternating_lcd(seed, n):
    instance = random_non_alternating_lcd(seed, n, 3)
    assert is_non_alternating(instance)
    assert instance.lists[0] == instance.lists[1]
    assert instance.lists[-1] == instance.lists[-2]
    assert oracle_lcd(instance) is not None


@pytest.mark.parametrize("seed", range(10))
def test_planted_mss(seed):
    assert oracle_mss(random_mss(seed, 2, 5)) is not None


@pytest.mark.parametrize("seed", range(10))
def test_pce_representation(seed):
    assert random_pce(seed, 5, 3).representation_error() is None


def test_compositions():
    parts = list(compositions(4, 3))
    assert len(parts) == comb(6, 2)
    assert all(sum(p) == 4 for p in parts)
    assert list(compositions(0, 0)) == [()]
    assert list(compositions(1, 0)) == []


def test_families_are_consistent():
    for instance in iter_end_precolored_instances(4, 2, 1, 1):
        assert instance.is_demand_consistent()
        EndPrecoloredView.of(instance)
    sparse = list(iter_sparse_precolored_instances(3, 2, 1, 1))
    assert all(len(i.precoloring) <= 1 and i.is_demand_consistent() for i in sparse)
