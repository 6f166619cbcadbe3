import random

import pytest

from path_coloring.approx import RepairPlan, morph_fill, morph_steps, solve_approx
from path_coloring.errors import Infeasible, MissingDemands, NotSinglePath, TooFewColors
from path_coloring.generators import random_dped
from path_coloring.models import PathTopology
from path_coloring.verify import additive_error, find_distance_conflict
from tests.builders import dped


def valid_extension(instance, coloring) -> bool:
    if find_distance_conflict(instance.topology, coloring.assignment, instance.d):
        return False
    return all(coloring.color_of(v) == color for v, color in instance.precoloring.items())


class TestRepairPlan:
    def test_sizes(self):
        plan = RepairPlan(n=100, d=1, anchors=(10,))
        assert plan.b == 8
        assert plan.block_size == 2
        assert plan.interior_blocks == 4
        assert plan.close_gap == 2 * 8 + 4 + 2

    def test_clusters(self):
        plan = RepairPlan(n=200, d=1, anchors=(10, 30, 60))
        assert plan.clusters() == [(10, 30), (60,)]

    def test_core_widened_and_clipped(self):
        plan = RepairPlan(n=50, d=2, anchors=(1, 20))
        assert plan.core((20,)) == (18, 22)
        assert plan.core((1,)) == (1, 3)
        assert plan.core((10, 30)) == (10, 30)


class TestMorph:
    @pytest.mark.parametrize(
        "source, target",
        [((3, 1), (1, 2)), ((1, 2, 3), (3, 2, 1)), ((1, 2, 3), (4, 5, 1)), ((2, 1), (2, 1))],
    )
    def test_steps_stay_valid(self, source, target):
        steps = morph_steps(source, target, 5)
        assert len(steps) <= 2 * len(source)
        assert not steps or steps[-1] == tuple(target)
        colors = [*source, *(c for block in steps for c in block)]
        d = len(source) - 1
        assert find_distance_conflict(PathTopology(path_lengths=(len(colors),)), colors, d) is None

    def test_fill_joins_source_and_target(self):
        source, target = (1, 2, 3), (3, 1, 4)
        fill = morph_fill(source, target, 19, 4)
        assert len(fill) == 19
        colors = [*source, *fill, *target]
        assert find_distance_conflict(PathTopology(path_lengths=(len(colors),)), colors, 2) is None
        assert fill[-3:] == list(target)

    def test_fill_too_short(self):
        with pytest.raises(Infeasible):
            morph_fill((1, 2), (2, 3), 2, 3)


class TestSolveApprox:
    def test_no_precoloring_is_greedy(self):
        coloring, report = solve_approx(dped([6], 3, 1, (2, 2, 2)))
        assert coloring.assignment == (1, 2, 3, 1, 2, 3)
        assert report.achieved_error == 0
        assert report.bound == 0

    def test_single_anchor_in_long_path(self):
        instance = dped([200], 3, 1, (67, 66, 66), {100: 2})
        coloring, report = solve_approx(instance)
        assert valid_extension(instance, coloring)
        assert report.bound == 17
        assert report.achieved_error <= report.bound
        assert report.achieved_error == additive_error(instance, coloring)
        assert sum(report.deviations) == 0

    def test_too_few_colors(self):
        with pytest.raises(TooFewColors):
            solve_approx(dped([4], 2, 1, (2, 2)))

    def test_preconditions(self):
        with pytest.raises(NotSinglePath):
            solve_approx(dped([2, 2], 3, 1, (2, 1, 1)))
        with pytest.raises(MissingDemands):
            solve_approx(dped([3], 3, 1, None))

    def test_conflicting_precoloring(self):
        with pytest.raises(Infeasible):
            solve_approx(dped([3], 3, 1, (1, 0, 0), {1: 2, 2: 2}))

    def test_anchor_at_path_end(self):
        instance = dped([120], 4, 2, (30, 30, 30, 28), {1: 4, 120: 4})
        coloring, report = solve_approx(instance)
        assert valid_extension(instance, coloring)
        assert report.achieved_error <= report.bound

    def test_bound_void_when_greedy_misses_demands(self):
        # consistent counts, but color 1 cannot take three of three adjacent vertices
        instance = dped([3], 3, 1, (3, 0, 0))
        coloring, report = solve_approx(instance)
        assert valid_extension(instance, coloring)
        assert not report.bound_applies
        assert report.achieved_error == 2 > report.bound


def _random_case(rng: random.Random, max_n: int):
    d = rng.randint(0, 3)
    c = rng.randint(d + 2, d + 4)
    n = rng.randint(1, max_n)
    p = rng.randint(0, min(4, n))
    return random_dped(rng.randrange(10**6), n, c, d, p)


def _check_seeded(count: int, max_n: int, seed: int) -> None:
    rng = random.Random(seed)
    for _ in range(count):
        instance = _random_case(rng, max_n)
        coloring, report = solve_approx(instance)
        assert valid_extension(instance, coloring), instance
        assert report.bound_applies, instance
        assert report.achieved_error <= report.bound, instance
        if not instance.precoloring:
            assert report.achieved_error == 0


def test_seeded_instances_meet_bound():
    _check_seeded(60, 150, seed=3)


@pytest.mark.slow
def test_many_seeded_instances_meet_bound():
    _check_seeded(500, 500, seed=11)
