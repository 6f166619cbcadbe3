import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from path_coloring.errors import MissingDemands, NotEndPrecolored, NotSinglePath
from path_coloring.generators import iter_end_precolored_instances, random_dped
from path_coloring.greedy import DemandHeap, EndPrecoloredView, solve_greedy
from path_coloring.oracle import oracle_dped
from path_coloring.verify import verify_dped_solution
from tests.builders import dped


class TestEndPrecoloredView:
    def test_prefix_and_suffix(self):
        view = EndPrecoloredView.of(dped([6], 3, 1, (1, 1, 0), {1: 1, 5: 3, 6: 1}))
        assert (view.s, view.t) == (1, 5)
        assert view.pos == (6, None, 5)

    def test_no_suffix(self):
        view = EndPrecoloredView.of(dped([3], 2, 1, (1, 1)))
        assert (view.s, view.t) == (0, 4)
        assert view.pos == (None, None)

    def test_interior_precolor_rejected(self):
        with pytest.raises(NotEndPrecolored):
            EndPrecoloredView.of(dped([5], 2, 1, (2, 2), {3: 1}))


class TestDemandHeap:
    def test_order(self):
        heap = DemandHeap([2, 3, 3], pos=[None, 7, 4])
        assert heap.best(set()) == 3
        assert heap.best({3}) == 2

    def test_skips_exhausted_and_blocked(self):
        heap = DemandHeap([1, 0])
        heap.take(1)
        assert heap.best(set()) is None
        assert heap.fallback({2}) == 1

    def test_give_back(self):
        heap = DemandHeap([1, 1])
        heap.take(1)
        heap.give_back(1)
        assert heap.remaining == [1, 1]
        assert heap.best(set()) == 1


class TestSolveGreedy:
    def test_free_path(self, three_colors_window_two):
        assert solve_greedy(three_colors_window_two).assignment == (1, 2, 3, 1, 2)

    def test_suffix_blocks_color(self, suffix_precolored):
        assert solve_greedy(suffix_precolored).assignment == (2, 1, 2, 1)

    def test_no_feasible_color(self, two_adjacent_one_color):
        assert solve_greedy(two_adjacent_one_color) is None

    def test_fully_precolored(self):
        assert solve_greedy(dped([2], 2, 1, (0, 0), {1: 1, 2: 2})).assignment == (1, 2)

    def test_conflicting_ends(self):
        assert solve_greedy(dped([2], 2, 1, (0, 0), {1: 1, 2: 1})) is None

    def test_leftover_demand(self):
        assert solve_greedy(dped([2], 2, 1, (2, 1))) is None

    def test_preconditions(self):
        with pytest.raises(NotSinglePath):
            solve_greedy(dped([1, 1], 1, 1, (2,)))
        with pytest.raises(MissingDemands):
            solve_greedy(dped([2], 2, 1, None))
        with pytest.raises(NotEndPrecolored):
            solve_greedy(dped([3], 2, 1, (1, 1), {2: 1}))

    def test_unused_color_changes_nothing(self, suffix_precolored):
        widened = suffix_precolored.model_copy(update={"num_colors": 3, "demands": (1, 2, 0)})
        assert solve_greedy(widened) == solve_greedy(suffix_precolored)


def _agrees_with_oracle(instance) -> None:
    got = solve_greedy(instance)
    expected = oracle_dped(instance)
    assert (got is None) == (expected is None), instance
    if got is not None:
        assert verify_dped_solution(instance, got)


def test_matches_oracle_on_small_family():
    for instance in iter_end_precolored_instances(max_n=5, max_c=3, max_d=2, max_side=1):
        _agrees_with_oracle(instance)


@pytest.mark.slow
def test_matches_oracle_on_full_family():
    for instance in iter_end_precolored_instances(max_n=8, max_c=3, max_d=3, max_side=2):
        _agrees_with_oracle(instance)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 12), st.integers(0, 2), st.integers(1, 2), st.integers(0, 4))
def test_fresh_zero_demand_color_is_never_used(seed, n, d, extra, p):
    instance = random_dped(seed, n, d + extra, d, p, end=True)
    widened = instance.model_copy(update={"num_colors": instance.num_colors + 1, "demands": (*instance.demands, 0)})
    assert solve_greedy(widened) == solve_greedy(instance)
