from itertools import combinations, combinations_with_replacement, permutations, product

import pytest

from path_coloring.config import SolverLimits
from path_coloring.errors import (
    BudgetExceeded,
    DemandsUnsupported,
    InvalidRepresentation,
    MissingDemands,
    NotNonAlternating,
    NotNormalized,
    NotSinglePath,
)
from path_coloring.generators import compositions, random_non_alternating_lcd, random_pce
from path_coloring.models import MssInstance, UnitIntervalPce
from path_coloring.oracle import oracle_dped, oracle_lcd, oracle_mss, oracle_pce
from path_coloring.reductions import (
    compute_edge_forbidden_sets,
    concatenate_paths,
    lift_dpe_to_dped_solution,
    lift_lcd_to_dped_solution,
    main_vertex,
    normalize_lcd,
    reduce_dpe_to_dped,
    reduce_lcd_to_dped,
    reduce_mss_to_lcd,
    reduce_pce_to_dpe,
    representative,
)
from path_coloring.verify import is_non_alternating, verify_dped_solution, verify_lcd_solution
from tests.builders import dped, lcd


class TestConcatenatePaths:
    def test_buffers_between_paths(self):
        single, originals = concatenate_paths(dped([2, 3], 2, 1, (2, 2), {3: 2}))
        assert single.topology.path_lengths == (6,)
        assert originals == [1, 2, 4, 5, 6]
        assert single.precoloring == {3: 3, 4: 2}
        assert single.num_colors == 5
        assert single.demands == (2, 2, 0, 0, 0)

    def test_buffer_colors_cycle(self):
        single, _ = concatenate_paths(dped([1, 1, 1], 1, 2, (3,)))
        assert single.precoloring == {2: 2, 3: 3, 5: 4, 6: 5}

    def test_solutions_restrict(self):
        instance = dped([2, 2], 2, 1, (2, 2))
        single, originals = concatenate_paths(instance)
        assert verify_dped_solution(instance, oracle_dped(single).restrict(originals))


class TestDpeToDped:
    def test_isolated_vertices_and_buffers(self):
        image = reduce_dpe_to_dped(dped([3], 2, 1, None, {1: 1}))
        assert image.n == 3 + 3 + 3 * 1
        assert image.demands[:2] == (2, 3)

    def test_single_color_adds_nothing(self):
        image = reduce_dpe_to_dped(dped([3], 1, 0, None))
        assert image.n == 3
        assert image.demands[:1] == (3,)

    def test_needs_demand_free_input(self):
        with pytest.raises(DemandsUnsupported):
            reduce_dpe_to_dped(dped([2], 2, 1, (1, 1)))


def dpe_family():
    for lengths in [(1,), (2,), (3,), (4,), (1, 1), (2, 1), (2, 2)]:
        n = sum(lengths)
        for c, d in product((1, 2), (0, 1, 2)):
            for p in range(3):
                for vertices in combinations(range(1, n + 1), p):
                    for colors in product(range(1, c + 1), repeat=p):
                        yield dped(lengths, c, d, None, dict(zip(vertices, colors)))


def test_dpe_reduction_preserves_answers():
    for dpe in dpe_family():
        expected = oracle_dped(dpe)
        got = oracle_dped(reduce_dpe_to_dped(dpe))
        assert (got is None) == (expected is None), dpe
        if got is not None:
            assert verify_dped_solution(dpe, lift_dpe_to_dped_solution(dpe, got))


class TestMssToLcd:
    def test_literal_gadgets(self):
        mss = MssInstance(k=1, items=((1,), (2,)), target=(2,))
        image = reduce_mss_to_lcd(mss, end_markers=False)
        assert image.topology.path_lengths == (6, 12)
        assert image.num_colors == 5
        assert image.demands == (2, 9, 3, 3, 1)
        assert sum(image.demands) == image.n

    def test_marked_gadgets(self):
        mss = MssInstance(k=1, items=((1,), (2,)), target=(2,))
        image = reduce_mss_to_lcd(mss)
        assert image.topology.path_lengths == (8, 14)
        assert image.num_colors == 6
        assert image.demands == (2, 11, 3, 3, 1, 2)
        assert image.lists[0] == image.lists[7] == frozenset({2, 6})

    def test_empty(self):
        image = reduce_mss_to_lcd(MssInstance(k=2, target=(0, 0)))
        assert image.n == 0
        assert oracle_lcd(image).assignment == ()

    def test_zero_items_are_dropped(self):
        image = reduce_mss_to_lcd(MssInstance(k=1, items=((0,), (1,)), target=(1,)))
        assert image.topology.path_lengths == (8,)

    def test_target_larger_than_items(self):
        image = reduce_mss_to_lcd(MssInstance(k=1, items=((1,),), target=(2,)))
        assert image.n == 1
        assert oracle_lcd(image) is None

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            reduce_mss_to_lcd(MssInstance(k=1, items=((3,),), target=(1,)), SolverLimits(max_gadget_vertices=10))

    def test_partial_item_breaks_literal_gadgets(self):
        mss = MssInstance(k=1, items=((2,),), target=(1,))
        assert oracle_mss(mss) is None
        assert oracle_lcd(reduce_mss_to_lcd(mss, end_markers=False)) is not None
        assert oracle_lcd(reduce_mss_to_lcd(mss)) is None

    def test_marked_gadgets_use_a_maximally(self):
        image = reduce_mss_to_lcd(MssInstance(k=1, items=((1,), (1,)), target=(1,)))
        solution = oracle_lcd(image)
        assert solution is not None
        a, y = 2, 6
        for lo, hi in image.topology.path_bounds:
            gadget = solution.assignment[lo - 1 : hi]
            assert gadget.count(a) == 3 * ((hi - lo + 1 - 2) // 6) + 1
            assert gadget.count(y) == 1

    @pytest.mark.parametrize("end_markers", [True, False])
    def test_images_are_non_alternating(self, end_markers):
        image = reduce_mss_to_lcd(MssInstance(k=2, items=((1, 1), (2, 0)), target=(1, 1)), end_markers=end_markers)
        assert is_non_alternating(image)
        assert image.demands[2] == 3 * 4 + (2 if end_markers else 0)


def mss_family(k: int, max_items: int):
    vectors = [v for v in product(range(3), repeat=k)]
    for m in range(max_items + 1):
        for items in combinations_with_replacement(vectors, m):
            if sum(map(sum, items)) > 2:
                continue
            for target in product(range(3), repeat=k):
                yield MssInstance(k=k, items=items, target=target)


def _mss_agrees(mss: MssInstance) -> None:
    image = reduce_mss_to_lcd(mss)
    assert (oracle_mss(mss) is None) == (oracle_lcd(image) is None), mss


@pytest.mark.parametrize("k", [1, 2])
def test_mss_reduction_preserves_answers(k):
    for mss in mss_family(k, 2):
        _mss_agrees(mss)


@pytest.mark.slow
@pytest.mark.parametrize("k", [1, 2])
def test_mss_reduction_preserves_answers_three_items(k):
    for mss in mss_family(k, 3):
        _mss_agrees(mss)


def _edge_sets_hold(seeds) -> None:
    for seed in seeds:
        instance = random_non_alternating_lcd(seed, 2 + seed % 9, 2 + seed % 3)
        assignment = compute_edge_forbidden_sets(instance)
        assert assignment.lists(instance.num_colors) == list(instance.lists), seed
        assert not assignment.has_triple(), seed


class TestEdgeForbiddenSets:
    def test_full_lists(self):
        assignment = compute_edge_forbidden_sets(lcd([4], 3, [{1, 2, 3}] * 4))
        assert assignment.forbidden == (frozenset(),) * 3

    def test_plateau(self):
        instance = lcd([6], 2, [{1, 2}, {1, 2}, {2}, {2}, {1, 2}, {1, 2}])
        assignment = compute_edge_forbidden_sets(instance)
        assert assignment.forbidden == (frozenset(), frozenset(), frozenset({1}), frozenset(), frozenset())
        assert assignment.lists(2) == list(instance.lists)
        assert not assignment.has_triple()

    def test_preconditions(self):
        with pytest.raises(NotNormalized):
            compute_edge_forbidden_sets(lcd([3], 2, [{1}, {1, 2}, {1, 2}]))
        with pytest.raises(NotNonAlternating):
            compute_edge_forbidden_sets(lcd([5], 2, [{1}, {1}, {2}, {1}, {1}]))
        with pytest.raises(NotSinglePath):
            compute_edge_forbidden_sets(lcd([2, 2], 1, [{1}] * 4))

    def test_seeded_instances(self):
        _edge_sets_hold(range(300))

    @pytest.mark.slow
    def test_many_seeded_instances(self):
        _edge_sets_hold(range(1000))


class TestLcdToDped:
    def test_normalize(self):
        norm = normalize_lcd(lcd([1, 2], 2, [{1}, {2}, {1, 2}], (1, 2)))
        assert norm.topology.path_lengths == (9,)
        assert norm.lists[0] == norm.lists[1] == frozenset({3, 4})
        assert norm.lists[2] == frozenset({1, 3, 4})
        assert norm.demands == (1, 2, 3, 3)

    def test_normalize_needs_demands(self):
        with pytest.raises(MissingDemands):
            normalize_lcd(lcd([2], 2, [{1}, {2}]))

    def test_image_shape(self):
        image = reduce_lcd_to_dped(lcd([1], 1, [{1}], (1,)))
        # 5 normalized vertices over t = 3 colors
        assert image.d == 7
        assert image.n == 5 * 7 + 1
        assert image.free_vertices() == [main_vertex(k, 7) for k in range(1, 6)]
        assert image.num_colors == 3 + 8

    def test_rejects_alternating(self):
        with pytest.raises(NotNonAlternating):
            reduce_lcd_to_dped(lcd([3], 2, [{1, 2}, {2}, {1, 2}], (1, 2)))


SMALL_LAYOUTS = [(1,), (2,), (3,), (1, 1), (2, 1)]
SEVERAL_PATH_LAYOUTS = [(1, 2), (1, 3), (3, 1), (2, 2), (2, 3), (3, 2), (3, 3), (1, 1, 1)]


def lcd_family(layouts):
    for lengths in layouts:
        n = sum(lengths)
        for c in (1, 2):
            subsets = [frozenset(s) for size in range(1, c + 1) for s in combinations(range(1, c + 1), size)]
            for lists in product(subsets, repeat=n):
                for demands in compositions(n, c):
                    instance = lcd(lengths, c, lists, demands)
                    if is_non_alternating(instance):
                        yield instance


def _lcd_agrees(source) -> None:
    image = reduce_lcd_to_dped(source)
    assert image.d == 2 * (source.num_colors + 2) + 1
    norm_n = source.n + 2 * source.topology.num_paths + 2
    assert image.n == norm_n * image.d + 1
    expected = oracle_lcd(source)
    got = oracle_dped(image)
    assert (got is None) == (expected is None), source
    if got is not None:
        assert verify_lcd_solution(source, lift_lcd_to_dped_solution(source, got))


def test_lcd_reduction_preserves_answers():
    for source in lcd_family(SMALL_LAYOUTS):
        _lcd_agrees(source)


@pytest.mark.slow
def test_lcd_reduction_preserves_answers_on_every_layout():
    for source in lcd_family(SEVERAL_PATH_LAYOUTS):
        _lcd_agrees(source)


class TestPceToDpe:
    def test_image_shape(self):
        image = reduce_pce_to_dpe(UnitIntervalPce(left_endpoints=(0, 1), num_colors=2, precoloring={2: 1}))
        assert image.d == 6
        assert image.n == 25
        assert image.num_colors == 2 + 7
        assert image.demands is None
        assert image.free_vertices() == [representative(0, 2)]
        assert image.precoloring[representative(1, 2)] == 1

    def test_invalid_representation(self):
        with pytest.raises(InvalidRepresentation):
            reduce_pce_to_dpe(UnitIntervalPce(left_endpoints=(0, 2), num_colors=2))

    def test_preserves_answers(self):
        for seed in range(120):
            n, c, p = 1 + seed % 3, 1 + (seed // 3) % 3, seed % 4
            pce = random_pce(seed, n, c, p)
            image = reduce_pce_to_dpe(pce)
            assert image.d == 3 * n
            assert image.n == 3 * n * n + 2 * image.d + 1
            assert (oracle_pce(pce) is None) == (oracle_dped(image) is None), pce


def pce_family(max_n: int, max_c: int):
    """Every representation with endpoints in 0..n^2, every palette size and precoloring."""
    for n in range(1, max_n + 1):
        for lefts in permutations(range(n * n - n + 1), n):
            if len({x for left in lefts for x in (left, left + n)}) != 2 * n:
                continue
            for c in range(1, max_c + 1):
                for colors in product(range(c + 1), repeat=n):
                    precoloring = {v: color for v, color in enumerate(colors, start=1) if color}
                    yield UnitIntervalPce(left_endpoints=lefts, num_colors=c, precoloring=precoloring)


@pytest.mark.slow
def test_pce_reduction_preserves_answers_on_every_representation():
    for pce in pce_family(3, 3):
        image = reduce_pce_to_dpe(pce)
        assert image.d == 3 * pce.n
        assert image.n == 3 * pce.n**2 + 2 * image.d + 1
        assert (oracle_pce(pce) is None) == (oracle_dped(image) is None), pce
