"""
Additive-error approximation for single-path DPED with arbitrary precoloring.

The path is first colored greedily as if nothing were precolored. Every cluster
of nearby precolored vertices then gets a core colored around its fixed
vertices, and the b = 2(d+1)^2 vertices on either side of the core are rewritten
block by block so the greedy coloring morphs into the core without conflicts.
Only demands are approximated; the result is always d-distance valid and
extends the precoloring.
"""
import logging
from collections.abc import Sequence

from pydantic import BaseModel, ConfigDict, Field

from path_coloring.config import SolverLimits, resolve_limits
from path_coloring.errors import Infeasible, MissingDemands, NotSinglePath, TooFewColors
from path_coloring.greedy import DemandHeap, greedy_fill, window_colors
from path_coloring.models import Coloring, DPEDInstance
from path_coloring.verify import demand_deviation, find_distance_conflict
from path_coloring.window_dp import frontier_dp

logger = logging.getLogger(__name__)


class RepairPlan(BaseModel):
    """Block layout of the repair around the precolored vertices (anchors)."""
    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=0)
    d: int = Field(..., ge=0)
    anchors: tuple[int, ...] = Field((), description="Precolored vertices, ascending")

    @property
    def b(self) -> int:
        return 2 * (self.d + 1) ** 2

    @property
    def block_size(self) -> int:
        return self.d + 1

    @property
    def interior_blocks(self) -> int:
        return 2 * (self.d + 1)

    @property
    def close_gap(self) -> int:
        """Anchors at most this far apart share a core."""
        return 2 * self.b + 4 * self.d + 2

    def clusters(self) -> list[tuple[int, ...]]:
        groups: list[list[int]] = []
        for w in self.anchors:
            if groups and w - groups[-1][-1] <= self.close_gap:
                groups[-1].append(w)
            else:
                groups.append([w])
        return [tuple(g) for g in groups]

    def core(self, cluster: Sequence[int]) -> tuple[int, int]:
        """Inclusive core interval: the cluster widened to at least d+1 vertices past each end."""
        first, last = cluster[0], cluster[-1]
        return max(1, min(first, last - self.d)), min(self.n, max(last, first + self.d))


class ErrorReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    achieved_error: int
    bound: int
    bound_applies: bool = Field(True, description="Whether the greedy phase met the lifted demands exactly")
    deviations: tuple[int, ...] = Field(..., description="Achieved minus demanded new count, per color")


def morph_steps(source: Sequence[int], target: Sequence[int], num_colors: int) -> list[tuple[int, ...]]:
    """
    Blocks leading from `source` to `target`, one changed position per step.

    Both blocks hold d+1 distinct colors. Writing target[i] at position i is
    direct unless that color already sits later in the block; then the later
    copy is first swapped for the smallest color absent from the block.
    Concatenating source and the returned blocks is d-distance valid.
    """
    block = list(source)
    steps: list[tuple[int, ...]] = []
    for i, want in enumerate(target):
        if block[i] == want:
            continue
        if want in block:
            q = block.index(want)
            block[q] = min(set(range(1, num_colors + 1)) - set(block))
            steps.append(tuple(block))
        block[i] = want
        steps.append(tuple(block))
    return steps


def morph_fill(source: Sequence[int], target: Sequence[int], length: int, num_colors: int) -> list[int]:
    """
    `length` colors that continue after `source` and end right before `target`.

    The first length mod (d+1) colors extend `source` periodically; the rest are
    whole blocks: the morph steps, then copies of `target`.
    """
    size = len(source)
    r = length % size
    fill = list(source[:r])
    rotated = list(source[r:]) + list(source[:r])
    blocks = morph_steps(rotated, target, num_colors)
    whole = length // size
    if len(blocks) > whole:
        raise Infeasible(f"morph needs {len(blocks)} blocks, only {whole} fit")
    blocks += [tuple(target)] * (whole - len(blocks))
    for block in blocks:
        fill.extend(block)
    return fill


def _new_counts_remaining(instance: DPEDInstance, colors: list[int]) -> list[int]:
    remaining = list(instance.demands)
    for v in range(1, instance.n + 1):
        if v not in instance.precoloring and colors[v]:
            remaining[colors[v] - 1] -= 1
    return remaining


def _color_core(
    instance: DPEDInstance,
    colors: list[int],
    greedy: list[int],
    span: tuple[int, int],
    heap: DemandHeap,
    limits: SolverLimits,
) -> None:
    start, end = span
    d, c = instance.d, instance.num_colors
    free = [v for v in range(start, end + 1) if v not in instance.precoloring]
    if c >= 2 * d + 1:
        # at most 2d neighbours, so an unblocked color always exists
        greedy_fill(colors, free, d, heap, relaxed=True)
        return
    allowed = [
        [instance.precoloring[v]] if v in instance.precoloring else list(range(1, c + 1))
        for v in range(start, end + 1)
    ]
    preferred = [greedy[v] for v in range(start, end + 1)]
    segment = frontier_dp(allowed, d, preferred, state_cap=limits.dp_state_cap)
    if segment is None:
        raise Infeasible(f"no valid coloring of the core {start}..{end}")
    for v, color in zip(range(start, end + 1), segment):
        if v not in instance.precoloring:
            colors[v] = color
            heap.take(color)


def _color_side(
    colors: list[int],
    greedy: list[int],
    side: list[int],
    source: list[int] | None,
    target: list[int],
    d: int,
    num_colors: int,
    heap: DemandHeap,
) -> None:
    """
    Repair one side of a core.

    `side` runs from its far end towards the core, `source` is the untouched
    greedy block just beyond the far end (same direction) and `target` the core
    colors that follow the side. Without a source block the side reaches the
    path end and is filled greedily, walking away from the core.
    """
    if source is None:
        greedy_fill(colors, reversed(side), d, heap, relaxed=True)
        return
    fill = morph_fill([greedy[v] for v in source], target, len(side), num_colors)
    for v, color in zip(side, fill):
        colors[v] = color
        heap.take(color)


def _rebalance(instance: DPEDInstance, colors: list[int], remaining: list[int]) -> int:
    """Move free vertices from over-used to under-used colors; returns the number of recolorings."""
    moves = 0
    changed = True
    while changed:
        changed = False
        for v in range(1, instance.n + 1):
            current = colors[v]
            if v in instance.precoloring or remaining[current - 1] >= 0:
                continue
            blocked = window_colors(colors, v, instance.d)
            options = [
                x for x in range(1, instance.num_colors + 1)
                if remaining[x - 1] > 0 and x not in blocked
            ]
            if not options:
                continue
            better = min(options, key=lambda x: (-remaining[x - 1], x))
            colors[v] = better
            remaining[current - 1] += 1
            remaining[better - 1] -= 1
            moves += 1
            changed = True
    return moves


def solve_approx(
    instance: DPEDInstance,
    limits: SolverLimits | None = None,
) -> tuple[Coloring, ErrorReport]:
    """
    Valid extension of the precoloring with small total demand error.

    The output always respects the precoloring and the distance rule. The error
    stays within p(2b+1), b = 2(d+1)^2, when the greedy pass over the whole path
    meets the lifted demands exactly, which holds for feasible inputs; otherwise
    report.bound_applies is False and the error may exceed the bound.
    """
    limits = resolve_limits(limits)
    if not instance.topology.is_single_path and instance.n > 0:
        raise NotSinglePath("approximation needs a single path")
    if instance.demands is None:
        raise MissingDemands("approximation needs demands")
    n, c, d = instance.n, instance.num_colors, instance.d
    if c < d + 2:
        raise TooFewColors(f"{c} colors, need at least d + 2 = {d + 2}")
    conflict = find_distance_conflict(instance.topology, instance.precoloring, d)
    if conflict:
        raise Infeasible(f"precolored vertices {conflict[0]} and {conflict[1]} conflict")

    plan = RepairPlan(n=n, d=d, anchors=tuple(sorted(instance.precoloring)))
    greedy = [0] * (n + 1)
    lifted = DemandHeap(instance.lifted_demands())
    greedy_fill(greedy, range(1, n + 1), d, lifted, relaxed=True)

    colors = list(greedy)
    if plan.anchors:
        b, size = plan.b, d + 1
        layout = []
        for cluster in plan.clusters():
            start, end = plan.core(cluster)
            if start - b - size >= 1:
                left = list(range(start - b, start))
                left_source = list(range(start - b - size, start - b))
            else:
                left, left_source = list(range(1, start)), None
            if end + b + size <= n:
                right = list(range(end + b, end, -1))
                right_source = list(range(end + b + size, end + b, -1))
            else:
                right, right_source = list(range(n, end, -1)), None
            layout.append(((start, end), left, left_source, right, right_source))
            for v in (*left, *range(start, end + 1), *right):
                colors[v] = 0
        for v, color in instance.precoloring.items():
            colors[v] = color
        heap = DemandHeap(_new_counts_remaining(instance, colors))
        for span, *_ in layout:
            _color_core(instance, colors, greedy, span, heap, limits)
        for (start, end), left, left_source, right, right_source in layout:
            # a side with a source block always borders a core of at least d+1 vertices
            _color_side(colors, greedy, left, left_source, colors[start : start + size], d, c, heap)
            _color_side(colors, greedy, right, right_source, colors[end - d : end + 1][::-1], d, c, heap)
        moves = _rebalance(instance, colors, _new_counts_remaining(instance, colors))
        logger.debug("approx: %d clusters repaired, %d rebalancing moves", len(layout), moves)

    coloring = Coloring(assignment=tuple(colors[1:]))
    deviations = demand_deviation(instance, coloring)
    report = ErrorReport(
        achieved_error=sum(abs(x) for x in deviations),
        bound=len(plan.anchors) * (2 * plan.b + 1),
        deviations=deviations,
        bound_applies=not any(lifted.remaining),
    )
    if report.achieved_error > report.bound:
        logger.warning("approx: demand error %d above bound %d", report.achieved_error, report.bound)
    elif report.achieved_error:
        logger.info("approx: demand error %d (bound %d)", report.achieved_error, report.bound)
    return coloring, report
