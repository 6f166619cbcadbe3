"""
Sliding-window dynamic programs on a single path.

solve_dped_dp: exact DPED; a state is the colors of the last d vertices plus
how often every color has been used so far.

solve_dlc_dp: distance list coloring; lists are pruned to their 2d+1 smallest
colors, then a frontier of extendable window colorings is swept left to right.
"""
import logging
from collections.abc import Sequence
from typing import NamedTuple

from path_coloring.config import SolverLimits, resolve_limits
from path_coloring.errors import BudgetExceeded, DemandsUnsupported, MissingDemands, NotSinglePath
from path_coloring.models import Coloring, DPEDInstance, LCDInstance
from path_coloring.verify import find_distance_conflict

logger = logging.getLogger(__name__)


class WindowSignature(NamedTuple):
    window: tuple[int, ...]
    counts: tuple[int, ...]


class FrontierEntry(NamedTuple):
    cost: int
    parent: tuple[int, ...] | None
    color: int


# window coloring of the last d vertices -> cheapest way to reach it
DlcFrontier = dict[tuple[int, ...], FrontierEntry]


def _slide(window: tuple[int, ...], color: int, d: int) -> tuple[int, ...]:
    return (*window, color)[-d:] if d > 0 else ()


def solve_dped_dp(instance: DPEDInstance, limits: SolverLimits | None = None) -> Coloring | None:
    limits = resolve_limits(limits)
    if not instance.topology.is_single_path:
        raise NotSinglePath("window DP needs a single path; concatenate paths first")
    if instance.demands is None:
        raise MissingDemands("window DP needs demands")
    if not instance.is_demand_consistent():
        return None
    if find_distance_conflict(instance.topology, instance.precoloring, instance.d):
        return None

    n, c, d = instance.n, instance.num_colors, instance.d
    cap = instance.lifted_demands()
    palette = range(1, c + 1)
    start = WindowSignature((), (0,) * c)
    layers: list[dict[WindowSignature, tuple[WindowSignature, int]]] = []
    current: dict[WindowSignature, tuple[WindowSignature, int] | None] = {start: None}
    for v in range(1, n + 1):
        choices = (instance.precoloring[v],) if v in instance.precoloring else palette
        nxt: dict[WindowSignature, tuple[WindowSignature, int]] = {}
        for state in current:
            for color in choices:
                # counts only grow, so exceeding the cap is final
                if color in state.window or state.counts[color - 1] >= cap[color - 1]:
                    continue
                counts = list(state.counts)
                counts[color - 1] += 1
                key = WindowSignature(_slide(state.window, color, d), tuple(counts))
                if key not in nxt:
                    nxt[key] = (state, color)
        if len(nxt) > limits.dp_state_cap:
            raise BudgetExceeded(f"{len(nxt)} DP states at vertex {v} exceed the cap of {limits.dp_state_cap}")
        if not nxt:
            logger.debug("dped dp: no state survives vertex %d", v)
            return None
        layers.append(nxt)
        current = nxt

    # counts are capped and sum to n = sum(cap), so every final state meets the demands
    state = next(iter(layers[-1]))
    colors = []
    for layer in reversed(layers):
        state, color = layer[state]
        colors.append(color)
    return Coloring(assignment=tuple(reversed(colors)))


def prune_lists(lists: Sequence[frozenset[int]], d: int) -> list[list[int]]:
    """Keep the 2d+1 smallest colors of every list; the rest are never needed."""
    return [sorted(allowed)[: 2 * d + 1] for allowed in lists]


def frontier_layers(
    allowed: Sequence[Sequence[int]],
    d: int,
    preferred: Sequence[int | None] | None = None,
    state_cap: int | None = None,
) -> list[DlcFrontier]:
    """
    One frontier per position: reachable window colorings with their cheapest cost.

    Cost counts positions whose color differs from `preferred` (None entries are free).
    """
    layers: list[DlcFrontier] = []
    current: DlcFrontier = {(): FrontierEntry(0, None, 0)}
    for i, candidates in enumerate(allowed):
        nxt: DlcFrontier = {}
        for window, entry in current.items():
            for color in candidates:
                if color in window:
                    continue
                cost = entry.cost
                if preferred is not None and preferred[i] is not None and preferred[i] != color:
                    cost += 1
                key = _slide(window, color, d)
                best = nxt.get(key)
                if best is None or cost < best.cost:
                    nxt[key] = FrontierEntry(cost, window, color)
        if state_cap is not None and len(nxt) > state_cap:
            raise BudgetExceeded(f"{len(nxt)} frontier states at position {i + 1} exceed the cap of {state_cap}")
        layers.append(nxt)
        current = nxt
    return layers


def frontier_dp(
    allowed: Sequence[Sequence[int]],
    d: int,
    preferred: Sequence[int | None] | None = None,
    state_cap: int | None = None,
) -> list[int] | None:
    """Cheapest d-distance coloring of a segment with per-position candidate colors."""
    if not allowed:
        return []
    layers = frontier_layers(allowed, d, preferred, state_cap)
    if not layers[-1]:
        return None
    window = min(layers[-1], key=lambda w: layers[-1][w].cost)
    colors = []
    for layer in reversed(layers):
        entry = layer[window]
        colors.append(entry.color)
        window = entry.parent
    return colors[::-1]


def solve_dlc_dp(
    instance: LCDInstance,
    limits: SolverLimits | None = None,
    prune: bool = True,
) -> Coloring | None:
    """Distance list coloring, path by path."""
    limits = resolve_limits(limits)
    if instance.demands is not None:
        raise DemandsUnsupported("distance list coloring takes no demands")
    d = instance.d
    lists = prune_lists(instance.lists, d) if prune else [sorted(allowed) for allowed in instance.lists]
    colors: list[int] = []
    for first, last in instance.topology.path_bounds:
        part = frontier_dp(lists[first - 1 : last], d, state_cap=limits.dp_state_cap)
        if part is None:
            logger.debug("dlc dp: path %d..%d has no list coloring", first, last)
            return None
        colors.extend(part)
    return Coloring(assignment=tuple(colors))
