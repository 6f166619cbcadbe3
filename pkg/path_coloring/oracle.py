"""
Brute-force reference solvers.

Depth-first search over free vertices in index order, colors in ascending order,
so the first solution found is the lexicographically smallest. Every other
solver in the package is tested against these.
"""
import logging
from collections.abc import Callable, Iterable
from itertools import combinations

from path_coloring.config import SolverLimits, resolve_limits
from path_coloring.errors import BudgetExceeded, InconsistentConstraints
from path_coloring.models import (
    Coloring,
    DPEDInstance,
    LCDInstance,
    MssInstance,
    Nfa,
    PathTopology,
    UnitIntervalPce,
)
from path_coloring.verify import find_distance_conflict

logger = logging.getLogger(__name__)


def _check_budget(size: int, budget: int, what: str) -> None:
    if size > budget:
        raise BudgetExceeded(f"{size} {what} exceed the oracle budget of {budget}")


def _search_paths(
    topology: PathTopology,
    d: int,
    fixed: dict[int, int],
    allowed: Callable[[int], Iterable[int]],
    remaining: list[int] | None,
) -> list[int] | None:
    """Extend `fixed` to all vertices; remaining[c-1] caps new uses of color c."""
    n = topology.n
    colors = [0] * (n + 1)
    for v, color in fixed.items():
        colors[v] = color
    path_of = [0, *topology.path_index()]
    free = [v for v in range(1, n + 1) if v not in fixed]

    def occupied(v: int) -> set[int]:
        lo, hi = max(1, v - d), min(n, v + d)
        return {colors[u] for u in range(lo, hi + 1) if u != v and path_of[u] == path_of[v]}

    def extend(i: int) -> bool:
        if i == len(free):
            return True
        v = free[i]
        blocked = occupied(v) if d > 0 else set()
        for color in allowed(v):
            if color in blocked or (remaining is not None and remaining[color - 1] == 0):
                continue
            colors[v] = color
            if remaining is not None:
                remaining[color - 1] -= 1
            if extend(i + 1):
                return True
            if remaining is not None:
                remaining[color - 1] += 1
            colors[v] = 0
        return False

    return colors[1:] if extend(0) else None


def oracle_dped(instance: DPEDInstance, limits: SolverLimits | None = None) -> Coloring | None:
    """Lexicographically first solution of a DPED (or DPE, demands=None) instance."""
    limits = resolve_limits(limits)
    free_count = instance.n - len(instance.precoloring)
    _check_budget(free_count, limits.oracle_budget, "free vertices")
    if not instance.is_demand_consistent():
        return None
    if find_distance_conflict(instance.topology, instance.precoloring, instance.d):
        return None
    palette = range(1, instance.num_colors + 1)
    remaining = list(instance.demands) if instance.demands is not None else None
    colors = _search_paths(instance.topology, instance.d, instance.precoloring, lambda _: palette, remaining)
    logger.debug("oracle_dped: n=%d free=%d -> %s", instance.n, free_count, "feasible" if colors else "infeasible")
    return Coloring(assignment=tuple(colors)) if colors is not None else None


def oracle_lcd(instance: LCDInstance, limits: SolverLimits | None = None) -> Coloring | None:
    """Lexicographically first list coloring; demands=None searches without counts."""
    limits = resolve_limits(limits)
    _check_budget(instance.n, limits.oracle_budget, "vertices")
    remaining = None
    if instance.demands is not None:
        if sum(instance.demands) != instance.n:
            return None
        remaining = list(instance.demands)
    ordered = [sorted(allowed) for allowed in instance.lists]
    colors = _search_paths(instance.topology, instance.d, {}, lambda v: ordered[v - 1], remaining)
    return Coloring(assignment=tuple(colors)) if colors is not None else None


def oracle_cmpl(
    nfa: Nfa,
    target: tuple[int, ...] | list[int],
    constraints: Iterable[tuple[int, int]] = (),
    limits: SolverLimits | None = None,
) -> tuple[int, ...] | None:
    """Lexicographically smallest accepted word with letter counts `target` honoring constraints."""
    limits = resolve_limits(limits)
    length = sum(target)
    _check_budget(length, limits.cmpl_budget, "letters")
    fixed: dict[int, int] = {}
    for position, letter in constraints:
        if fixed.setdefault(position, letter) != letter:
            raise InconsistentConstraints(f"position {position} fixed to both {fixed[position]} and {letter}")
    if any(position > length for position in fixed):
        return None

    table: dict[tuple[int, int], set[int]] = {}
    for q, letter, r in nfa.transitions:
        table.setdefault((q, letter), set()).add(r)
    dead: set[tuple[frozenset[int], tuple[int, ...]]] = set()

    def extend(states: frozenset[int], residual: tuple[int, ...]) -> tuple[int, ...] | None:
        if not any(residual):
            return () if states & nfa.accepting else None
        if (states, residual) in dead:
            return None
        position = length - sum(residual) + 1
        letters = [fixed[position]] if position in fixed else range(1, nfa.alphabet_size + 1)
        for letter in letters:
            if not residual[letter - 1]:
                continue
            nxt = frozenset(r for q in states for r in table.get((q, letter), ()))
            if not nxt:
                continue
            rest = extend(nxt, residual[: letter - 1] + (residual[letter - 1] - 1,) + residual[letter:])
            if rest is not None:
                return (letter, *rest)
        dead.add((states, residual))
        return None

    return extend(frozenset({nfa.initial}), tuple(target))


def oracle_mss(instance: MssInstance, limits: SolverLimits | None = None) -> tuple[int, ...] | None:
    """Smallest (by size, then index order) set of item indices summing to the target."""
    limits = resolve_limits(limits)
    _check_budget(len(instance.items), limits.oracle_budget, "items")
    target = tuple(instance.target)
    for size in range(len(instance.items) + 1):
        for chosen in combinations(range(len(instance.items)), size):
            total = tuple(sum(instance.items[i][j] for i in chosen) for j in range(instance.k))
            if total == target:
                return tuple(i + 1 for i in chosen)
    return None


def oracle_pce(instance: UnitIntervalPce, limits: SolverLimits | None = None) -> Coloring | None:
    """Proper coloring of the interval graph extending the precoloring."""
    limits = resolve_limits(limits)
    n = instance.n
    _check_budget(n - len(instance.precoloring), limits.oracle_budget, "free vertices")
    colors = [0] * (n + 1)
    for v, color in instance.precoloring.items():
        colors[v] = color
    for u, v in combinations(sorted(instance.precoloring), 2):
        if instance.adjacent(u, v) and colors[u] == colors[v]:
            return None
    neighbours = {v: [u for u in range(1, n + 1) if instance.adjacent(u, v)] for v in range(1, n + 1)}
    free = [v for v in range(1, n + 1) if v not in instance.precoloring]

    def extend(i: int) -> bool:
        if i == len(free):
            return True
        v = free[i]
        blocked = {colors[u] for u in neighbours[v]}
        for color in range(1, instance.num_colors + 1):
            if color in blocked:
                continue
            colors[v] = color
            if extend(i + 1):
                return True
        colors[v] = 0
        return False

    return Coloring(assignment=tuple(colors[1:])) if extend(0) else None
