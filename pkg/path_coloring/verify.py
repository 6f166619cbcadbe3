"""
Verification predicates for colorings of path instances.

Conflict rule: two vertices on the same path at distance <= d must get different
colors. d = 0 never conflicts.
"""
from collections.abc import Mapping, Sequence

from path_coloring.models import CmplInstance, Coloring, DPEDInstance, LCDInstance, PathTopology


def find_distance_conflict(
    topology: PathTopology,
    colors: Sequence[int] | Mapping[int, int],
    d: int,
) -> tuple[int, int] | None:
    """
    First pair (u, v), u < v, of equal colors within distance d on one path.

    `colors` is either a total sequence (index = vertex - 1) or a partial
    vertex -> color mapping; unlisted vertices and color 0 count as uncolored.
    """
    if d <= 0:
        return None
    if isinstance(colors, Mapping):
        lookup = colors.get
    else:
        def lookup(v: int) -> int | None:
            return colors[v - 1] if v <= len(colors) else None
    for first, last in topology.path_bounds:
        last_seen: dict[int, int] = {}
        for v in range(first, last + 1):
            color = lookup(v)
            if not color:
                continue
            prev = last_seen.get(color)
            if prev is not None and v - prev <= d:
                return prev, v
            last_seen[color] = v
    return None


def verify_d_distance(topology: PathTopology, coloring: Coloring, d: int) -> bool:
    return find_distance_conflict(topology, coloring.assignment, d) is None


def new_color_counts(instance: DPEDInstance, coloring: Coloring) -> list[int]:
    """Per-color count over vertices outside the precolored set."""
    counts = [0] * instance.num_colors
    for v, color in enumerate(coloring.assignment, start=1):
        if v not in instance.precoloring and 1 <= color <= instance.num_colors:
            counts[color - 1] += 1
    return counts


def demand_deviation(instance: DPEDInstance, coloring: Coloring) -> tuple[int, ...]:
    """Achieved minus demanded new-count, per color."""
    if instance.demands is None:
        return tuple(0 for _ in range(instance.num_colors))
    counts = new_color_counts(instance, coloring)
    return tuple(got - want for got, want in zip(counts, instance.demands))


def additive_error(instance: DPEDInstance, coloring: Coloring) -> int:
    return sum(abs(x) for x in demand_deviation(instance, coloring))


def _size_and_range_violation(n: int, num_colors: int, coloring: Coloring) -> str | None:
    if coloring.n != n:
        return f"coloring has {coloring.n} vertices, instance has {n}"
    for v, color in enumerate(coloring.assignment, start=1):
        if color > num_colors:
            return f"vertex {v} has color {color} outside 1..{num_colors}"
    return None


def dped_violation(instance: DPEDInstance, coloring: Coloring) -> str | None:
    """First reason `coloring` does not solve `instance`, or None."""
    problem = _size_and_range_violation(instance.n, instance.num_colors, coloring)
    if problem:
        return problem
    for v, color in sorted(instance.precoloring.items()):
        if coloring.color_of(v) != color:
            return f"vertex {v} is precolored {color} but colored {coloring.color_of(v)}"
    conflict = find_distance_conflict(instance.topology, coloring.assignment, instance.d)
    if conflict:
        u, v = conflict
        return f"vertices {u} and {v} share color {coloring.color_of(u)} at distance {v - u} <= {instance.d}"
    if instance.demands is not None:
        for color, dev in enumerate(demand_deviation(instance, coloring), start=1):
            if dev:
                want = instance.demands[color - 1]
                return f"color {color} newly used {want + dev} times, demand is {want}"
    return None


def verify_dped_solution(instance: DPEDInstance, coloring: Coloring) -> bool:
    return dped_violation(instance, coloring) is None


def lcd_violation(instance: LCDInstance, coloring: Coloring) -> str | None:
    problem = _size_and_range_violation(instance.n, instance.num_colors, coloring)
    if problem:
        return problem
    for v, (color, allowed) in enumerate(zip(coloring.assignment, instance.lists), start=1):
        if color not in allowed:
            return f"vertex {v} has color {color} not in its list {sorted(allowed)}"
    conflict = find_distance_conflict(instance.topology, coloring.assignment, instance.d)
    if conflict:
        u, v = conflict
        return f"vertices {u} and {v} share color {coloring.color_of(u)} at distance {v - u} <= {instance.d}"
    if instance.demands is not None:
        counts = [0] * instance.num_colors
        for color in coloring.assignment:
            counts[color - 1] += 1
        for color, (got, want) in enumerate(zip(counts, instance.demands), start=1):
            if got != want:
                return f"color {color} used {got} times, demand is {want}"
    return None


def verify_lcd_solution(instance: LCDInstance, coloring: Coloring) -> bool:
    return lcd_violation(instance, coloring) is None


def is_non_alternating(instance: LCDInstance) -> bool:
    """No color c and consecutive v_{i-1}, v_i, v_{i+1} on one path with c in the outer lists only."""
    lists = instance.lists
    for first, last in instance.topology.path_bounds:
        for i in range(first + 1, last):
            outer = lists[i - 2] & lists[i]
            if outer - lists[i - 1]:
                return False
    return True


def word_violation(instance: CmplInstance, word: Sequence[int]) -> str | None:
    """First reason `word` does not answer the constrained Parikh query, or None."""
    nfa, query = instance.nfa, instance.query
    counts = [0] * nfa.alphabet_size
    for position, letter in enumerate(word, start=1):
        if not 1 <= letter <= nfa.alphabet_size:
            return f"position {position} has letter {letter} outside 1..{nfa.alphabet_size}"
        counts[letter - 1] += 1
    for letter, (got, want) in enumerate(zip(counts, query.target), start=1):
        if got != want:
            return f"letter {letter} occurs {got} times, target is {want}"
    for position, letter in query.constraints:
        if position > len(word) or word[position - 1] != letter:
            return f"position {position} must hold letter {letter}"
    if not nfa.accepts(word):
        return "word is not accepted"
    return None
