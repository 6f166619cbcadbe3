"""
Seeded random instances and exhaustive instance families.

Random generators plant a hidden solution and derive the demands from it, so
their DPED and LCD output is demand-consistent and feasible unless stated
otherwise. Equal seeds give equal instances.
"""
import random
from collections.abc import Iterator
from itertools import combinations, product

from path_coloring.models import DPEDInstance, LCDInstance, MssInstance, PathTopology, UnitIntervalPce


def _planted_coloring(rng: random.Random, n: int, num_colors: int, d: int) -> list[int]:
    if num_colors <= d and n > num_colors:
        raise ValueError(f"a path of {n} vertices has no {d}-distance coloring with {num_colors} colors")
    colors: list[int] = []
    for _ in range(n):
        recent = set(colors[-d:]) if d else set()
        colors.append(rng.choice([c for c in range(1, num_colors + 1) if c not in recent]))
    return colors


def _counts(colors: list[int], num_colors: int) -> tuple[int, ...]:
    out = [0] * num_colors
    for color in colors:
        out[color - 1] += 1
    return tuple(out)


def random_dped(seed: int, n: int, num_colors: int, d: int, p: int = 0, end: bool = False) -> DPEDInstance:
    """
    Single path with a planted d-distance coloring; p of its vertices keep their color.

    With end=True the precolored vertices form a random prefix and suffix.
    """
    rng = random.Random(seed)
    hidden = _planted_coloring(rng, n, num_colors, d)
    p = min(p, n)
    if end:
        prefix = rng.randint(0, p)
        chosen = [*range(1, prefix + 1), *range(n - (p - prefix) + 1, n + 1)]
    else:
        chosen = rng.sample(range(1, n + 1), p)
    precoloring = {v: hidden[v - 1] for v in sorted(chosen)}
    free = [hidden[v - 1] for v in range(1, n + 1) if v not in precoloring]
    return DPEDInstance(
        topology=PathTopology(path_lengths=(n,) if n else ()),
        num_colors=num_colors,
        d=d,
        precoloring=precoloring,
        demands=_counts(free, num_colors),
    )


def random_lcd(
    seed: int,
    n: int,
    num_colors: int,
    d: int = 1,
    list_size: int = 2,
    with_demands: bool = True,
    planted: bool = True,
) -> LCDInstance:
    """Lists of 1..list_size random colors; planted lists contain a hidden valid coloring."""
    rng = random.Random(seed)
    hidden = _planted_coloring(rng, n, num_colors, d) if planted else []
    lists = []
    for v in range(n):
        size = rng.randint(1, min(list_size, num_colors))
        allowed = set(rng.sample(range(1, num_colors + 1), size))
        if planted:
            allowed.add(hidden[v])
        lists.append(frozenset(allowed))
    demands = None
    if with_demands:
        demands = _counts(hidden, num_colors) if planted else _counts([rng.choice(sorted(a)) for a in lists], num_colors)
    return LCDInstance(
        topology=PathTopology(path_lengths=(n,) if n else ()),
        num_colors=num_colors,
        lists=tuple(lists),
        demands=demands,
        d=d,
    )


def random_non_alternating_lcd(seed: int, n: int, num_colors: int, density: float = 0.4) -> LCDInstance:
    """
    Single-path LCD with demands whose lists never drop a color for exactly one vertex.

    The two lists at each end are equal and a planted proper coloring meets the demands.
    """
    if n < 2:
        raise ValueError("need at least two vertices")
    rng = random.Random(seed)
    hidden = _planted_coloring(rng, n, num_colors, 1)
    member = [[rng.random() < density for _ in range(n)] for _ in range(num_colors)]
    for v, color in enumerate(hidden):
        member[color - 1][v] = True
    for row in member:
        # on short paths the end pairs overlap, so repeat until stable
        while True:
            before = row[:]
            row[0] = row[1] = row[0] or row[1]
            row[-1] = row[-2] = row[-1] or row[-2]
            for v in range(1, n - 1):
                if row[v - 1] and row[v + 1]:
                    row[v] = True
            if row == before:
                break
    lists = tuple(frozenset(c + 1 for c in range(num_colors) if member[c][v]) for v in range(n))
    return LCDInstance(
        topology=PathTopology(path_lengths=(n,)),
        num_colors=num_colors,
        lists=lists,
        demands=_counts(hidden, num_colors),
    )


def random_mss(seed: int, k: int, m: int, max_value: int = 3, planted: bool = True) -> MssInstance:
    """m random items in {0..max_value}^k; a planted target is the sum of a random subset."""
    rng = random.Random(seed)
    items = tuple(tuple(rng.randint(0, max_value) for _ in range(k)) for _ in range(m))
    if planted:
        chosen = [item for item in items if rng.random() < 0.5]
        target = tuple(sum(item[j] for item in chosen) for j in range(k))
    else:
        target = tuple(rng.randint(0, max_value * max(m, 1)) for _ in range(k))
    return MssInstance(k=k, items=items, target=target)


def random_pce(seed: int, n: int, num_colors: int, p: int = 0) -> UnitIntervalPce:
    """Unit intervals of length n with distinct integer endpoints in 0..n^2; p random precolors."""
    rng = random.Random(seed)
    while True:
        lefts = rng.sample(range(n * n - n + 1), n) if n else []
        endpoints = [x for left in lefts for x in (left, left + n)]
        if len(set(endpoints)) == len(endpoints):
            break
    precoloring = {v: rng.randint(1, num_colors) for v in rng.sample(range(1, n + 1), min(p, n))}
    return UnitIntervalPce(left_endpoints=tuple(lefts), num_colors=num_colors, precoloring=precoloring)


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of `parts` non-negative integers summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first, *rest)


def _with_all_demands(n: int, num_colors: int, d: int, precoloring: dict[int, int]) -> Iterator[DPEDInstance]:
    topology = PathTopology(path_lengths=(n,))
    for demands in compositions(n - len(precoloring), num_colors):
        yield DPEDInstance(topology=topology, num_colors=num_colors, d=d, precoloring=precoloring, demands=demands)


def iter_end_precolored_instances(max_n: int, max_c: int, max_d: int, max_side: int) -> Iterator[DPEDInstance]:
    """
    Every single-path DPED with n <= max_n, c <= max_c, d <= max_d and consistent
    demands whose precolored vertices are a prefix and a suffix of at most max_side each.
    """
    for n, c, d in product(range(1, max_n + 1), range(1, max_c + 1), range(max_d + 1)):
        for s, t in product(range(max_side + 1), repeat=2):
            if s + t > n:
                continue
            vertices = [*range(1, s + 1), *range(n - t + 1, n + 1)]
            for colors in product(range(1, c + 1), repeat=len(vertices)):
                yield from _with_all_demands(n, c, d, dict(zip(vertices, colors)))


def iter_sparse_precolored_instances(max_n: int, max_c: int, max_d: int, max_p: int) -> Iterator[DPEDInstance]:
    """Like iter_end_precolored_instances, but with at most max_p precolored vertices anywhere."""
    for n, c, d in product(range(1, max_n + 1), range(1, max_c + 1), range(max_d + 1)):
        for p in range(min(max_p, n) + 1):
            for vertices in combinations(range(1, n + 1), p):
                for colors in product(range(1, c + 1), repeat=p):
                    yield from _with_all_demands(n, c, d, dict(zip(vertices, colors)))
