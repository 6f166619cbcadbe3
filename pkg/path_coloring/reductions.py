"""
Instance transformers from the hardness constructions.

  reduce_mss_to_lcd     multidimensional subset sum -> non-alternating LCD on paths
  reduce_lcd_to_dped    non-alternating LCD -> single-path DPED
  reduce_pce_to_dpe     unit interval precoloring extension -> single-path DPE
  reduce_dpe_to_dped    DPE on paths -> single-path DPED

Images always list the source colors first and the auxiliary colors last.
"""
import logging

from pydantic import BaseModel, ConfigDict

from path_coloring.config import SolverLimits, resolve_limits
from path_coloring.errors import (
    BudgetExceeded,
    DemandsUnsupported,
    InvalidRepresentation,
    MissingDemands,
    NotNonAlternating,
    NotNormalized,
    NotSinglePath,
)
from path_coloring.models import (
    Coloring,
    DPEDInstance,
    LCDInstance,
    MssInstance,
    PathTopology,
    UnitIntervalPce,
)
from path_coloring.verify import is_non_alternating

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Path concatenation
# ---------------------------------------------------------------------------

def concatenate_paths(instance: DPEDInstance) -> tuple[DPEDInstance, list[int]]:
    """
    Join all paths into one, with d buffer vertices between consecutive paths.

    Buffer vertices are precolored cyclically from 2d+1 new colors of zero demand,
    so they never conflict with each other and cannot be used elsewhere.
    Returns the single-path instance and the new index of every original vertex.
    """
    d, c = instance.d, instance.num_colors
    buffer_colors = 2 * d + 1
    originals: list[int] = []
    precoloring: dict[int, int] = {}
    buffered = 0
    nxt = 1
    for path, (first, last) in enumerate(instance.topology.path_bounds):
        if path > 0:
            for _ in range(d):
                precoloring[nxt] = c + 1 + buffered % buffer_colors
                buffered += 1
                nxt += 1
        for v in range(first, last + 1):
            originals.append(nxt)
            if v in instance.precoloring:
                precoloring[nxt] = instance.precoloring[v]
            nxt += 1
    demands = None
    if instance.demands is not None:
        demands = (*instance.demands, *(0,) * buffer_colors)
    single = DPEDInstance(
        topology=PathTopology(path_lengths=(nxt - 1,) if nxt > 1 else ()),
        num_colors=c + buffer_colors,
        d=d,
        precoloring=precoloring,
        demands=demands,
    )
    return single, originals


# ---------------------------------------------------------------------------
# DPE -> DPED
# ---------------------------------------------------------------------------

def _dpe_layout(dpe: DPEDInstance) -> tuple[DPEDInstance, list[int]]:
    if dpe.demands is not None:
        raise DemandsUnsupported("expected a DPE instance (no demands)")
    n, c = dpe.n, dpe.num_colors
    isolated = (c - 1) * n
    # each color must end up on exactly n vertices; isolated vertices absorb what the paths leave unused
    demands = tuple(n - used for used in dpe.precolor_counts())
    widened = DPEDInstance(
        topology=PathTopology(path_lengths=(*dpe.topology.path_lengths, *(1,) * isolated)),
        num_colors=c,
        d=dpe.d,
        precoloring=dpe.precoloring,
        demands=demands,
    )
    single, originals = concatenate_paths(widened)
    return single, originals[:n]


def reduce_dpe_to_dped(dpe: DPEDInstance) -> DPEDInstance:
    image, _ = _dpe_layout(dpe)
    logger.debug("dpe -> dped: %d vertices -> %d", dpe.n, image.n)
    return image


def lift_dpe_to_dped_solution(dpe: DPEDInstance, coloring: Coloring) -> Coloring:
    """Restrict a solution of reduce_dpe_to_dped(dpe) to the original vertices."""
    _, originals = _dpe_layout(dpe)
    return coloring.restrict(originals)


# ---------------------------------------------------------------------------
# MSS -> LCD
# ---------------------------------------------------------------------------

def reduce_mss_to_lcd(
    mss: MssInstance,
    limits: SolverLimits | None = None,
    end_markers: bool = True,
) -> LCDInstance:
    """
    One path gadget per item r with |r| > 0: |r| blocks of six vertices.

    Colors: target colors 1..k, then a (universal), b, b' (fill), star (auxiliary)
    and, with end_markers, a marker color. A gadget that uses a on every other
    vertex either colors its even block vertices with a (item chosen, its target
    colors used) or its odd ones (item skipped, star used instead).

    The bare blocks also admit colorings that switch parity once, at a block
    boundary, and so pick up only part of an item. end_markers puts a {a, marker}
    vertex at both ends of each gadget; a switching gadget then has a on both
    markers, and the marker demand of one per gadget rules that out.
    """
    limits = resolve_limits(limits)
    k = mss.k
    a, b, b2, star, marker = k + 1, k + 2, k + 3, k + 4, k + 5
    num_colors = k + 5 if end_markers else k + 4
    total = sum(sum(item) for item in mss.items)
    wanted = sum(mss.target)
    if total < wanted:
        logger.info("mss -> lcd: items sum to %d < target %d, emitting an infeasible instance", total, wanted)
        return LCDInstance(
            topology=PathTopology(path_lengths=(1,)),
            num_colors=num_colors,
            lists=(frozenset({a}),),
            demands=(0,) * num_colors,
        )
    gadgets = sum(1 for item in mss.items if any(item))
    size = 6 * total + (2 * gadgets if end_markers else 0)
    if size > limits.max_gadget_vertices:
        raise BudgetExceeded(f"{size} gadget vertices exceed the limit of {limits.max_gadget_vertices}")

    ends = [frozenset({a, marker})] if end_markers else []
    lengths: list[int] = []
    lists: list[frozenset[int]] = []
    for item in mss.items:
        sequence = [j for j in range(1, k + 1) for _ in range(item[j - 1])]
        if not sequence:
            continue
        lengths.append(6 * len(sequence) + 2 * len(ends))
        lists.extend(ends)
        for j in sequence:
            lists.extend([
                frozenset({a, j}),
                frozenset({a, b}),
                frozenset({a, b2}),
                frozenset({a, star}),
                frozenset({a, b}),
                frozenset({a, b2}),
            ])
        lists.extend(ends)
    demands = [*mss.target, 3 * total, total, total, total - wanted]
    if end_markers:
        demands[a - 1] += gadgets
        demands.append(gadgets)
    return LCDInstance(
        topology=PathTopology(path_lengths=tuple(lengths)),
        num_colors=num_colors,
        lists=tuple(lists),
        demands=tuple(demands),
    )


# ---------------------------------------------------------------------------
# Non-alternating LCD -> DPED
# ---------------------------------------------------------------------------

class EdgeForbidAssignment(BaseModel):
    """forbidden[i-1] is the color set F(e_i) of edge e_i = v_i v_{i+1}."""
    model_config = ConfigDict(frozen=True)

    forbidden: tuple[frozenset[int], ...]

    def lists(self, num_colors: int) -> list[frozenset[int]]:
        """Lists implied by the edge sets: C minus the sets of the incident edges."""
        universe = frozenset(range(1, num_colors + 1))
        edges = len(self.forbidden)
        out = []
        for v in range(1, edges + 2):
            left = self.forbidden[v - 2] if v >= 2 else frozenset()
            right = self.forbidden[v - 1] if v <= edges else frozenset()
            out.append(universe - left - right)
        return out

    def has_triple(self) -> bool:
        """True if some color lies in three consecutive edge sets."""
        return any(
            self.forbidden[i] & self.forbidden[i + 1] & self.forbidden[i + 2]
            for i in range(len(self.forbidden) - 2)
        )


def normalize_lcd(lcd: LCDInstance) -> LCDInstance:
    """
    Single path with two new colors a, b.

    Every path is preceded by two {a, b} vertices and the last is followed by two
    more; a and b join every list and each gets demand p + 1 for p paths.
    """
    if lcd.demands is None:
        raise MissingDemands("LCD reduction needs demands")
    c = lcd.num_colors
    pair = frozenset({c + 1, c + 2})
    lists: list[frozenset[int]] = []
    for first, last in lcd.topology.path_bounds:
        lists.extend([pair, pair])
        lists.extend(allowed | pair for allowed in lcd.lists[first - 1 : last])
    lists.extend([pair, pair])
    p = lcd.topology.num_paths
    return LCDInstance(
        topology=PathTopology(path_lengths=(len(lists),)),
        num_colors=c + 2,
        lists=tuple(lists),
        demands=(*lcd.demands, p + 1, p + 1),
        d=1,
    )


def compute_edge_forbidden_sets(lcd: LCDInstance) -> EdgeForbidAssignment:
    """
    Edge color sets F(e_i) with L(v) = C minus the sets of v's edges and no color
    in three consecutive sets.

    F(e_1) = C - L(v_1), F(e_{n-1}) = C - L(v_n); in between, c joins F(e_i) when it
    is in neither L(v_i) nor L(v_{i+1}) and either c is not in F(e_{i-1}) or c is
    in L(v_{i+2}).
    """
    if not lcd.topology.is_single_path:
        raise NotSinglePath("edge sets are computed on a single path")
    n, lists = lcd.n, lcd.lists
    if n < 2 or lists[0] != lists[1] or lists[-2] != lists[-1]:
        raise NotNormalized("lists of the two end vertices on each side must be equal")
    if not is_non_alternating(lcd):
        raise NotNonAlternating("some color alternates over three consecutive vertices")
    universe = frozenset(range(1, lcd.num_colors + 1))
    forbidden: list[frozenset[int]] = [universe - lists[0]]
    for i in range(2, n - 1):
        prev = forbidden[-1]
        outside = universe - lists[i - 1] - lists[i]
        forbidden.append(frozenset(c for c in outside if c not in prev or c in lists[i + 1]))
    if n > 2:
        forbidden.append(universe - lists[-1])
    return EdgeForbidAssignment(forbidden=tuple(forbidden))


def main_vertex(k: int, d: int) -> int:
    """Path index of the k-th main vertex in the LCD -> DPED image."""
    return (k - 1) * d + 1


def reduce_lcd_to_dped(lcd: LCDInstance) -> DPEDInstance:
    """
    Spread the normalized path out so consecutive main vertices are d = 2t+1 apart.

    The d-1 auxiliary vertices between x_i and x_{i+1} hold, for each color c_j, a
    pair of slots at offsets 2j and 2j+1. c_j is precolored into the first slot when
    it is forbidden on e_i but not on e_{i-1}, into the second when forbidden on
    both; every other auxiliary vertex takes an auxiliary color cycling through
    d+1 colors. A main vertex then sees exactly the colors outside its list.
    """
    if not is_non_alternating(lcd):
        raise NotNonAlternating("reduction needs a non-alternating instance")
    norm = normalize_lcd(lcd)
    forbidden = compute_edge_forbidden_sets(norm).forbidden
    n, t = norm.n, norm.num_colors
    d = 2 * t + 1
    size = n * d + 1
    mains = {main_vertex(k, d) for k in range(1, n + 1)}
    precoloring = {v: t + 1 + v % (d + 1) for v in range(1, size + 1) if v not in mains}
    for i in range(1, n):
        before = forbidden[i - 2] if i >= 2 else frozenset()
        for j in forbidden[i - 1]:
            slot = (i - 1) * d + 2 * j
            precoloring[slot if j not in before else slot + 1] = j
    logger.debug("lcd -> dped: %d normalized vertices, t=%d, d=%d, path of %d", n, t, d, size)
    return DPEDInstance(
        topology=PathTopology(path_lengths=(size,)),
        num_colors=t + d + 1,
        d=d,
        precoloring=precoloring,
        demands=(*norm.demands, *(0,) * (d + 1)),
    )


def lift_lcd_to_dped_solution(lcd: LCDInstance, coloring: Coloring) -> Coloring:
    """Read the source coloring off the main vertices of a reduce_lcd_to_dped solution."""
    d = 2 * (lcd.num_colors + 2) + 1
    normalized_index = [
        v + 2 * (path + 1)
        for path, (first, last) in enumerate(lcd.topology.path_bounds)
        for v in range(first, last + 1)
    ]
    return Coloring(assignment=tuple(coloring.color_of(main_vertex(u, d)) for u in normalized_index))


# ---------------------------------------------------------------------------
# Unit interval PCE -> DPE
# ---------------------------------------------------------------------------

def representative(left_endpoint: int, n: int) -> int:
    """Path index of the vertex standing for the interval starting at `left_endpoint`."""
    return 3 * left_endpoint + 3 * n + 1


def reduce_pce_to_dpe(pce: UnitIntervalPce) -> DPEDInstance:
    """
    Path w_0..w_l with l = 3n^2 + 2d and d = 3n; the interval [x, x+n] becomes w_{3x+d}.

    Two representatives are within distance d exactly when their intervals meet.
    All other vertices are precolored cyclically with d+1 auxiliary colors.
    """
    problem = pce.representation_error()
    if problem:
        raise InvalidRepresentation(problem)
    n, c = pce.n, pce.num_colors
    d = 3 * n
    ell = 3 * n * n + 2 * d
    reps = {representative(left, n): v for v, left in enumerate(pce.left_endpoints, start=1)}
    precoloring: dict[int, int] = {}
    k = 0
    for w in range(1, ell + 2):
        if w in reps:
            source = reps[w]
            if source in pce.precoloring:
                precoloring[w] = pce.precoloring[source]
        else:
            k += 1
            precoloring[w] = c + 1 + k % (d + 1)
    return DPEDInstance(
        topology=PathTopology(path_lengths=(ell + 1,)),
        num_colors=c + d + 1,
        d=d,
        precoloring=precoloring,
        demands=None,
    )
