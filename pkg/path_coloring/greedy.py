"""
Greedy solver for end-precolored single-path DPED.

Each free vertex, left to right, takes the feasible color with the largest
remaining demand; ties go to the color whose first suffix occurrence is
nearest, then to the smaller color. Exact when precolored vertices form a
prefix and a suffix of the path.
"""
import heapq
import logging
import math
from collections.abc import Container, Iterable, Sequence

from pydantic import BaseModel, ConfigDict, Field

from path_coloring.errors import MissingDemands, NotEndPrecolored, NotSinglePath
from path_coloring.models import Coloring, DPEDInstance
from path_coloring.verify import find_distance_conflict

logger = logging.getLogger(__name__)


class EndPrecoloredView(BaseModel):
    """Prefix length s, suffix start t and first suffix position of every color."""
    model_config = ConfigDict(frozen=True)

    s: int = Field(..., ge=0, description="v_1..v_s are precolored")
    t: int = Field(..., ge=1, description="v_t..v_n are precolored; n + 1 when the suffix is empty")
    pos: tuple[int | None, ...] = Field(..., description="pos[c-1]: first j >= t with color c, None for infinity")

    @classmethod
    def of(cls, instance: DPEDInstance) -> "EndPrecoloredView":
        n, pre = instance.n, instance.precoloring
        s = 0
        while s < n and (s + 1) in pre:
            s += 1
        t = n + 1
        while t - 1 > s and (t - 1) in pre:
            t -= 1
        if len(pre) != s + (n + 1 - t):
            raise NotEndPrecolored("precolored vertices must form a prefix and a suffix of the path")
        pos: list[int | None] = [None] * instance.num_colors
        for j in range(t, n + 1):
            color = pre[j]
            if pos[color - 1] is None:
                pos[color - 1] = j
        return cls(s=s, t=t, pos=tuple(pos))


class DemandHeap:
    """
    Max-heap of colors keyed by (remaining demand desc, pos asc, color asc).

    Entries go stale when a demand changes and are dropped on sight. Colors
    blocked at the current vertex are popped aside and pushed back afterwards.
    """

    def __init__(self, demands: Sequence[int], pos: Sequence[int | None] | None = None):
        self.remaining = list(demands)
        if pos is None:
            self._pos: list[float] = [0] * len(self.remaining)
        else:
            self._pos = [p if p is not None else math.inf for p in pos]
        self._heap = [(-r, self._pos[c], c + 1) for c, r in enumerate(self.remaining) if r > 0]
        heapq.heapify(self._heap)

    def best(self, blocked: Container[int]) -> int | None:
        """Unblocked color with positive demand ranking first, or None."""
        aside = []
        chosen = None
        while self._heap:
            neg, _, color = self._heap[0]
            if -neg != self.remaining[color - 1]:
                heapq.heappop(self._heap)
            elif color in blocked:
                aside.append(heapq.heappop(self._heap))
            else:
                chosen = color
                break
        for entry in aside:
            heapq.heappush(self._heap, entry)
        return chosen

    def fallback(self, blocked: Container[int]) -> int | None:
        """Unblocked color with the largest remaining demand, even if not positive."""
        candidates = [c for c in range(1, len(self.remaining) + 1) if c not in blocked]
        if not candidates:
            return None
        return min(candidates, key=lambda c: (-self.remaining[c - 1], self._pos[c - 1], c))

    def take(self, color: int) -> None:
        self.remaining[color - 1] -= 1
        left = self.remaining[color - 1]
        if left > 0:
            heapq.heappush(self._heap, (-left, self._pos[color - 1], color))

    def give_back(self, color: int) -> None:
        self.remaining[color - 1] += 1
        left = self.remaining[color - 1]
        if left > 0:
            heapq.heappush(self._heap, (-left, self._pos[color - 1], color))


def window_colors(colors: Sequence[int], vertex: int, d: int, lo: int = 1, hi: int | None = None) -> set[int]:
    """Colors within distance d of `vertex` (1-based; colors[0] unused, 0 = uncolored)."""
    hi = len(colors) - 1 if hi is None else hi
    return {colors[u] for u in range(max(lo, vertex - d), min(hi, vertex + d) + 1) if u != vertex and colors[u]}


def greedy_fill(
    colors: list[int],
    order: Iterable[int],
    d: int,
    heap: DemandHeap,
    relaxed: bool = False,
) -> int | None:
    """
    Color the vertices in `order` in place, one greedy choice each.

    Returns the first vertex left without a choice, or None when all were colored.
    In relaxed mode a vertex with no positive-demand feasible color takes the
    feasible color of largest residual demand instead.
    """
    for v in order:
        blocked = window_colors(colors, v, d)
        color = heap.best(blocked)
        if color is None and relaxed:
            color = heap.fallback(blocked)
        if color is None:
            return v
        colors[v] = color
        heap.take(color)
    return None


def solve_greedy(instance: DPEDInstance) -> Coloring | None:
    """Exact answer for an end-precolored single path."""
    if not instance.topology.is_single_path:
        raise NotSinglePath("greedy solver needs a single path")
    if instance.demands is None:
        raise MissingDemands("greedy solver needs demands")
    view = EndPrecoloredView.of(instance)
    if find_distance_conflict(instance.topology, instance.precoloring, instance.d):
        logger.debug("greedy: precoloring violates distance %d", instance.d)
        return None
    colors = [0] * (instance.n + 1)
    for v, color in instance.precoloring.items():
        colors[v] = color
    heap = DemandHeap(instance.demands, view.pos)
    stuck = greedy_fill(colors, range(view.s + 1, view.t), instance.d, heap)
    if stuck is not None:
        logger.debug("greedy: no feasible color with positive demand at vertex %d", stuck)
        return None
    if any(heap.remaining):
        logger.debug("greedy: demands left over %s", heap.remaining)
        return None
    return Coloring(assignment=tuple(colors[1:]))
