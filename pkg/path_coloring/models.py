"""
Pydantic models for path-coloring instances and solutions.

Vertices and colors are dense 1-based integers. Per-vertex and per-color data
is stored flat: index 0 holds vertex 1 (or color 1).
"""
from bisect import bisect_left
from enum import Enum
from functools import lru_cache
from itertools import accumulate

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class InstanceKind(str, Enum):
    """Header of an instance file."""
    DPED = "DPED"
    LCD = "LCD"
    MSS = "MSS"
    PCE = "PCE"
    NFAQ = "NFAQ"


@lru_cache(maxsize=256)
def _path_ends(lengths: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(accumulate(lengths))


class PathTopology(BaseModel):
    """Disjoint union of paths; vertices numbered 1..n consecutively, path by path."""
    model_config = ConfigDict(frozen=True)

    path_lengths: tuple[int, ...] = Field((), description="Vertex count of each path, in numbering order")

    @field_validator("path_lengths")
    @classmethod
    def _positive_lengths(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        if any(length < 1 for length in v):
            raise ValueError("every path needs at least one vertex")
        return v

    @property
    def n(self) -> int:
        return sum(self.path_lengths)

    @property
    def num_paths(self) -> int:
        return len(self.path_lengths)

    @property
    def is_single_path(self) -> bool:
        return len(self.path_lengths) == 1

    @property
    def path_bounds(self) -> list[tuple[int, int]]:
        """(first, last) vertex of each path, inclusive."""
        ends = list(accumulate(self.path_lengths))
        return [(end - length + 1, end) for end, length in zip(ends, self.path_lengths)]

    def path_index(self) -> list[int]:
        """Path number (0-based) of every vertex, indexed by vertex - 1."""
        return [i for i, length in enumerate(self.path_lengths) for _ in range(length)]

    def path_of(self, v: int) -> int:
        """Path number (0-based) of vertex v."""
        return bisect_left(_path_ends(self.path_lengths), v)

    def same_path(self, u: int, v: int) -> bool:
        return self.path_of(u) == self.path_of(v)

    def distance(self, u: int, v: int) -> int | None:
        """Path distance, or None across paths."""
        return abs(u - v) if self.same_path(u, v) else None


def _check_precoloring(precoloring: dict[int, int], n: int, num_colors: int) -> None:
    for vertex, color in precoloring.items():
        if not 1 <= vertex <= n:
            raise ValueError(f"precolored vertex {vertex} outside 1..{n}")
        if not 1 <= color <= num_colors:
            raise ValueError(f"precolor {color} of vertex {vertex} outside 1..{num_colors}")


def _check_demands(demands: tuple[int, ...] | None, num_colors: int) -> None:
    if demands is None:
        return
    if len(demands) != num_colors:
        raise ValueError(f"expected {num_colors} demands, got {len(demands)}")
    if any(x < 0 for x in demands):
        raise ValueError("demands must be non-negative")


class DPEDInstance(BaseModel):
    """
    Distance precoloring extension with demands.

    demands[c - 1] is the exact number of newly colored vertices that get color c.
    demands=None is the demand-free variant (DPE).
    """
    model_config = ConfigDict(frozen=True)

    topology: PathTopology
    num_colors: int = Field(..., ge=1, description="Colors are 1..num_colors")
    d: int = Field(..., ge=0, description="Equal colors must be more than d apart on a path")
    precoloring: dict[int, int] = Field(default_factory=dict, description="Precolored vertex -> color (the set A)")
    demands: tuple[int, ...] | None = Field(None, description="Per-color demand over uncolored vertices; None for DPE")

    @model_validator(mode="after")
    def _check_ranges(self) -> "DPEDInstance":
        _check_precoloring(self.precoloring, self.topology.n, self.num_colors)
        _check_demands(self.demands, self.num_colors)
        return self

    @property
    def n(self) -> int:
        return self.topology.n

    def free_vertices(self) -> list[int]:
        return [v for v in range(1, self.n + 1) if v not in self.precoloring]

    def precolor_counts(self) -> list[int]:
        counts = [0] * self.num_colors
        for color in self.precoloring.values():
            counts[color - 1] += 1
        return counts

    def lifted_demands(self) -> list[int]:
        """Total occurrences each color must have: demand plus precolored uses."""
        if self.demands is None:
            raise ValueError("instance has no demands")
        return [eta + pre for eta, pre in zip(self.demands, self.precolor_counts())]

    def is_demand_consistent(self) -> bool:
        """True iff the demands add up to the number of uncolored vertices."""
        if self.demands is None:
            return True
        return sum(self.demands) == self.n - len(self.precoloring)


class LCDInstance(BaseModel):
    """List coloring with demands on paths; demands=None is distance list coloring."""
    model_config = ConfigDict(frozen=True)

    topology: PathTopology
    num_colors: int = Field(..., ge=1)
    lists: tuple[frozenset[int], ...] = Field(..., description="Allowed colors per vertex, indexed by vertex - 1")
    demands: tuple[int, ...] | None = Field(None, description="Per-color exact count; None for DLC")
    d: int = Field(1, ge=0, description="Conflict distance; 1 for plain list coloring")

    @model_validator(mode="after")
    def _check_lists(self) -> "LCDInstance":
        if len(self.lists) != self.topology.n:
            raise ValueError(f"expected {self.topology.n} lists, got {len(self.lists)}")
        for vertex, allowed in enumerate(self.lists, start=1):
            if not allowed:
                raise ValueError(f"list of vertex {vertex} is empty")
            if min(allowed) < 1 or max(allowed) > self.num_colors:
                raise ValueError(f"list of vertex {vertex} has colors outside 1..{self.num_colors}")
        _check_demands(self.demands, self.num_colors)
        return self

    @property
    def n(self) -> int:
        return self.topology.n


class Coloring(BaseModel):
    """Total coloring; assignment[v - 1] is the color of vertex v."""
    model_config = ConfigDict(frozen=True)

    assignment: tuple[int, ...]

    @field_validator("assignment")
    @classmethod
    def _positive_colors(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        if any(color < 1 for color in v):
            raise ValueError("colors start at 1")
        return v

    @property
    def n(self) -> int:
        return len(self.assignment)

    def color_of(self, vertex: int) -> int:
        return self.assignment[vertex - 1]

    def restrict(self, vertices: list[int]) -> "Coloring":
        return Coloring(assignment=tuple(self.assignment[v - 1] for v in vertices))


class MssInstance(BaseModel):
    """Multidimensional subset sum: is there a sub-multiset of items summing to target?"""
    model_config = ConfigDict(frozen=True)

    k: int = Field(..., ge=1, description="Dimension")
    items: tuple[tuple[int, ...], ...] = Field((), description="Item vectors in N^k")
    target: tuple[int, ...]

    @model_validator(mode="after")
    def _check_vectors(self) -> "MssInstance":
        for vector in (*self.items, self.target):
            if len(vector) != self.k:
                raise ValueError(f"vector {vector} does not have dimension {self.k}")
            if any(x < 0 for x in vector):
                raise ValueError(f"vector {vector} has a negative entry")
        return self


class UnitIntervalPce(BaseModel):
    """
    Precoloring extension on a unit interval graph given by its representation.

    Vertex i is the interval [left_endpoints[i-1], left_endpoints[i-1] + n].
    """
    model_config = ConfigDict(frozen=True)

    left_endpoints: tuple[int, ...]
    num_colors: int = Field(..., ge=1)
    precoloring: dict[int, int] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_precoloring(self) -> "UnitIntervalPce":
        _check_precoloring(self.precoloring, self.n, self.num_colors)
        return self

    @property
    def n(self) -> int:
        return len(self.left_endpoints)

    def representation_error(self) -> str | None:
        """Why the endpoints are not a valid representation, or None."""
        n = self.n
        endpoints = [x for left in self.left_endpoints for x in (left, left + n)]
        if len(set(endpoints)) != len(endpoints):
            return "interval endpoints are not pairwise distinct"
        out_of_range = [x for x in endpoints if not 0 <= x <= n * n]
        if out_of_range:
            return f"endpoint {out_of_range[0]} outside 0..{n * n}"
        return None

    def adjacent(self, u: int, v: int) -> bool:
        return u != v and abs(self.left_endpoints[u - 1] - self.left_endpoints[v - 1]) <= self.n


class Nfa(BaseModel):
    """Finite automaton over letters 1..alphabet_size with states 0..num_states-1."""
    model_config = ConfigDict(frozen=True)

    alphabet_size: int = Field(..., ge=1)
    num_states: int = Field(..., ge=1)
    initial: int = 0
    accepting: frozenset[int] = frozenset()
    transitions: tuple[tuple[int, int, int], ...] = Field((), description="(state, letter, state) triples")
    labels: tuple[str, ...] | None = Field(None, description="Optional display name per state")

    @model_validator(mode="after")
    def _check_indices(self) -> "Nfa":
        states = range(self.num_states)
        if self.initial not in states:
            raise ValueError(f"initial state {self.initial} out of range")
        if any(q not in states for q in self.accepting):
            raise ValueError("accepting state out of range")
        for q, letter, r in self.transitions:
            if q not in states or r not in states:
                raise ValueError(f"transition ({q}, {letter}, {r}) has an unknown state")
            if not 1 <= letter <= self.alphabet_size:
                raise ValueError(f"transition ({q}, {letter}, {r}) uses an unknown letter")
        if self.labels is not None and len(self.labels) != self.num_states:
            raise ValueError("one label per state")
        return self

    def adjacency(self) -> dict[int, list[tuple[int, int]]]:
        """state -> sorted (letter, next state) pairs."""
        out: dict[int, list[tuple[int, int]]] = {}
        for q, letter, r in sorted(self.transitions):
            out.setdefault(q, []).append((letter, r))
        return out

    def accepts(self, word: tuple[int, ...] | list[int]) -> bool:
        table: dict[tuple[int, int], set[int]] = {}
        for q, letter, r in self.transitions:
            table.setdefault((q, letter), set()).add(r)
        current = {self.initial}
        for letter in word:
            current = {r for q in current for r in table.get((q, letter), ())}
            if not current:
                return False
        return bool(current & self.accepting)


class ParikhQuery(BaseModel):
    """Target letter counts plus (position, letter) constraints."""
    model_config = ConfigDict(frozen=True)

    target: tuple[int, ...]
    constraints: tuple[tuple[int, int], ...] = ()

    @model_validator(mode="after")
    def _check_query(self) -> "ParikhQuery":
        if any(x < 0 for x in self.target):
            raise ValueError("target counts must be non-negative")
        for position, letter in self.constraints:
            if position < 1:
                raise ValueError(f"constraint position {position} must be >= 1")
            if not 1 <= letter <= len(self.target):
                raise ValueError(f"constraint letter {letter} outside 1..{len(self.target)}")
        return self

    @property
    def length(self) -> int:
        return sum(self.target)


class CmplInstance(BaseModel):
    """An automaton and a constrained Parikh query on it."""
    model_config = ConfigDict(frozen=True)

    nfa: Nfa
    query: ParikhQuery

    @model_validator(mode="after")
    def _check_alphabet(self) -> "CmplInstance":
        if len(self.query.target) != self.nfa.alphabet_size:
            raise ValueError("target length must equal the alphabet size")
        return self


Instance = DPEDInstance | LCDInstance | MssInstance | UnitIntervalPce | CmplInstance

KIND_OF_TYPE: dict[type, InstanceKind] = {
    DPEDInstance: InstanceKind.DPED,
    LCDInstance: InstanceKind.LCD,
    MssInstance: InstanceKind.MSS,
    UnitIntervalPce: InstanceKind.PCE,
    CmplInstance: InstanceKind.NFAQ,
}


def kind_of(instance: Instance) -> InstanceKind:
    return KIND_OF_TYPE[type(instance)]
