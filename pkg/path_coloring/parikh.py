"""
Exact DPED via automata.

A d-distance coloring of a path with colors 1..c is a word over 1..c with no
letter repeated within any window of d+1 positions; build_distance_nfa accepts
exactly those words. Precolored vertices become positional constraints and
demands become a target letter count, so DPED turns into constrained Parikh
membership. build_cmpl_automaton removes the constraints by interleaving
counter letters and chaining one copy of the automaton per constraint.
"""
import logging
import math
from collections.abc import Iterator
from itertools import permutations

from path_coloring.config import SolverLimits, resolve_limits
from path_coloring.errors import BudgetExceeded, ConstraintConflict, MissingDemands, PositionOutOfRange
from path_coloring.models import Coloring, DPEDInstance, Nfa, ParikhQuery
from path_coloring.reductions import concatenate_paths

logger = logging.getLogger(__name__)


def distance_nfa_size(k: int, t: int) -> int:
    """Number of repeat-free words of length <= t over k letters."""
    return sum(math.perm(k, length) for length in range(min(k, t) + 1))


def build_distance_nfa(k: int, t: int) -> Nfa:
    """
    Automaton over 1..k accepting words with no equal letters within distance t.

    States are the repeat-free words of length <= t (the last t letters read),
    ordered by length then lexicographically; state 0 is the empty word.
    """
    if k < 1 or t < 0:
        raise ValueError("need k >= 1 and t >= 0")
    words = [w for length in range(min(k, t) + 1) for w in permutations(range(1, k + 1), length)]
    index = {w: i for i, w in enumerate(words)}
    transitions = []
    for w in words:
        for letter in range(1, k + 1):
            if letter in w:
                continue
            nxt = (*w, letter)[-t:] if t > 0 else ()
            transitions.append((index[w], letter, index[nxt]))
    labels = tuple(",".join(map(str, w)) or "ε" for w in words)
    return Nfa(
        alphabet_size=k,
        num_states=len(words),
        initial=0,
        accepting=frozenset(range(len(words))),
        transitions=tuple(transitions),
        labels=labels,
    )


def cmpl_state(copy: int, out: bool, state: int, num_base_states: int) -> int:
    """Index of the in- or out-version of a base state inside copy `copy` (1-based)."""
    return ((copy - 1) * 2 + int(out)) * num_base_states + state


def split_cmpl_state(index: int, num_base_states: int) -> tuple[int, bool, int]:
    """Inverse of cmpl_state: (copy, out, base state)."""
    block, state = divmod(index, num_base_states)
    copy, out = divmod(block, 2)
    return copy + 1, bool(out), state


def build_cmpl_automaton(nfa: Nfa, query: ParikhQuery) -> tuple[Nfa, tuple[int, ...]]:
    """
    Product automaton whose unconstrained Parikh membership answers `query`.

    With constraints (i_1, beta_1) < ... < (i_p, beta_p) and m = sum(target), copy j
    reads the letters between i_{j-1} and i_j. Every original letter moves from an
    out-state to an in-state and must be followed by the counter letter k + j of its
    copy; reading beta_j from an out-state of copy j jumps into copy j + 1. The
    expanded target asks for m_j = i_j - i_{j-1} counter letters of copy j
    (i_0 = 1, i_{p+1} = m + 1).
    """
    k = nfa.alphabet_size
    if len(query.target) != k:
        raise ValueError(f"target has {len(query.target)} entries, alphabet has {k} letters")
    fixed: dict[int, int] = {}
    for position, letter in sorted(set(query.constraints)):
        if fixed.setdefault(position, letter) != letter:
            raise ConstraintConflict(f"position {position} fixed to both {fixed[position]} and {letter}")
    anchors = sorted(fixed.items())
    p, m = len(anchors), query.length
    # position m + 1 leaves a zero-length last gap; membership then fails on its own
    if anchors and anchors[-1][0] > m + 1:
        raise PositionOutOfRange(f"constraint at position {anchors[-1][0]} makes a gap negative for words of length {m}")
    bounds = [1, *(position for position, _ in anchors), m + 1]
    gaps = [bounds[j + 1] - bounds[j] for j in range(p + 1)]

    nq = nfa.num_states
    transitions = []
    for copy in range(1, p + 2):
        for q, letter, r in nfa.transitions:
            transitions.append((cmpl_state(copy, True, q, nq), letter, cmpl_state(copy, False, r, nq)))
        for q in range(nq):
            transitions.append((cmpl_state(copy, False, q, nq), k + copy, cmpl_state(copy, True, q, nq)))
        if copy <= p:
            beta = anchors[copy - 1][1]
            for q, letter, r in nfa.transitions:
                if letter == beta:
                    transitions.append((cmpl_state(copy, True, q, nq), beta, cmpl_state(copy + 1, False, r, nq)))
    product = Nfa(
        alphabet_size=k + p + 1,
        num_states=2 * nq * (p + 1),
        initial=cmpl_state(1, True, nfa.initial, nq),
        accepting=frozenset(cmpl_state(p + 1, True, q, nq) for q in nfa.accepting),
        transitions=tuple(transitions),
    )
    logger.debug("cmpl automaton: %d states, %d transitions, %d constraints", product.num_states, len(transitions), p)
    return product, (*query.target, *gaps)


def decide_parikh_membership(
    nfa: Nfa,
    target: tuple[int, ...] | list[int],
    limits: SolverLimits | None = None,
) -> tuple[int, ...] | None:
    """
    An accepted word whose letter counts equal `target`, or None.

    Depth-first search over (state, residual counts) with a memo of dead pairs;
    exponential only in sum(target).
    """
    limits = resolve_limits(limits)
    total = sum(target)
    if total > limits.parikh_budget:
        raise BudgetExceeded(f"target sum {total} exceeds the Parikh budget of {limits.parikh_budget}")
    if len(target) != nfa.alphabet_size:
        raise ValueError("target length must equal the alphabet size")
    adjacency = nfa.adjacency()
    dead: set[tuple[int, tuple[int, ...]]] = set()

    def search(state: int, residual: tuple[int, ...]) -> tuple[int, ...] | None:
        if not any(residual):
            return () if state in nfa.accepting else None
        if (state, residual) in dead:
            return None
        for letter, nxt in adjacency.get(state, ()):
            if residual[letter - 1]:
                rest = search(nxt, residual[: letter - 1] + (residual[letter - 1] - 1,) + residual[letter:])
                if rest is not None:
                    return (letter, *rest)
        dead.add((state, residual))
        return None

    word = search(nfa.initial, tuple(target))
    logger.debug("parikh membership: %d dead pairs explored", len(dead))
    return word


def dped_automaton(instance: DPEDInstance) -> tuple[Nfa, tuple[int, ...]]:
    """Product automaton and expanded target for a single-path DPED instance with demands."""
    nfa = build_distance_nfa(instance.num_colors, instance.d)
    query = ParikhQuery(
        target=tuple(instance.lifted_demands()),
        constraints=tuple(sorted(instance.precoloring.items())),
    )
    return build_cmpl_automaton(nfa, query)


def solve_dped_fpt(instance: DPEDInstance, limits: SolverLimits | None = None) -> Coloring | None:
    """Exact DPED through the distance automaton; multi-path input is concatenated first."""
    limits = resolve_limits(limits)
    if instance.demands is None:
        raise MissingDemands("automaton solver needs demands")
    if instance.n == 0:
        return Coloring(assignment=()) if not any(instance.demands) else None
    if not instance.topology.is_single_path:
        single, originals = concatenate_paths(instance)
        solution = solve_dped_fpt(single, limits)
        return solution.restrict(originals) if solution is not None else None
    if not instance.is_demand_consistent():
        return None
    size = distance_nfa_size(instance.num_colors, instance.d)
    if size > limits.dp_state_cap:
        raise BudgetExceeded(f"distance automaton would have {size} states, cap is {limits.dp_state_cap}")
    product, target = dped_automaton(instance)
    word = decide_parikh_membership(product, target, limits)
    if word is None:
        return None
    # original letters sit at odd positions, counter letters at even ones
    return Coloring(assignment=word[0::2])


def enumerate_language(nfa: Nfa, max_length: int) -> Iterator[tuple[int, ...]]:
    """Accepted words of length <= max_length, shortest first, then lexicographically."""
    table: dict[tuple[int, int], set[int]] = {}
    for q, letter, r in nfa.transitions:
        table.setdefault((q, letter), set()).add(r)
    frontier: list[tuple[tuple[int, ...], frozenset[int]]] = [((), frozenset({nfa.initial}))]
    for length in range(max_length + 1):
        for word, states in frontier:
            if states & nfa.accepting:
                yield word
        if length == max_length:
            break
        frontier = [
            ((*word, letter), nxt)
            for word, states in frontier
            for letter in range(1, nfa.alphabet_size + 1)
            if (nxt := frozenset(r for q in states for r in table.get((q, letter), ())))
        ]


def dump_nfa(nfa: Nfa) -> str:
    """Line-based transition list: `state letter state` per line."""
    header = [
        f"# states {nfa.num_states} alphabet {nfa.alphabet_size}",
        f"# initial {nfa.initial}",
        f"# accepting {' '.join(map(str, sorted(nfa.accepting)))}",
    ]
    return "\n".join(header + [f"{q} {letter} {r}" for q, letter, r in sorted(nfa.transitions)]) + "\n"
