"""
Text format for instances and solutions.

Line oriented, whitespace-separated tokens, `#` starts a comment, blank lines
are ignored. The first line names the kind (DPED, LCD, MSS, PCE, NFAQ); the
sections that follow are fixed per kind, e.g.

  DPED
  paths 2 3 4
  colors 3
  d 1
  precolor 1
  2 3
  demands
  1 2
  2 2
  3 2

`demands none` marks the demand-free variants (DPE, DLC). Solutions are
`vertex color` lines (`position letter` for NFAQ words).
"""
from collections.abc import Iterable
from pathlib import Path

from pydantic import ValidationError

from path_coloring.errors import ParseError, SemanticError
from path_coloring.models import (
    CmplInstance,
    Coloring,
    DPEDInstance,
    Instance,
    InstanceKind,
    LCDInstance,
    MssInstance,
    Nfa,
    ParikhQuery,
    PathTopology,
    UnitIntervalPce,
    kind_of,
)


class _Lines:
    """Cursor over the significant lines of a file: (line number, tokens)."""

    def __init__(self, text: str):
        self._lines: list[tuple[int, list[str]]] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            tokens = raw.split("#", 1)[0].split()
            if tokens:
                self._lines.append((number, tokens))
        self._at = 0

    @property
    def line(self) -> int:
        if self._at < len(self._lines):
            return self._lines[self._at][0]
        return self._lines[-1][0] + 1 if self._lines else 1

    @property
    def last(self) -> int:
        """Line number of the most recently read line."""
        return self._lines[self._at - 1][0] if self._at else 1

    def done(self) -> bool:
        return self._at >= len(self._lines)

    def next(self, what: str) -> list[str]:
        if self.done():
            raise ParseError(self.line, f"unexpected end of input, expected {what}")
        _, tokens = self._lines[self._at]
        self._at += 1
        return tokens

    def ints(self, tokens: list[str], count: int | None = None) -> list[int]:
        line = self.last
        if count is not None and len(tokens) != count:
            raise ParseError(line, f"expected {count} integers, got {len(tokens)}")
        try:
            return [int(token) for token in tokens]
        except ValueError:
            raise ParseError(line, f"not an integer in {' '.join(tokens)!r}") from None

    def keyword(self, name: str) -> list[str]:
        """Tokens after `name` on the next line."""
        tokens = self.next(f"'{name}'")
        if tokens[0] != name:
            raise ParseError(self.last, f"expected '{name}', got '{tokens[0]}'")
        return tokens[1:]

    def value(self, name: str) -> int:
        return self.ints(self.keyword(name), 1)[0]

    def rows(self, count: int, width: int | None, what: str) -> list[list[int]]:
        if count < 0:
            raise ParseError(self.last, f"negative {what} count")
        return [self.ints(self.next(what), width) for _ in range(count)]

    def finish(self) -> None:
        if not self.done():
            raise ParseError(self.line, "unexpected trailing content")


def _pairs_to_dict(rows: list[list[int]], lines: _Lines, what: str) -> dict[int, int]:
    out: dict[int, int] = {}
    for key, value in rows:
        if key in out:
            raise ParseError(lines.last, f"{what} {key} listed twice")
        out[key] = value
    return out


def _parse_paths(lines: _Lines) -> PathTopology:
    values = lines.ints(lines.keyword("paths"))
    if not values or values[0] != len(values) - 1:
        raise ParseError(lines.last, "'paths' needs a count followed by that many lengths")
    return PathTopology(path_lengths=tuple(values[1:]))


def _parse_demands(lines: _Lines, num_colors: int) -> tuple[int, ...] | None:
    head = lines.keyword("demands")
    if head == ["none"]:
        lines.finish()
        return None
    if head:
        raise ParseError(lines.last, "'demands' is followed by 'none' or by one line per color")
    rows = []
    while not lines.done():
        rows.append(lines.ints(lines.next("demand"), 2))
    if len(rows) != num_colors:
        raise ParseError(lines.line, f"expected {num_colors} demand lines, got {len(rows)}")
    demands = _pairs_to_dict(rows, lines, "color")
    if sorted(demands) != list(range(1, num_colors + 1)):
        raise ParseError(lines.line, f"demand lines must cover colors 1..{num_colors}")
    return tuple(demands[color] for color in range(1, num_colors + 1))


def _parse_dped(lines: _Lines) -> DPEDInstance:
    topology = _parse_paths(lines)
    num_colors = lines.value("colors")
    d = lines.value("d")
    count = lines.value("precolor")
    precoloring = _pairs_to_dict(lines.rows(count, 2, "precolored vertex"), lines, "vertex")
    demands = _parse_demands(lines, num_colors)
    return DPEDInstance(topology=topology, num_colors=num_colors, d=d, precoloring=precoloring, demands=demands)


def _parse_lcd(lines: _Lines) -> LCDInstance:
    topology = _parse_paths(lines)
    num_colors = lines.value("colors")
    d = lines.value("d")
    lines.keyword("lists")
    by_vertex: dict[int, frozenset[int]] = {}
    for _ in range(topology.n):
        vertex, *allowed = lines.ints(lines.next("list"))
        if vertex in by_vertex:
            raise ParseError(lines.last, f"vertex {vertex} listed twice")
        by_vertex[vertex] = frozenset(allowed)
    if sorted(by_vertex) != list(range(1, topology.n + 1)):
        raise ParseError(lines.line, f"list lines must cover vertices 1..{topology.n}")
    demands = _parse_demands(lines, num_colors)
    return LCDInstance(
        topology=topology,
        num_colors=num_colors,
        lists=tuple(by_vertex[v] for v in range(1, topology.n + 1)),
        demands=demands,
        d=d,
    )


def _parse_mss(lines: _Lines) -> MssInstance:
    k = lines.value("dimension")
    count = lines.value("items")
    items = lines.rows(count, k, "item")
    target = lines.ints(lines.keyword("target"), k)
    lines.finish()
    return MssInstance(k=k, items=tuple(tuple(item) for item in items), target=tuple(target))


def _parse_pce(lines: _Lines) -> UnitIntervalPce:
    n = lines.value("intervals")
    lefts = _pairs_to_dict(lines.rows(n, 2, "interval"), lines, "interval")
    if sorted(lefts) != list(range(1, n + 1)):
        raise ParseError(lines.line, f"interval lines must cover vertices 1..{n}")
    num_colors = lines.value("colors")
    count = lines.value("precolor")
    precoloring = _pairs_to_dict(lines.rows(count, 2, "precolored vertex"), lines, "vertex")
    lines.finish()
    return UnitIntervalPce(
        left_endpoints=tuple(lefts[v] for v in range(1, n + 1)),
        num_colors=num_colors,
        precoloring=precoloring,
    )


def _parse_nfaq(lines: _Lines) -> CmplInstance:
    k = lines.value("alphabet")
    states = lines.value("states")
    initial = lines.value("initial")
    accepting = lines.ints(lines.keyword("accepting"))
    if not accepting or accepting[0] != len(accepting) - 1:
        raise ParseError(lines.last, "'accepting' needs a count followed by that many states")
    count = lines.value("transitions")
    transitions = lines.rows(count, 3, "transition")
    target = lines.ints(lines.keyword("target"), k)
    count = lines.value("constraints")
    constraints = lines.rows(count, 2, "constraint")
    lines.finish()
    nfa = Nfa(
        alphabet_size=k,
        num_states=states,
        initial=initial,
        accepting=frozenset(accepting[1:]),
        transitions=tuple(tuple(t) for t in transitions),
    )
    query = ParikhQuery(target=tuple(target), constraints=tuple(tuple(c) for c in constraints))
    return CmplInstance(nfa=nfa, query=query)


_PARSERS = {
    InstanceKind.DPED: _parse_dped,
    InstanceKind.LCD: _parse_lcd,
    InstanceKind.MSS: _parse_mss,
    InstanceKind.PCE: _parse_pce,
    InstanceKind.NFAQ: _parse_nfaq,
}


def parse_instance(text: str) -> Instance:
    """Parse any instance kind; the model type tells which one it was."""
    lines = _Lines(text)
    header = lines.next("an instance kind")
    try:
        kind = InstanceKind(header[0])
    except ValueError:
        raise ParseError(lines.last, f"unknown instance kind '{header[0]}'") from None
    if len(header) != 1:
        raise ParseError(lines.last, "the kind line takes no arguments")
    try:
        return _PARSERS[kind](lines)
    except ValidationError as e:
        raise SemanticError(f"invalid {kind.value} instance: {e.errors()[0]['msg']}") from e


def _demand_lines(demands: tuple[int, ...] | None) -> list[str]:
    if demands is None:
        return ["demands none"]
    return ["demands", *(f"{color} {count}" for color, count in enumerate(demands, start=1))]


def _paths_line(topology: PathTopology) -> str:
    return " ".join(map(str, ("paths", topology.num_paths, *topology.path_lengths)))


def _precolor_lines(precoloring: dict[int, int]) -> list[str]:
    return [f"precolor {len(precoloring)}", *(f"{v} {color}" for v, color in sorted(precoloring.items()))]


def serialize_instance(instance: Instance) -> str:
    kind = kind_of(instance)
    out = [kind.value]
    if isinstance(instance, DPEDInstance):
        out += [_paths_line(instance.topology), f"colors {instance.num_colors}", f"d {instance.d}"]
        out += _precolor_lines(instance.precoloring)
        out += _demand_lines(instance.demands)
    elif isinstance(instance, LCDInstance):
        out += [_paths_line(instance.topology), f"colors {instance.num_colors}", f"d {instance.d}", "lists"]
        out += [" ".join(map(str, (v, *sorted(allowed)))) for v, allowed in enumerate(instance.lists, start=1)]
        out += _demand_lines(instance.demands)
    elif isinstance(instance, MssInstance):
        out += [f"dimension {instance.k}", f"items {len(instance.items)}"]
        out += [" ".join(map(str, item)) for item in instance.items]
        out += [" ".join(map(str, ("target", *instance.target)))]
    elif isinstance(instance, UnitIntervalPce):
        out += [f"intervals {instance.n}"]
        out += [f"{v} {left}" for v, left in enumerate(instance.left_endpoints, start=1)]
        out += [f"colors {instance.num_colors}"]
        out += _precolor_lines(instance.precoloring)
    else:
        nfa, query = instance.nfa, instance.query
        out += [f"alphabet {nfa.alphabet_size}", f"states {nfa.num_states}", f"initial {nfa.initial}"]
        out += [" ".join(map(str, ("accepting", len(nfa.accepting), *sorted(nfa.accepting))))]
        out += [f"transitions {len(nfa.transitions)}", *(f"{q} {letter} {r}" for q, letter, r in nfa.transitions)]
        out += [" ".join(map(str, ("target", *query.target)))]
        out += [f"constraints {len(query.constraints)}", *(f"{pos} {letter}" for pos, letter in query.constraints)]
    return "\n".join(out) + "\n"


def parse_word(text: str) -> tuple[int, ...]:
    """`index value` lines covering 1..m, returned as values in index order."""
    lines = _Lines(text)
    rows = []
    while not lines.done():
        rows.append(lines.ints(lines.next("a pair"), 2))
    by_index = _pairs_to_dict(rows, lines, "index")
    if sorted(by_index) != list(range(1, len(by_index) + 1)):
        raise ParseError(lines.line, f"indices must cover 1..{len(by_index)}")
    return tuple(by_index[i] for i in range(1, len(by_index) + 1))


def parse_coloring(text: str) -> Coloring:
    try:
        return Coloring(assignment=parse_word(text))
    except ValidationError as e:
        raise SemanticError(f"invalid coloring: {e.errors()[0]['msg']}") from e


def serialize_word(word: Iterable[int], comments: Iterable[str] = ()) -> str:
    out = [f"# {line}" for line in comments]
    out += [f"{i} {value}" for i, value in enumerate(word, start=1)]
    return "\n".join(out) + "\n" if out else ""


def serialize_coloring(coloring: Coloring, comments: Iterable[str] = ()) -> str:
    return serialize_word(coloring.assignment, comments)


def read_instance(path: Path | str) -> Instance:
    return parse_instance(Path(path).read_text(encoding="utf-8"))


def write_instance(instance: Instance, path: Path | str) -> None:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(serialize_instance(instance), encoding="utf-8")
