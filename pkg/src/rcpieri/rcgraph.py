"""
RC-graphs (pipe dreams) as finite sets of crossing cells.

Cell ``(i, j)`` is row ``i`` (counted downward) and column ``j`` (counted
rightward), both from 1.  A strand enters each row ``k`` from the left edge
and travels north and east: at a crossing tile it keeps its direction, at
a bump (every other cell) a strand arriving from the west turns north and a
strand arriving from the south turns east.  Strands are labelled by the row
they start in; the strand of row ``k`` leaves the top edge in column
``w(k)``.  A crossing at ``(i, j)`` reads as the letter ``i + j - 1``.
"""

from __future__ import annotations

import json
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass
from functools import lru_cache

from .permutation import Permutation, Word, reduced_words, sigma
from .polynomial import ONE, MultiPoly, monomial, weak_compositions

__all__ = [
    "Cell",
    "RcGraph",
    "Composition",
    "NotReducedError",
    "RcGraphParseError",
    "Tracing",
    "trace",
    "permutation_of",
    "word_and_sequence",
    "is_compatible",
    "monomial_of",
    "bottom",
    "ladder_moves",
    "inverse_ladder_moves",
    "enumerate_rc",
    "enumerate_rc_by_words",
    "compatible_sequences",
    "compositions",
    "sigma_graph",
    "strand_labels",
    "strand_pairs_crossing",
    "reading_order",
    "graph_from_word",
    "render",
    "serialize",
    "parse",
]

Cell = tuple[int, int]


class NotReducedError(ValueError):
    """A graph in which some pair of strands crosses more than once."""


class RcGraphParseError(ValueError):
    def __init__(self, message: str, position: int | str):
        super().__init__(f"{message} (at {position})")
        self.position = position


def _diag(cell: Cell) -> int:
    return cell[0] + cell[1] - 1


class RcGraph:
    """An immutable crossing set inside an ambient window of size N.

    Every crossing satisfies ``i + j - 1 < N``.  The window only fixes the
    drawing size; equality and hashing look at the crossings alone.
    """

    __slots__ = ("crossings", "window")

    def __init__(self, crossings: Iterable[Cell] = (), window: int | None = None):
        cells = frozenset((int(i), int(j)) for i, j in crossings)
        for i, j in cells:
            if i < 1 or j < 1:
                raise ValueError(f"crossing ({i}, {j}) is outside the grid")
        need = max((_diag(c) for c in cells), default=0) + 1
        if window is None:
            window = need
        elif window < need:
            raise ValueError(f"window {window} too small for crossings (needs {need})")
        self.crossings = cells
        self.window = window

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RcGraph):
            return NotImplemented
        return self.crossings == other.crossings

    def __hash__(self) -> int:
        return hash(self.crossings)

    def __len__(self) -> int:
        return len(self.crossings)

    def __contains__(self, cell: object) -> bool:
        return cell in self.crossings

    def __iter__(self):
        return iter(self.sorted())

    def __repr__(self) -> str:
        return f"RcGraph({self.sorted()})"

    def key(self) -> tuple[Cell, ...]:
        return tuple(self.sorted())

    def __lt__(self, other: RcGraph) -> bool:
        return self.key() < other.key()

    def sorted(self) -> list[Cell]:
        return sorted(self.crossings)

    def with_window(self, window: int) -> RcGraph:
        return RcGraph(self.crossings, window)

    def permutation(self) -> Permutation:
        return permutation_of(self)

    def is_reduced(self) -> bool:
        return len(self.crossings) == permutation_of(self).length()

    def row_counts(self, rows: int | None = None) -> tuple[int, ...]:
        top = max((i for i, _ in self.crossings), default=0)
        rows = top if rows is None else rows
        counts = [0] * rows
        for i, _ in self.crossings:
            if i > rows:
                raise ValueError(f"crossing in row {i} beyond {rows} rows")
            counts[i - 1] += 1
        return tuple(counts)


@dataclass(frozen=True)
class Composition:
    """A weak composition (k1, ..., kr): k_s crossings go into row s."""

    parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if len(self.parts) < 1:
            raise ValueError("a composition needs at least one part")
        if any(k < 0 for k in self.parts):
            raise ValueError(f"negative part in {self.parts}")

    @property
    def r(self) -> int:
        return len(self.parts)

    @property
    def m(self) -> int:
        return sum(self.parts)

    def monomial(self) -> MultiPoly:
        return monomial(self.parts)

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))


# -- strand tracing ------------------------------------------------------

@dataclass
class Tracing:
    """Result of following every strand through a square grid.

    ``west[(i, j)]`` and ``south[(i, j)]`` give the start rows of the strands
    entering cell (i, j) from the west and from the south.  They are valid
    for cells with ``i + j <= size``.
    """

    size: int
    exits: list[int]  # exits[k - 1] = top column reached by strand k
    west: dict[Cell, int]
    south: dict[Cell, int]

    def permutation(self) -> Permutation:
        return Permutation(self.exits)

    def labels(self, i: int, j: int) -> tuple[int, int]:
        if i + j > self.size:
            raise ValueError(f"cell ({i}, {j}) lies outside the traced region")
        return self.west[(i, j)], self.south[(i, j)]


def grid_size(crossings: Iterable[Cell], at_least: int = 0) -> int:
    """A tracing size leaving every crossing well inside the staircase."""
    top = max((_diag(c) for c in crossings), default=0)
    return max(top, at_least) + 3


def trace(crossings: Iterable[Cell], size: int | None = None) -> Tracing:
    cells = crossings if isinstance(crossings, (set, frozenset)) else set(crossings)
    if size is None:
        size = grid_size(cells)
    elif size < grid_size(cells) - 1:
        raise ValueError(f"trace size {size} too small for the crossings")
    west: dict[Cell, int] = {}
    south: dict[Cell, int] = {}
    exits = [0] * size
    for k in range(1, size + 1):
        i, j, from_west = k, 1, True
        while True:
            if i == 0:
                exits[k - 1] = j
                break
            if j > size:
                raise ValueError(f"strand {k} left the grid on the east side")
            if from_west:
                west[(i, j)] = k
            else:
                south[(i, j)] = k
            crossing = (i, j) in cells
            # west entrant: east at a crossing, north at a bump
            # south entrant: north at a crossing, east at a bump
            if from_west == crossing:
                j += 1
                from_west = True
            else:
                i -= 1
                from_west = False
    return Tracing(size, exits, west, south)


def permutation_of(D: RcGraph | Iterable[Cell]) -> Permutation:
    """The permutation realized by the strands of D."""
    cells = D.crossings if isinstance(D, RcGraph) else frozenset(D)
    return trace(cells).permutation()


def strand_labels(D: RcGraph | Iterable[Cell], i: int, j: int) -> tuple[int, int]:
    """(west strand, south strand) entering cell (i, j), by start row."""
    cells = D.crossings if isinstance(D, RcGraph) else frozenset(D)
    return trace(cells, grid_size(cells, i + j)).labels(i, j)


def strand_pairs_crossing(D: RcGraph | Iterable[Cell]) -> dict[frozenset, list[Cell]]:
    """For each unordered pair of strands, the cells where they cross."""
    cells = D.crossings if isinstance(D, RcGraph) else frozenset(D)
    t = trace(cells)
    out: dict[frozenset, list[Cell]] = {}
    for c in sorted(cells):
        out.setdefault(frozenset(t.labels(*c)), []).append(c)
    return out


# -- words and compatible sequences --------------------------------------

def reading_order(cells: Iterable[Cell]) -> list[Cell]:
    """Rows top to bottom, right to left within a row."""
    return sorted(cells, key=lambda c: (c[0], -c[1]))


def word_and_sequence(D: RcGraph | Iterable[Cell]) -> tuple[Word, tuple[int, ...]]:
    cells = D.crossings if isinstance(D, RcGraph) else D
    order = reading_order(cells)
    return tuple(_diag(c) for c in order), tuple(c[0] for c in order)


def is_compatible(word: Word, alpha: tuple[int, ...]) -> bool:
    if len(word) != len(alpha):
        return False
    for k, (a, al) in enumerate(zip(word, alpha)):
        if not 1 <= al <= a:
            return False
        if k + 1 < len(word):
            if alpha[k] > alpha[k + 1]:
                return False
            if word[k] < word[k + 1] and alpha[k] == alpha[k + 1]:
                return False
    return True


def compatible_sequences(word: Word) -> list[tuple[int, ...]]:
    """Every compatible sequence for ``word``, by depth-first search."""
    out: list[tuple[int, ...]] = []
    p = len(word)

    def rec(k: int, prefix: list[int]):
        if k == p:
            out.append(tuple(prefix))
            return
        lo = 1
        if k:
            lo = prefix[-1] + (1 if word[k - 1] < word[k] else 0)
        for al in range(lo, word[k] + 1):
            prefix.append(al)
            rec(k + 1, prefix)
            prefix.pop()

    rec(0, [])
    return out


def graph_from_word(word: Word, alpha: tuple[int, ...]) -> RcGraph:
    return RcGraph((al, a - al + 1) for a, al in zip(word, alpha))


def monomial_of(D: RcGraph | Iterable[Cell]) -> MultiPoly:
    cells = D.crossings if isinstance(D, RcGraph) else D
    rows: list[int] = []
    for i, _ in cells:
        rows.extend([0] * (i - len(rows)))
        rows[i - 1] += 1
    return monomial(rows) if rows else ONE


# -- bottom graph and ladder moves ---------------------------------------

def bottom(w: Permutation) -> RcGraph:
    """Left-justified rows whose lengths are the Lehmer code of w."""
    code = w.lehmer_code()
    cells = [(i, c) for i, k in enumerate(code, 1) for c in range(1, k + 1)]
    return RcGraph(cells, max(w.size, 1))


def _require_reduced(D: RcGraph):
    if not D.is_reduced():
        raise NotReducedError(f"{D!r} is not a reduced rc-graph")


def ladder_moves(D: RcGraph) -> list[tuple[tuple[int, int, int], RcGraph]]:
    """Every ladder move available on D.

    Descriptor ``(i, j, m)``: the crossing at (i, j) jumps to (i-m-1, j+1)
    over m rows that are full in columns j and j+1.
    """
    _require_reduced(D)
    cells = D.crossings
    out = []
    for i, j in sorted(cells):
        if (i, j + 1) in cells:
            continue
        top = i - 1
        while top >= 1 and (top, j) in cells and (top, j + 1) in cells:
            top -= 1
        if top < 1 or (top, j) in cells or (top, j + 1) in cells:
            continue
        moved = (cells - {(i, j)}) | {(top, j + 1)}
        out.append(((i, j, i - top - 1), RcGraph(moved, D.window)))
    return out


def inverse_ladder_moves(D: RcGraph) -> list[tuple[tuple[int, int, int], RcGraph]]:
    """Every inverse ladder move; descriptor names the target of the forward move."""
    cells = D.crossings
    out = []
    for p, q in sorted(cells):
        j = q - 1
        if j < 1 or (p, j) in cells:
            continue
        low = p + 1
        while (low, j) in cells and (low, j + 1) in cells:
            low += 1
        if (low, j) in cells or (low, j + 1) in cells:
            continue
        moved = (cells - {(p, q)}) | {(low, j)}
        out.append(((low, j, low - p - 1), RcGraph(moved, D.window)))
    return out


def enumerate_rc(w: Permutation) -> list[RcGraph]:
    """RC(w): the closure of the bottom graph under ladder moves, sorted."""
    return list(_enumerate_rc(w))


@lru_cache(maxsize=4096)
def _enumerate_rc(w: Permutation) -> tuple[RcGraph, ...]:
    start = bottom(w)
    seen = {start.key(): start}
    queue = deque([start])
    while queue:
        D = queue.popleft()
        for _, E in ladder_moves(D):
            k = E.key()
            if k not in seen:
                seen[k] = E
                queue.append(E)
    return tuple(seen[k] for k in sorted(seen))


def enumerate_rc_by_words(w: Permutation) -> list[RcGraph]:
    """RC(w) rebuilt from reduced words and their compatible sequences."""
    window = max(w.size, 1)
    graphs = {
        graph_from_word(word, alpha).with_window(window)
        for word in reduced_words(w)
        for alpha in compatible_sequences(word)
    }
    return sorted(graphs)


# -- rc-graphs of sigma[r, m] --------------------------------------------

def compositions(m: int, r: int) -> list[Composition]:
    return [Composition(c) for c in weak_compositions(m, r)]


@lru_cache(maxsize=None)
def _sigma_table(r: int, m: int) -> dict[tuple[int, ...], RcGraph]:
    table: dict[tuple[int, ...], RcGraph] = {}
    for D in enumerate_rc(sigma(r, m)):
        counts = D.row_counts(r)
        if counts in table:
            raise ValueError(f"two rc-graphs of sigma[{r},{m}] share rows {counts}")
        table[counts] = D
    return table


def sigma_graph(r: int, comp: Composition | Iterable[int]) -> RcGraph:
    """The rc-graph of sigma[r, m] with k_s crossings in row s."""
    if not isinstance(comp, Composition):
        comp = Composition(tuple(comp))
    if comp.r != r:
        raise ValueError(f"composition {comp} does not have {r} parts")
    if comp.m == 0:
        return RcGraph((), r)
    table = _sigma_table(r, comp.m)
    try:
        return table[comp.parts]
    except KeyError:
        raise ValueError(f"no rc-graph of sigma[{r},{comp.m}] with rows {comp}")


# -- text forms ----------------------------------------------------------

def render(D: RcGraph) -> str:
    """ASCII grid: '+' for crossings, '.' elsewhere, with index margins."""
    n = D.window
    gutter = len(str(n))
    lines = [" " * gutter + " " + "".join(str(j % 10) for j in range(1, n + 1))]
    for i in range(1, n + 1):
        row = "".join("+" if (i, j) in D.crossings else "." for j in range(1, n + 1))
        lines.append(f"{i:>{gutter}} {row}")
    return "\n".join(lines)


def serialize(D: RcGraph) -> str:
    return json.dumps(
        {"window": D.window, "crossings": [list(c) for c in D.sorted()]},
        separators=(",", ":"),
    )


def parse(text: str) -> RcGraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RcGraphParseError(exc.msg, exc.pos) from None
    if not isinstance(data, dict):
        raise RcGraphParseError("expected a JSON object", 0)
    extra = set(data) - {"window", "crossings"}
    if extra:
        raise RcGraphParseError(f"unexpected keys {sorted(extra)}", "$")
    if "crossings" not in data:
        raise RcGraphParseError("missing key 'crossings'", "$")
    raw = data["crossings"]
    if not isinstance(raw, list):
        raise RcGraphParseError("'crossings' must be a list", "$.crossings")
    cells = []
    for idx, c in enumerate(raw):
        where = f"$.crossings[{idx}]"
        if (
            not isinstance(c, list)
            or len(c) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in c)
        ):
            raise RcGraphParseError("crossing must be a pair of integers", where)
        if c[0] < 1 or c[1] < 1:
            raise RcGraphParseError("crossing indices are 1-based", where)
        cells.append((c[0], c[1]))
    if len(set(cells)) != len(cells):
        raise RcGraphParseError("duplicate crossing", "$.crossings")
    window = data.get("window")
    if window is not None and (not isinstance(window, int) or isinstance(window, bool)):
        raise RcGraphParseError("'window' must be an integer", "$.window")
    try:
        return RcGraph(cells, window)
    except ValueError as exc:
        raise RcGraphParseError(str(exc), "$.window") from None
