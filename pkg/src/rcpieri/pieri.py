"""
Row insertion of a sigma[r, m] rc-graph into an rc-graph, and its inverse.

The insertion keeps a ledger of transposition pairs ``(a, b)`` with
``a <= r < b``; at every moment the working crossing set realizes
``w * t_{a1 b1} * ... * t_{al bl}``.  Strands are named by start row and all
local configurations are read as ``(west strand, south strand)`` of a cell.

Configurations used below:

* bump, insertable:   ``(s, t)`` with ``s <= r < t``, or ``(b_i, t)`` with
  ``t > r``; in both ``t`` is not already a ledger b.
* crossing, rectified during insertion: ``(b_i, a_i)`` or ``(b_i, b_j)``
  with ``a_i == a_j``; the pair of the west strand goes.
* crossing, opened by the backward sweeps: ``(a_i, b_i)`` or
  ``(b_j, b_i)`` with ``a_i == a_j``; the pair of the south strand goes.
* bump, re-added by the inverse: ``(t, s)`` with ``s <= r < t``, or
  ``(t, b_i)`` with ``t > r``; ``t`` not a ledger b.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field

from .permutation import Permutation
from .rcgraph import Cell, Composition, RcGraph, Tracing, grid_size, trace

__all__ = [
    "AbSequence",
    "PieriError",
    "LedgerError",
    "InfeasibleInsertion",
    "ViolatedGuarantee",
    "AmbiguousExpansion",
    "InvariantViolation",
    "ledger_insert_case1",
    "ledger_insert_case2",
    "ledger_product",
    "is_admissible",
    "insert",
    "algorithm2",
    "inverse",
    "inverse_for",
    "admissible_expansion",
    "InsertionResult",
]

Pair = tuple[int, int]


class PieriError(RuntimeError):
    """Base class: every subclass signals a bug or a broken precondition."""


class LedgerError(PieriError):
    pass


class InfeasibleInsertion(PieriError):
    pass


class ViolatedGuarantee(PieriError):
    pass


class AmbiguousExpansion(PieriError):
    pass


class InvariantViolation(PieriError):
    pass


# -- the (a, b) ledger ---------------------------------------------------

@dataclass(frozen=True)
class AbSequence:
    pairs: tuple[Pair, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(tuple(p) for p in self.pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __getitem__(self, i):
        return self.pairs[i]

    def __str__(self) -> str:
        return " ".join(f"({a},{b})" for a, b in self.pairs) or "()"

    @property
    def a_values(self) -> tuple[int, ...]:
        return tuple(a for a, _ in self.pairs)

    @property
    def b_values(self) -> tuple[int, ...]:
        return tuple(b for _, b in self.pairs)

    def problems(self, r: int | None = None) -> list[str]:
        out = []
        a = self.a_values
        if any(x > y for x, y in zip(a, a[1:])):
            out.append(f"a-values not weakly increasing: {a}")
        b = self.b_values
        if len(set(b)) != len(b):
            out.append(f"b-values repeat: {b}")
        if r is not None:
            if any(x > r or x < 1 for x in a):
                out.append(f"a-value outside 1..{r}: {a}")
            if any(y <= r for y in b):
                out.append(f"b-value not above {r}: {b}")
        return out

    def check(self, r: int | None = None) -> AbSequence:
        bad = self.problems(r)
        if bad:
            raise LedgerError("; ".join(bad))
        return self


def _case1_index(pairs: Sequence[Pair], s: int) -> int:
    # just past the last pair whose a-value is <= s
    idx = 0
    for k, (a, _) in enumerate(pairs):
        if a <= s:
            idx = k + 1
    return idx


def ledger_insert_case1(seq: AbSequence, s: int, t: int) -> AbSequence:
    """Add (s, t) at the end of the run of a-values equal to s."""
    pairs = list(seq.pairs)
    if t in seq.b_values:
        raise LedgerError(f"{t} is already a b-value in {seq}")
    pairs.insert(_case1_index(pairs, s), (s, t))
    return AbSequence(tuple(pairs))


def ledger_insert_case2(seq: AbSequence, i: int, t: int) -> AbSequence:
    """Add (a_i, t) immediately before the i-th pair (1-based)."""
    if t in seq.b_values:
        raise LedgerError(f"{t} is already a b-value in {seq}")
    if not 1 <= i <= len(seq):
        raise LedgerError(f"no pair number {i} in {seq}")
    pairs = list(seq.pairs)
    pairs.insert(i - 1, (pairs[i - 1][0], t))
    return AbSequence(tuple(pairs))


def ledger_product(w: Permutation, pairs: Iterable[Pair]) -> Permutation:
    for a, b in pairs:
        w = w.right_transpose(a, b)
    return w


def is_admissible(
    w: Permutation,
    wp: Permutation,
    r: int,
    pairs: Sequence[Pair],
    *,
    chain: bool = True,
) -> bool:
    """Conditions on a factorization wp = w t_{a1 b1} ... t_{am bm}.

    b-values distinct and above r, a-values weakly increasing and at most r,
    wp(b_i) < wp(b_j) < wp(a_i) whenever i < j and a_i == a_j, and the
    length grows by m.  With ``chain`` (the default) every prefix product
    must grow the length by exactly one; without it only the total is
    checked, which admits spurious factorizations such as
    [2,3,1] t_{13} t_{25} = [1,5,2,4,3].
    """
    pairs = tuple(pairs)
    m = len(pairs)
    a = [p[0] for p in pairs]
    b = [p[1] for p in pairs]
    if len(set(b)) != m or any(x <= r for x in b):
        return False
    if any(x < 1 for x in a) or any(x > y for x, y in zip(a, a[1:])) or (m and a[-1] > r):
        return False
    if ledger_product(w, pairs) != wp or wp.length() != w.length() + m:
        return False
    if chain:
        u, length = w, w.length()
        for x, y in pairs:
            u = u.right_transpose(x, y)
            length += 1
            if u.length() != length:
                return False
    for i, j in itertools.combinations(range(m), 2):
        if a[i] == a[j] and not wp(b[i]) < wp(b[j]) < wp(a[i]):
            return False
    return True


# -- the working state ---------------------------------------------------

@dataclass
class _Run:
    """Mutable state of one insertion or inverse run."""

    w: Permutation
    r: int
    cells: set[Cell]
    ledger: list[Pair]
    floor: int  # tracing is at least this large
    verify: bool = False
    log: list[str] | None = None
    checks: dict[str, int] = field(default_factory=dict)
    _tracing: Tracing | None = None

    # tracing is cached until the next mutation
    def tracing(self) -> Tracing:
        if self._tracing is None:
            self._tracing = trace(self.cells, grid_size(self.cells, self.floor))
        return self._tracing

    def limit(self, row: int) -> int:
        """Largest column worth looking at in ``row``."""
        return self.tracing().size - row

    def labels(self, i: int, j: int) -> tuple[int, int]:
        return self.tracing().labels(i, j)

    def bvalues(self) -> dict[int, int]:
        return {b: k for k, (_, b) in enumerate(self.ledger)}

    def note(self, text: str):
        if self.log is not None:
            self.log.append(text)

    def _count(self, name: str):
        self.checks[name] = self.checks.get(name, 0) + 1

    def add(self, cell: Cell, pair: Pair, case: str):
        self.cells.add(cell)
        self._tracing = None
        self.note(f"ADD ({cell[0]},{cell[1]}) pair=({pair[0]},{pair[1]}) case={case}")
        self.after_step()

    def remove(self, cell: Cell, pair: Pair):
        self.cells.discard(cell)
        self._tracing = None
        self.note(f"DEL ({cell[0]},{cell[1]}) pair=({pair[0]},{pair[1]})")
        self.after_step()

    def after_step(self):
        if not self.verify:
            return
        AbSequence(tuple(self.ledger)).check(self.r)
        got = self.tracing().permutation()
        want = ledger_product(self.w, self.ledger)
        if got != want:
            raise InvariantViolation(
                f"strands give {got}, ledger gives {want} "
                f"(cells {sorted(self.cells)}, ledger {self.ledger})"
            )
        self._count("ledger-permutation")

    # configuration tests; each returns what to do or None

    def insertable(self, west: int, south: int):
        """Bump that may become a crossing: (pair, ledger index, case)."""
        bs = self.bvalues()
        if south <= self.r or south in bs:
            return None
        if west <= self.r:
            return (west, south), _case1_index(self.ledger, west), "1"
        if west in bs:
            k = bs[west]
            return (self.ledger[k][0], south), k, "2"
        return None

    def rectifiable(self, west: int, south: int) -> int | None:
        """Crossing to undo while rectifying: index of the west strand's pair."""
        bs = self.bvalues()
        k = bs.get(west)
        if k is None:
            return None
        a = self.ledger[k][0]
        if south == a:
            return k
        k2 = bs.get(south)
        if k2 is not None and self.ledger[k2][0] == a:
            return k
        return None

    def openable(self, west: int, south: int) -> int | None:
        """Crossing removed when opening or inverting: index of the south pair."""
        bs = self.bvalues()
        k = bs.get(south)
        if k is None:
            return None
        a = self.ledger[k][0]
        if west == a:
            return k
        k2 = bs.get(west)
        if k2 is not None and self.ledger[k2][0] == a:
            return k
        return None

    def readdable(self, west: int, south: int):
        """Bump the inverse may cross: (pair, ledger index, case)."""
        bs = self.bvalues()
        if west <= self.r or west in bs:
            return None
        if south <= self.r:
            s = south
            # a_{i-1} <= s < a_{i+1}: after the run of a-values equal to s
            return (s, west), _case1_index(self.ledger, s), "1"
        if south in bs:
            k = bs[south]
            return (self.ledger[k][0], west), k, "2"
        return None

    # compound steps

    def insert_rightmost(self, row: int):
        for j in range(self.limit(row), 0, -1):
            if (row, j) in self.cells:
                continue
            hit = self.insertable(*self.labels(row, j))
            if hit is not None:
                pair, idx, case = hit
                self.ledger.insert(idx, pair)
                self.add((row, j), pair, case)
                return
        raise InfeasibleInsertion(f"no insertable position in row {row}")

    def rectify(self, row: int):
        j = 1
        while j <= self.limit(row):
            if (row, j) in self.cells:
                k = self.rectifiable(*self.labels(row, j))
                if k is not None:
                    pair = self.ledger.pop(k)
                    self.remove((row, j), pair)
                    self._readd_left(row, j)
            j += 1

    def _readd_left(self, row: int, j: int):
        for jp in range(j - 1, 0, -1):
            if (row, jp) in self.cells:
                continue
            hit = self.insertable(*self.labels(row, jp))
            if hit is not None:
                pair, idx, case = hit
                self.ledger.insert(idx, pair)
                self.add((row, jp), pair, case)
                return
        raise ViolatedGuarantee(
            f"rectifying row {row}: no re-insertion point west of column {j}"
        )

    def strand_columns(self, row: int) -> dict[int, int]:
        """Column where each strand leaves the top of ``row``."""
        t = self.tracing()
        out = {}
        for j in range(1, t.size - row + 1):
            cell = (row, j)
            west, south = t.west[cell], t.south[cell]
            out[south if cell in self.cells else west] = j
        return out

    def check_order(self, row: int):
        """Within each run of equal a, the b strands sit west of strand a in
        ledger order where they leave the top of ``row``."""
        cols = self.strand_columns(row)
        runs: dict[int, list[int]] = {}
        for a, b in self.ledger:
            runs.setdefault(a, []).append(b)
        for a, bs in runs.items():
            pos = [cols.get(b) for b in bs] + [cols.get(a)]
            if None in pos or any(x >= y for x, y in zip(pos, pos[1:])):
                raise InvariantViolation(
                    f"row {row}: strands {bs} / {a} at columns {pos}, ledger {self.ledger}"
                )
        self._count("b-strand-order")

    def snapshot(self) -> tuple[set[Cell], list[Pair]]:
        return set(self.cells), list(self.ledger)

    def result(self) -> RcGraph:
        return RcGraph(self.cells)


def _sweep_down(run: _Run, start_row: int, remove_until_empty=True):
    """Shared body of the opening sweep: top-down, right-to-left openings."""
    row = start_row
    size = run.tracing().size
    while run.ledger:
        if row >= size:
            raise ViolatedGuarantee(f"ledger {run.ledger} left after the last row")
        j = run.limit(row)
        while j >= 1 and run.ledger:
            if (row, j) in run.cells:
                k = run.openable(*run.labels(row, j))
                if k is not None:
                    pair = run.ledger.pop(k)
                    run.remove((row, j), pair)
            j -= 1
        row += 1


# -- public algorithms ---------------------------------------------------

@dataclass
class InsertionResult:
    graph: RcGraph
    ledger: AbSequence
    trace: list[str]
    checks: dict[str, int]

    def __iter__(self):
        return iter((self.graph, self.ledger))


def _as_comp(comp, r: int) -> Composition:
    if not isinstance(comp, Composition):
        comp = Composition(tuple(comp))
    if comp.r != r:
        raise ValueError(f"composition {comp} must have exactly r={r} parts")
    return comp


def insert(
    D: RcGraph,
    r: int,
    comp: Composition | Sequence[int],
    *,
    verify: bool = False,
    on_row_done: Callable[[set[Cell], list[Pair], int], None] | None = None,
) -> InsertionResult:
    """Insert the sigma[r, m] rc-graph with row counts ``comp`` into D.

    Rows are handled from the lowest nonempty row of ``comp`` up to row 1.
    Each row is first rectified (left to right), then receives its new
    crossings one at a time at the rightmost insertable bump.
    ``on_row_done`` sees a copy of the state after each row.
    """
    comp = _as_comp(comp, r)
    if r < 1:
        raise ValueError("level r must be at least 1")
    w = permutation_of_reduced(D)
    run = _Run(w, r, set(D.crossings), [], w.size + comp.m + 1, verify, [])
    rows = [s for s, k in enumerate(comp.parts, 1) if k]
    if not rows:
        return InsertionResult(RcGraph(D.crossings), AbSequence(), [], run.checks)
    for row in range(max(rows), 0, -1):
        run.note(f"ROW {row}")
        if verify and run.ledger:
            # strands as they enter the row from below
            run.check_order(row + 1)
        run.rectify(row)
        if verify and run.ledger:
            run.check_order(row)
        for _ in range(comp.parts[row - 1]):
            run.insert_rightmost(row)
        if verify:
            _check_lower_part(run, row)
        if on_row_done is not None:
            cells, ledger = run.snapshot()
            on_row_done(cells, ledger, row)
    out = run.result()
    ledger = AbSequence(tuple(run.ledger)).check(r)
    if not out.is_reduced():
        raise ViolatedGuarantee(f"insertion produced a non-reduced graph {out!r}")
    return InsertionResult(out.with_window(max(out.window, w.size + comp.m)), ledger, run.log, run.checks)


def _check_lower_part(run: _Run, row: int):
    """No two strands cross twice on or below ``row``."""
    t = run.tracing()
    seen = set()
    for cell in run.cells:
        if cell[0] >= row:
            pair = frozenset(t.labels(*cell))
            if pair in seen:
                raise InvariantViolation(f"double crossing of strands {set(pair)} at or below row {row}")
            seen.add(pair)
    run._count("lower-part-reduced")


def permutation_of_reduced(D: RcGraph) -> Permutation:
    w = D.permutation()
    if len(D) != w.length():
        from .rcgraph import NotReducedError

        raise NotReducedError(f"{D!r} is not a reduced rc-graph")
    return w


def algorithm2(
    cells: Iterable[Cell],
    ledger: AbSequence | Sequence[Pair],
    start_row: int,
    *,
    w: Permutation | None = None,
    r: int | None = None,
    verify: bool = False,
) -> RcGraph:
    """Open crossings from ``start_row`` down until the ledger is empty.

    The result realizes the permutation the ledger started from.
    """
    cells = set(cells)
    pairs = list(AbSequence(tuple(ledger)).pairs)
    if r is None:
        r = max((a for a, _ in pairs), default=1)
    if w is None:
        w = ledger_product(trace(cells).permutation(), reversed(pairs))
    run = _Run(w, r, cells, pairs, w.size + 1, verify, None)
    _sweep_down(run, start_row)
    return run.result()


def inverse(
    Dp: RcGraph,
    w: Permutation,
    r: int,
    ledger0: AbSequence | Sequence[Pair],
    *,
    verify: bool = False,
) -> tuple[RcGraph, Composition, list[str]]:
    """Undo an insertion: returns (rc-graph of w, composition, trace log)."""
    pairs = list(AbSequence(tuple(ledger0)).check(r).pairs)
    wp = permutation_of_reduced(Dp)
    if ledger_product(w, pairs) != wp:
        raise ValueError(f"ledger {pairs} does not carry {w} to {wp}")
    run = _Run(w, r, set(Dp.crossings), pairs, wp.size + 1, verify, [])
    counts = [0] * r
    row = 1
    size = run.tracing().size
    while run.ledger:
        if row >= size:
            raise ViolatedGuarantee(f"ledger {run.ledger} left after the last row")
        run.note(f"ROW {row}")
        j = run.limit(row)
        while j >= 1 and run.ledger:
            if (row, j) in run.cells:
                k = run.openable(*run.labels(row, j))
                if k is not None:
                    pair = run.ledger.pop(k)
                    run.remove((row, j), pair)
                    if not _readd_right(run, row, j):
                        if row > r:
                            raise ViolatedGuarantee(
                                f"inverse recorded row {row} beyond level {r}"
                            )
                        counts[row - 1] += 1
            j -= 1
        row += 1
    out = run.result()
    if not out.is_reduced() or out.permutation() != w:
        raise ViolatedGuarantee(f"inverse produced {out!r}, not an rc-graph of {w}")
    return out.with_window(max(out.window, w.size)), Composition(tuple(counts)), run.log


def _readd_right(run: _Run, row: int, j: int) -> bool:
    for jj in range(j + 1, run.limit(row) + 1):
        if (row, jj) in run.cells:
            continue
        hit = run.readdable(*run.labels(row, jj))
        if hit is not None:
            pair, idx, case = hit
            run.ledger.insert(idx, pair)
            run.add((row, jj), pair, case)
            return True
    return False


def admissible_expansion(w: Permutation, r: int, m: int) -> list[tuple[Permutation, AbSequence]]:
    """Every w' = w t_{a1 b1} ... t_{am bm} meeting the four conditions.

    Brute force over weakly increasing a-lists in 1..r and ordered lists of
    distinct b in r+1..n+m.  Each w' must come from exactly one ledger.
    """
    if m == 0:
        return [(w, AbSequence())]
    top = max(w.size, r) + m
    found: dict[Permutation, tuple[Pair, ...]] = {}
    for a in itertools.combinations_with_replacement(range(1, r + 1), m):
        for b in itertools.permutations(range(r + 1, top + 1), m):
            pairs = tuple(zip(a, b))
            wp = ledger_product(w, pairs)
            if not is_admissible(w, wp, r, pairs):
                continue
            if wp in found:
                raise AmbiguousExpansion(
                    f"{wp} has two admissible ledgers: {found[wp]} and {pairs}"
                )
            found[wp] = pairs
    return [(wp, AbSequence(found[wp])) for wp in sorted(found)]


def inverse_for(Dp: RcGraph, w: Permutation, r: int, m: int, **kw):
    """``inverse`` with the ledger looked up from the admissible expansion."""
    wp = permutation_of_reduced(Dp)
    for cand, ledger in admissible_expansion(w, r, m):
        if cand == wp:
            return inverse(Dp, w, r, ledger, **kw)
    raise ValueError(f"{wp} is not in the expansion of P_{w} h_{m}(x1..x{r})")
