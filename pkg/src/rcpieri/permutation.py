"""
Permutations of the positive integers with finite support.

A permutation is stored as a window of one-line notation ``[w1, ..., wn]``;
every ``i > n`` is implicitly fixed.  Windows grow on demand and two
permutations compare equal once trailing fixed points are trimmed, so an
element of S_4 is the same object as its image in S_7.

>>> w = Permutation.from_one_line([3, 2, 1, 5, 4])
>>> w.length(), w.lehmer_code()
(4, (2, 1, 0, 1, 0))
>>> word_to_permutation([2, 1, 2, 4]) == w
True
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence

__all__ = [
    "MalformedPermutation",
    "Permutation",
    "Word",
    "identity",
    "simple",
    "transposition",
    "longest",
    "sigma",
    "word_to_permutation",
    "is_reduced",
    "reduced_words",
    "all_permutations",
    "parse_one_line",
    "format_one_line",
]

# a word a1...ap stands for the product s_{a1} ... s_{ap}
Word = tuple[int, ...]


class MalformedPermutation(ValueError):
    pass


def _trim(values: Sequence[int]) -> tuple[int, ...]:
    n = len(values)
    while n and values[n - 1] == n:
        n -= 1
    return tuple(values[:n])


class Permutation:
    """A finitely supported bijection of {1, 2, ...} in one-line notation."""

    __slots__ = ("window", "_key")

    def __init__(self, values: Iterable[int] = ()):
        window = tuple(values)
        n = len(window)
        if sorted(window) != list(range(1, n + 1)):
            raise MalformedPermutation(
                f"{list(window)} is not a permutation of 1..{n}"
            )
        self.window = window
        self._key = _trim(window)

    @classmethod
    def from_one_line(cls, values: Iterable[int]) -> Permutation:
        values = list(values)
        for v in values:
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise MalformedPermutation(f"bad entry {v!r} in {values}")
        return cls(values)

    # -- basic protocol -------------------------------------------------

    def __call__(self, i: int) -> int:
        if 1 <= i <= len(self.window):
            return self.window[i - 1]
        return i

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __lt__(self, other: Permutation) -> bool:
        # deterministic ordering for reports; not a group-theoretic order
        n = max(len(self._key), len(other._key))
        return self.one_line(n) < other.one_line(n)

    def __repr__(self) -> str:
        return f"Permutation({list(self.one_line())})"

    def __str__(self) -> str:
        return format_one_line(self)

    def __mul__(self, other: Permutation) -> Permutation:
        return self.multiply(other)

    @property
    def size(self) -> int:
        """Smallest n with the permutation in S_n (at least 1)."""
        return max(len(self._key), 1)

    def one_line(self, n: int | None = None) -> tuple[int, ...]:
        """One-line notation on 1..n; defaults to the trimmed window."""
        if n is None:
            return self._key
        if n < len(self._key):
            raise ValueError(f"{self!r} does not lie in S_{n}")
        return self._key + tuple(range(len(self._key) + 1, n + 1))

    def grow(self, n: int) -> Permutation:
        if n <= len(self.window):
            return self
        return Permutation(self.one_line(n))

    def is_identity(self) -> bool:
        return not self._key

    # -- statistics -----------------------------------------------------

    def length(self) -> int:
        w = self._key
        return sum(
            1 for i, j in itertools.combinations(range(len(w)), 2) if w[i] > w[j]
        )

    def lehmer_code(self) -> tuple[int, ...]:
        """c_i = #{j > i : w_j < w_i} over the stored window."""
        w = self.window
        return tuple(
            sum(1 for j in range(i + 1, len(w)) if w[j] < w[i])
            for i in range(len(w))
        )

    def descents(self) -> list[int]:
        """Right descents: positions i with w(i) > w(i+1)."""
        w = self._key
        return [i + 1 for i in range(len(w) - 1) if w[i] > w[i + 1]]

    # -- group operations -----------------------------------------------

    def multiply(self, other: Permutation) -> Permutation:
        """(u * v)(i) = u(v(i))."""
        n = max(len(self._key), len(other._key))
        return Permutation(self(other(i)) for i in range(1, n + 1))

    def inverse(self) -> Permutation:
        w = self._key
        inv = [0] * len(w)
        for i, v in enumerate(w, 1):
            inv[v - 1] = i
        return Permutation(inv)

    def right_transpose(self, a: int, b: int) -> Permutation:
        """w * t_{ab}: swap the values in positions a and b."""
        if a == b:
            raise ValueError(f"transposition needs distinct letters, got {a}")
        if a < 1 or b < 1:
            raise ValueError(f"letters must be positive, got ({a}, {b})")
        values = list(self.one_line(max(len(self._key), a, b)))
        values[a - 1], values[b - 1] = values[b - 1], values[a - 1]
        return Permutation(values)

    def right_simple(self, i: int) -> Permutation:
        return self.right_transpose(i, i + 1)


def identity() -> Permutation:
    return Permutation()


def simple(i: int) -> Permutation:
    """The simple transposition s_i = t_{i,i+1}."""
    return transposition(i, i + 1)


def transposition(a: int, b: int) -> Permutation:
    return identity().right_transpose(a, b)


def longest(n: int) -> Permutation:
    """w_0 = [n, ..., 1] in S_n."""
    return Permutation(range(n, 0, -1))


def sigma(r: int, m: int) -> Permutation:
    """The Grassmannian permutation [1, ..., r-1, r+m, r, r+1, ...] of length m."""
    if r < 1 or m < 0:
        raise ValueError(f"sigma needs r >= 1 and m >= 0, got r={r}, m={m}")
    values = list(range(1, r)) + [r + m] + list(range(r, r + m))
    return Permutation(values)


def word_to_permutation(word: Iterable[int]) -> Permutation:
    values: list[int] = []
    for a in word:
        if a < 1:
            raise ValueError(f"word letters must be positive, got {a}")
        if a + 1 > len(values):
            values.extend(range(len(values) + 1, a + 2))
        values[a - 1], values[a] = values[a], values[a - 1]
    return Permutation(values)


def is_reduced(word: Sequence[int]) -> bool:
    return len(word) == word_to_permutation(word).length()


def reduced_words(w: Permutation) -> list[Word]:
    """All reduced words of w, in lexicographic order.

    Each reduced word ends in a right descent of w; strip it and recurse.
    """
    cache: dict[Permutation, list[Word]] = {}

    def rec(u: Permutation) -> list[Word]:
        if u in cache:
            return cache[u]
        if u.is_identity():
            out: list[Word] = [()]
        else:
            out = [
                word + (d,)
                for d in u.descents()
                for word in rec(u.right_simple(d))
            ]
        cache[u] = out
        return out

    return sorted(rec(w))


def all_permutations(n: int) -> list[Permutation]:
    """S_n in lexicographic order of one-line notation."""
    return [Permutation(p) for p in itertools.permutations(range(1, n + 1))]


def parse_one_line(text: str) -> Permutation:
    """Parse ``3,2,1,5,4`` (no brackets, whitespace tolerated)."""
    parts = [p.strip() for p in text.strip().split(",")]
    if parts == [""]:
        return identity()
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise MalformedPermutation(f"not a comma-separated integer list: {text!r}")
    return Permutation.from_one_line(values)


def format_one_line(w: Permutation, n: int | None = None) -> str:
    values = w.one_line(n) if n is not None else w.one_line() or (1,)
    return ",".join(map(str, values))
