"""
Sparse multivariate polynomials with integer coefficients.

Terms are kept in a dict from exponent tuples to nonzero ints.  Exponent
tuples never carry trailing zeros, so ``x1`` is ``(1,)`` whether it lives
in two variables or ten.
"""

from __future__ import annotations

import functools
import re
from collections.abc import Iterable, Mapping

from .permutation import Permutation, longest, word_to_permutation

__all__ = [
    "MultiPoly",
    "PolynomialParseError",
    "ZERO",
    "ONE",
    "x",
    "monomial",
    "divided_difference",
    "apply_word",
    "staircase",
    "schubert_ddiff",
    "schubert_ddiff_via",
    "complete_homogeneous",
    "weak_compositions",
    "format_poly",
    "parse_poly",
]

# coefficients past this bound mean something went wrong upstream
COEFF_LIMIT = 2**63 - 1

Exponent = tuple[int, ...]


class PolynomialParseError(ValueError):
    pass


def _norm(exps: Iterable[int]) -> Exponent:
    e = list(exps)
    while e and e[-1] == 0:
        e.pop()
    return tuple(e)


def _check(c: int) -> int:
    if c > COEFF_LIMIT or c < -COEFF_LIMIT:
        raise OverflowError(f"coefficient {c} exceeds the 64-bit range")
    return c


def _grlex_key(e: Exponent):
    return (sum(e), e)


class MultiPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Iterable[int], int] | None = None):
        acc: dict[Exponent, int] = {}
        for e, c in (terms or {}).items():
            k = _norm(e)
            if any(v < 0 for v in k):
                raise ValueError(f"negative exponent in {e}")
            acc[k] = acc.get(k, 0) + c
        self.terms = {e: _check(c) for e, c in acc.items() if c}

    @classmethod
    def constant(cls, c: int) -> MultiPoly:
        return cls({(): c})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = MultiPoly.constant(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: MultiPoly | int) -> MultiPoly:
        if isinstance(other, int):
            other = MultiPoly.constant(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _check(v)
            else:
                out.pop(e, None)
        return _raw(out)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return _raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: MultiPoly | int) -> MultiPoly:
        if isinstance(other, int):
            other = MultiPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other: int) -> MultiPoly:
        return MultiPoly.constant(other) - self

    def __mul__(self, other: MultiPoly | int) -> MultiPoly:
        if isinstance(other, int):
            other = MultiPoly.constant(other)
        out: dict[Exponent, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                if len(e1) < len(e2):
                    e1p, e2p = e1 + (0,) * (len(e2) - len(e1)), e2
                else:
                    e1p, e2p = e1, e2 + (0,) * (len(e1) - len(e2))
                e = tuple(a + b for a, b in zip(e1p, e2p))
                out[e] = out.get(e, 0) + c1 * c2
        return _raw({e: _check(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MultiPoly:
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def nvars(self) -> int:
        return max((len(e) for e in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def swap(self, i: int) -> MultiPoly:
        """Exchange x_i and x_{i+1}."""
        out = {}
        for e, c in self.terms.items():
            v = list(e) + [0] * max(0, i + 1 - len(e))
            v[i - 1], v[i] = v[i], v[i - 1]
            out[_norm(v)] = c
        return _raw(out)

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        """Terms in decreasing graded-lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __repr__(self) -> str:
        return f"MultiPoly({self})"

    def __str__(self) -> str:
        return format_poly(self)


def _raw(terms: dict[Exponent, int]) -> MultiPoly:
    # terms already normalized; skip the constructor's pass
    p = MultiPoly.__new__(MultiPoly)
    p.terms = terms
    return p


ZERO = MultiPoly()
ONE = MultiPoly.constant(1)


def monomial(exponents: Iterable[int], coeff: int = 1) -> MultiPoly:
    return MultiPoly({tuple(exponents): coeff})


def x(i: int) -> MultiPoly:
    """The variable x_i."""
    if i < 1:
        raise ValueError(f"variables are x1, x2, ...; got x{i}")
    return monomial([0] * (i - 1) + [1])


def divided_difference(f: MultiPoly, i: int) -> MultiPoly:
    """(f - s_i f) / (x_i - x_{i+1}), computed term by term.

    For x_i^p x_{i+1}^q with p > q the quotient is the geometric sum
    x_i^(p-1) x_{i+1}^q + ... + x_i^q x_{i+1}^(p-1); p < q flips the sign.
    """
    if i < 1:
        raise ValueError(f"divided difference index must be positive, got {i}")
    out: dict[Exponent, int] = {}
    for e, c in f.terms.items():
        v = list(e) + [0] * max(0, i + 1 - len(e))
        p, q = v[i - 1], v[i]
        if p == q:
            continue
        sign = 1
        if p < q:
            p, q, sign = q, p, -1
        for k in range(p - q):
            v[i - 1], v[i] = p - 1 - k, q + k
            key = _norm(v)
            out[key] = out.get(key, 0) + sign * c
    return _raw({e: _check(c) for e, c in out.items() if c})


def apply_word(f: MultiPoly, word: Iterable[int]) -> MultiPoly:
    """Apply d_{a1} d_{a2} ... d_{ap} to f (rightmost operator first)."""
    for a in reversed(tuple(word)):
        f = divided_difference(f, a)
    return f


def staircase(n: int) -> MultiPoly:
    """x1^(n-1) x2^(n-2) ... x_{n-1}."""
    return monomial(range(n - 1, -1, -1))


def schubert_ddiff_via(w: Permutation, n: int, word: Iterable[int]) -> MultiPoly:
    """Schubert polynomial of w from a caller-chosen reduced word of w^-1 w0."""
    target = w.inverse() * longest(n)
    word = tuple(word)
    if word_to_permutation(word) != target or len(word) != target.length():
        raise ValueError(f"{word} is not a reduced word for {target!r}")
    return apply_word(staircase(n), word)


@functools.lru_cache(maxsize=None)
def _schubert_cached(key: tuple[int, ...], n: int) -> MultiPoly:
    w = Permutation(key)
    target = w.inverse() * longest(n)
    return apply_word(staircase(n), _one_reduced_word(target))


def _one_reduced_word(w: Permutation) -> tuple[int, ...]:
    # peel off the first right descent each time; cheaper than listing R(w)
    word = []
    while not w.is_identity():
        d = w.descents()[0]
        word.append(d)
        w = w.right_simple(d)
    return tuple(reversed(word))


def schubert_ddiff(w: Permutation, n: int | None = None) -> MultiPoly:
    """Schubert polynomial by divided differences on the staircase of S_n."""
    if n is None:
        n = w.size
    if w.size > n:
        raise ValueError(f"{w!r} does not lie in S_{n}")
    return _schubert_cached(w.one_line(), n)


def weak_compositions(m: int, r: int) -> list[tuple[int, ...]]:
    """All (k1, ..., kr) of naturals summing to m, in lexicographic order."""
    if r == 0:
        return [()] if m == 0 else []
    if r == 1:
        return [(m,)]
    return [
        (k,) + rest for k in range(m + 1) for rest in weak_compositions(m - k, r - 1)
    ]


def complete_homogeneous(m: int, r: int) -> MultiPoly:
    """h_m(x1, ..., xr): every monomial of degree m in r variables."""
    return MultiPoly({c: 1 for c in weak_compositions(m, r)})


# -- text form -----------------------------------------------------------

def _format_monomial(e: Exponent) -> str:
    return "*".join(
        f"x{i}" if k == 1 else f"x{i}^{k}" for i, k in enumerate(e, 1) if k
    )


def format_poly(f: MultiPoly) -> str:
    """Render as ``c*x1^e1*x2^e2 + ...`` in decreasing graded-lex order."""
    if not f.terms:
        return "0"
    pieces = []
    for idx, (e, c) in enumerate(f.sorted_terms()):
        mono = _format_monomial(e)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if idx == 0:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(pieces)


_TOKEN = re.compile(r"\s*([+-])?\s*(\d+)?\s*(\*)?\s*((?:x\d+(?:\^\d+)?\s*\*?\s*)*)")
_FACTOR = re.compile(r"x(\d+)(?:\^(\d+))?")


def parse_poly(text: str) -> MultiPoly:
    """Inverse of :func:`format_poly`; also accepts unsorted or repeated terms."""
    s = text.strip()
    if not s:
        raise PolynomialParseError("empty polynomial text")
    if s == "0":
        return ZERO
    terms: dict[Exponent, int] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        sign, digits, star, factors = m.group(1), m.group(2), m.group(3), m.group(4)
        if m.end() == pos or (not digits and not factors.strip()):
            raise PolynomialParseError(f"unexpected text at position {pos}: {s[pos:]!r}")
        if not first and not sign:
            raise PolynomialParseError(f"missing '+' or '-' at position {pos}")
        if star and not factors.strip():
            raise PolynomialParseError(f"dangling '*' near position {m.start(3)}")
        if digits and factors.strip() and not star:
            raise PolynomialParseError(f"missing '*' near position {m.start(4)}")
        coeff = int(digits) if digits else 1
        if sign == "-":
            coeff = -coeff
        exps: list[int] = []
        fstr = factors.strip().rstrip("*").strip()
        if fstr:
            for part in fstr.split("*"):
                fm = _FACTOR.fullmatch(part.strip())
                if fm is None:
                    raise PolynomialParseError(f"bad factor {part!r} near position {m.start(4)}")
                i, k = int(fm.group(1)), int(fm.group(2) or 1)
                if i < 1:
                    raise PolynomialParseError(f"variable index must be positive: x{i}")
                exps.extend([0] * (i - len(exps)))
                exps[i - 1] += k
        key = _norm(exps)
        terms[key] = terms.get(key, 0) + coeff
        pos = m.end()
        first = False
    return MultiPoly(terms)
