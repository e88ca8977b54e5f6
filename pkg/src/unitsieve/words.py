"""Words in e0, e1: shuffle product, deconcatenation, Lyndon words.

A word is a plain string over "01" ("0" is e0, "1" is e1). Its length is
the halved weight and its number of "1" letters is its depth.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator, Mapping

from .core_arith import as_rational, format_rational

__all__ = [
    "WordPoly",
    "check_word",
    "word_key",
    "shuffle",
    "shuffle_words",
    "deconcatenate",
    "lyndon_words",
    "is_lyndon",
    "witt_count",
    "weight_dim",
    "mobius",
    "words_of_length",
]


def check_word(w: str) -> str:
    if any(ch not in "01" for ch in w):
        raise ValueError(f"word {w!r} has letters outside '01'")
    return w


def word_key(w: str):
    """Canonical order: by length, then lexicographically with e0 < e1."""
    return (len(w), w)


class WordPoly:
    """Finite Q-linear combination of words."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[str, object] | None = None):
        clean: dict[str, Fraction] = {}
        for w, c in (terms or {}).items():
            check_word(w)
            c = as_rational(c)
            if c:
                clean[w] = clean.get(w, Fraction(0)) + c
                if not clean[w]:
                    del clean[w]
        self.terms = clean

    @classmethod
    def word(cls, w: str, coeff=1) -> "WordPoly":
        return cls({w: coeff})

    def __add__(self, other: "WordPoly") -> "WordPoly":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) + c
        return WordPoly(out)

    def __sub__(self, other: "WordPoly") -> "WordPoly":
        return self + other.scale(-1)

    def scale(self, c) -> "WordPoly":
        c = as_rational(c)
        return WordPoly({w: c * x for w, x in self.terms.items()})

    def __mul__(self, other: "WordPoly") -> "WordPoly":
        return shuffle(self, other)

    def __eq__(self, other):
        if not isinstance(other, WordPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def items(self):
        return sorted(self.terms.items(), key=lambda t: word_key(t[0]))

    def to_json(self) -> dict[str, str]:
        return {w: format_rational(c) for w, c in self.items()}

    def __repr__(self):
        if not self.terms:
            return "WordPoly(0)"
        body = " + ".join(f"{format_rational(c)}*{w or '()'}" for w, c in self.items())
        return f"WordPoly({body})"


@lru_cache(maxsize=None)
def shuffle_words(u: str, v: str) -> tuple[tuple[str, int], ...]:
    """All interleavings of u and v, with multiplicities."""
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    acc: dict[str, int] = {}
    for w, c in shuffle_words(u[1:], v):
        acc[u[0] + w] = acc.get(u[0] + w, 0) + c
    for w, c in shuffle_words(u, v[1:]):
        acc[v[0] + w] = acc.get(v[0] + w, 0) + c
    return tuple(sorted(acc.items(), key=lambda t: word_key(t[0])))


def shuffle(u: WordPoly, v: WordPoly) -> WordPoly:
    out: dict[str, Fraction] = {}
    for a, ca in u.terms.items():
        for b, cb in v.terms.items():
            for w, m in shuffle_words(a, b):
                out[w] = out.get(w, Fraction(0)) + ca * cb * m
    return WordPoly(out)


def deconcatenate(w: str) -> list[tuple[str, str]]:
    """All splittings w = uv as pairs (u, v), shortest u first."""
    check_word(w)
    return [(w[:k], w[k:]) for k in range(len(w) + 1)]


def words_of_length(n: int) -> Iterator[str]:
    for letters in product("01", repeat=n):
        yield "".join(letters)


def is_lyndon(w: str) -> bool:
    """Strictly smaller than each of its proper rotations."""
    return bool(w) and all(w < w[i:] + w[:i] for i in range(1, len(w)))


def lyndon_words(max_len: int) -> dict[int, list[str]]:
    """Lyndon words over e0 < e1 grouped by length, via Duval's successor."""
    out: dict[int, list[str]] = {n: [] for n in range(1, max_len + 1)}
    if max_len < 1:
        return out
    w = [0]
    while w:
        out[len(w)].append("".join(map(str, w)))
        m = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == 1:
            w.pop()
        if w:
            w[-1] += 1
    return out


def mobius(n: int) -> int:
    result, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


@lru_cache(maxsize=None)
def witt_count(w: int) -> int:
    """Number of Lyndon words of length w on two letters."""
    if w < 1:
        raise ValueError("length must be positive")
    total = sum(mobius(w // d) * 2 ** d for d in range(1, w + 1) if w % d == 0)
    return total // w


def weight_dim(n: int) -> int:
    """Number of words of length n."""
    if n < 0:
        raise ValueError("length must be nonnegative")
    return 2 ** n
