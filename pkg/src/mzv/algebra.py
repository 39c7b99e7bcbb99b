"""Shuffle and stuffle products with exact rational coefficients."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Generic, Hashable, Iterable, Iterator, Mapping, TypeVar

from .core import Composition, EMPTY_WORD, IndexEntry, Word, decode_word

K = TypeVar("K", bound=Hashable)


class LinComb(Generic[K]):
    """Finite formal sum ``sum c_k * k`` with Fraction coefficients.

    Zero coefficients are never stored, so two combinations are equal
    exactly when their term maps are.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[K, Fraction | int] | Iterable[tuple[K, Fraction | int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[K, Fraction] = {}
        for key, c in items:
            acc[key] = acc.get(key, Fraction(0)) + Fraction(c)
        self._terms = {k: v for k, v in acc.items() if v != 0}

    @classmethod
    def single(cls, key: K, coeff=1) -> "LinComb[K]":
        return cls({key: coeff})

    @property
    def terms(self) -> dict[K, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self) -> Iterator[K]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __getitem__(self, key: K) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def __eq__(self, other) -> bool:
        if isinstance(other, LinComb):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "LinComb[K]") -> "LinComb[K]":
        return LinComb(list(self.items()) + list(other.items()))

    def __sub__(self, other: "LinComb[K]") -> "LinComb[K]":
        return self + (-1) * other

    def __mul__(self, scalar) -> "LinComb[K]":
        s = Fraction(scalar)
        return LinComb({k: v * s for k, v in self.items()})

    __rmul__ = __mul__

    def __neg__(self) -> "LinComb[K]":
        return self * -1

    def map_keys(self, fn: Callable[[K], Hashable]) -> "LinComb":
        return LinComb((fn(k), v) for k, v in self.items())

    def mass(self) -> Fraction:
        return sum(self._terms.values(), Fraction(0))

    def evaluate(self, fn: Callable, zero=0):
        """``sum c_k * fn(k)``; coefficients stay exact until multiplied in."""
        total = zero
        for k, c in self.sorted_items():
            total = total + c * fn(k)
        return total

    def sorted_items(self) -> list[tuple[K, Fraction]]:
        return sorted(self.items(), key=lambda kv: _sort_key(kv[0]))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for key, c in self.sorted_items():
            label = f"({key})" if isinstance(key, Composition) else str(key)
            mag = abs(c)
            body = label if mag == 1 else f"{mag}*{label}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"LinComb({self})"


def _sort_key(key):
    if isinstance(key, Composition):
        return (0,) + key.sort_key()
    if isinstance(key, Word):
        return (1, len(key), key.letters)
    return (2, str(key))


# --- shuffle on words --------------------------------------------------------


@lru_cache(maxsize=65536)
def _shuffle_str(u: str, v: str) -> tuple[tuple[str, int], ...]:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    acc: dict[str, int] = {}
    for w, c in _shuffle_str(u[1:], v):
        acc[u[0] + w] = acc.get(u[0] + w, 0) + c
    for w, c in _shuffle_str(u, v[1:]):
        acc[v[0] + w] = acc.get(v[0] + w, 0) + c
    return tuple(acc.items())


def shuffle(w1: Word, w2: Word) -> LinComb[Word]:
    """``(a u) ш (b v) = a (u ш b v) + b (a u ш v)``; ε is the unit."""
    return LinComb((Word(w), c) for w, c in _shuffle_str(w1.letters, w2.letters))


def shuffle_lc(a: LinComb[Word], b: LinComb[Word]) -> LinComb[Word]:
    out = LinComb()
    for u, cu in a.items():
        for v, cv in b.items():
            out = out + shuffle(u, v) * (cu * cv)
    return out


def word_to_zeta(lc: LinComb[Word]) -> LinComb[Composition]:
    return lc.map_keys(decode_word)


# --- stuffle on compositions ---------------------------------------------------


@lru_cache(maxsize=65536)
def _stuffle_entries(a: tuple[IndexEntry, ...], b: tuple[IndexEntry, ...]):
    # recursion on the innermost entries; merged bars multiply, i.e. XOR
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    acc: dict = {}

    def put(head, tails):
        for t, c in tails:
            key = (head,) + t
            acc[key] = acc.get(key, 0) + c

    put(a[0], _stuffle_entries(a[1:], b))
    put(b[0], _stuffle_entries(a, b[1:]))
    merged = IndexEntry(a[0].exponent + b[0].exponent, a[0].barred != b[0].barred)
    put(merged, _stuffle_entries(a[1:], b[1:]))
    return tuple(acc.items())


def stuffle(c1: Composition, c2: Composition) -> LinComb[Composition]:
    """Harmonic product of two nested sums (innermost entries merge first)."""
    return LinComb((Composition(e), c) for e, c in _stuffle_entries(c1.entries, c2.entries))


def euler_decomposition(p: int, q: int) -> LinComb[Composition]:
    """ζ(p+1) ζ(q+1) as ``sum [C(a2, p) + C(a2, q)] ζ(a1, a2+1)`` over ``a1 + a2 = p+q+1``."""
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive")
    w = p + q + 1
    return LinComb(
        (Composition.of(a1, w - a1 + 1), math.comb(w - a1, p) + math.comb(w - a1, q))
        for a1 in range(1, w)
    )


__all__ = [
    "LinComb",
    "shuffle",
    "shuffle_lc",
    "stuffle",
    "euler_decomposition",
    "word_to_zeta",
    "EMPTY_WORD",
]
