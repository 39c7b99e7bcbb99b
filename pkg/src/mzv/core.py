"""Compositions, iterated-integral words and duality.

A composition ``(a_1, ..., a_r)`` stands for the nested sum over
``k_1 < ... < k_r`` with ``k_j ** -a_j``; the first entry is the innermost
variable.  A barred entry carries an extra ``(-1) ** k_j``.  Textual form is
``"1,1,3"`` with a trailing ``~`` on barred entries, e.g. ``"2,3~"``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple


class MZVError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(MZVError, ValueError):
    pass


class NotAdmissible(MZVError, ValueError):
    """The nested series of the composition diverges."""


class BarredNotEncodable(MZVError, ValueError):
    pass


class NotAdmissibleWord(MZVError, ValueError):
    pass


@dataclass(frozen=True, order=True)
class IndexEntry:
    exponent: int
    barred: bool = False

    def __post_init__(self):
        if not isinstance(self.exponent, int) or self.exponent < 1:
            raise ValueError(f"exponent must be a positive integer, got {self.exponent!r}")

    def __str__(self) -> str:
        return f"{self.exponent}~" if self.barred else str(self.exponent)


_ENTRY_RE = re.compile(r"^(\d+)(~?)$")


@dataclass(frozen=True)
class Composition:
    entries: tuple[IndexEntry, ...]

    def __post_init__(self):
        if not self.entries:
            raise ValueError("a composition needs at least one entry")
        object.__setattr__(self, "entries", tuple(self.entries))

    @classmethod
    def of(cls, *exponents: int, bars: Iterable[int] = ()) -> "Composition":
        """Build from plain exponents; ``bars`` lists 0-based positions to bar."""
        barred = set(bars)
        return cls(tuple(IndexEntry(e, i in barred) for i, e in enumerate(exponents)))

    @classmethod
    def parse(cls, text: str) -> "Composition":
        cleaned = re.sub(r"\s+", "", text)
        if cleaned.startswith("(") and cleaned.endswith(")"):
            cleaned = cleaned[1:-1]
        if not cleaned:
            raise ParseError("empty composition")
        entries = []
        for part in cleaned.split(","):
            m = _ENTRY_RE.match(part)
            if m is None or int(m.group(1)) < 1:
                raise ParseError(f"bad index entry {part!r} in {text!r}")
            entries.append(IndexEntry(int(m.group(1)), m.group(2) == "~"))
        return cls(tuple(entries))

    def __str__(self) -> str:
        return ",".join(str(e) for e in self.entries)

    def __repr__(self) -> str:
        return f"Composition({str(self)!r})"

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[IndexEntry]:
        return iter(self.entries)

    def __add__(self, other: "Composition") -> "Composition":
        return Composition(self.entries + other.entries)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(e.exponent for e in self.entries)

    @property
    def is_barred(self) -> bool:
        return any(e.barred for e in self.entries)

    @property
    def weight(self) -> int:
        return sum(self.exponents)

    @property
    def depth(self) -> int:
        return len(self.entries)

    def sort_key(self):
        return (self.weight, tuple((e.exponent, e.barred) for e in self.entries))


class Stats(NamedTuple):
    weight: int
    depth: int
    height: int


def comp(value: str | Iterable[int] | Composition) -> Composition:
    """Coerce text or a plain exponent sequence into a :class:`Composition`."""
    if isinstance(value, Composition):
        return value
    if isinstance(value, str):
        return Composition.parse(value)
    return Composition.of(*value)


def ones(n: int) -> tuple[int, ...]:
    return (1,) * n


def height_one(m: int, n: int) -> Composition:
    """``({1}^m, n+2)``."""
    return Composition.of(*ones(m), n + 2)


def stats(c: Composition) -> Stats:
    ex = c.exponents
    return Stats(sum(ex), len(ex), sum(1 for e in ex if e > 1))


def admissible(c: Composition) -> bool:
    last = c.entries[-1]
    return last.exponent >= 2 or last.barred


# Words: 'Y' is dt/(1-t), 'X' is dt/t; letter 0 is the innermost variable t_1.


@dataclass(frozen=True)
class Word:
    letters: str

    def __post_init__(self):
        if set(self.letters) - {"X", "Y"}:
            raise ValueError(f"words use only X and Y, got {self.letters!r}")

    def __str__(self) -> str:
        return self.letters or "ε"

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    @property
    def admissible(self) -> bool:
        return self.letters.startswith("Y") and self.letters.endswith("X")


EMPTY_WORD = Word("")


def encode_word(c: Composition) -> Word:
    if c.is_barred:
        raise BarredNotEncodable(f"barred composition {c} has no X/Y word")
    if not admissible(c):
        raise NotAdmissible(f"composition {c} is not admissible")
    return Word("".join("Y" + "X" * (a - 1) for a in c.exponents))


def decode_word(w: Word) -> Composition:
    if not w.admissible:
        raise NotAdmissibleWord(f"word {w} must start with Y and end with X")
    exps = [len(block) + 1 for block in w.letters[1:].split("Y")]
    return Composition.of(*exps)


def dual(c: Composition) -> Composition:
    letters = encode_word(c).letters
    swapped = letters[::-1].translate(str.maketrans("XY", "YX"))
    return decode_word(Word(swapped))


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All compositions of ``total`` into ``parts`` positive parts, lexicographic."""
    if parts <= 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def all_admissible(max_weight: int) -> Iterator[Composition]:
    """Unbarred admissible compositions of weight 2..max_weight."""
    for w in range(2, max_weight + 1):
        for d in range(1, w):
            for ex in compositions(w, d):
                if ex[-1] >= 2:
                    yield Composition.of(*ex)
