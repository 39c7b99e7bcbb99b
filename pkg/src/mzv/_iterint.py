"""Iterated integrals over letters {0, 1, -1, 2} by split-path power series.

A letter is a tuple of ``(point, coeff)`` pairs standing for the 1-form
``sum(coeff * dt / (t - point))``.  A word lists letters innermost first, so
the value is the integral over ``0 < t_1 < ... < t_w < 1`` of the product.

The path [0, 1] is cut at 1/2.  On [0, 1/2] each prefix is a power series
whose radius is at least 1, so evaluating it at 1/2 converges like 2**-n.
The piece on [1/2, 1] becomes a [0, 1/2] integral under ``t -> 1 - t``.
Series coefficients are fixed-point integers scaled by ``2**bits`` in the
variable ``u = 2t``, which turns every letter point into ``2 * point``.
"""

from __future__ import annotations

import math
from typing import Sequence

Letter = tuple  # tuple[tuple[int, int], ...]

X = ((0, 1),)          # dt / t
Y = ((1, -1),)         # dt / (1 - t)
YBAR = ((-1, -1),)     # -dt / (1 + t)

_PREFIX_CACHE: dict = {}
_CACHE_LIMIT = 50_000


def clear_cache() -> None:
    _PREFIX_CACHE.clear()


def _rdiv(x: int, d: int) -> int:
    """Round-to-nearest integer division."""
    if d < 0:
        x, d = -x, -d
    return (2 * x + d) // (2 * d)


def _apply(coeffs: list[int], letter: Letter, n_terms: int) -> list[int]:
    out = [0] * (n_terms + 1)
    for point, c in letter:
        if c == 0:
            continue
        if point == 0:
            if coeffs[0] != 0:
                raise ValueError("dt/t applied to a series with a constant term")
            for n in range(1, n_terms + 1):
                if coeffs[n]:
                    out[n] += c * _rdiv(coeffs[n], n)
        else:
            b = 2 * point
            # F(u) / (u - b) = -(1/b) * sum_m u^m * H_m,  H_m = H_{m-1}/b + f_m
            acc = 0
            for m in range(n_terms):
                acc = _rdiv(acc, b) + coeffs[m]
                if acc:
                    out[m + 1] -= c * _rdiv(acc, b * (m + 1))
    return out


def prefix_values(word: Sequence[Letter], bits: int, n_terms: int) -> list[int]:
    """Fixed-point values of the [0, 1/2] integrals of every prefix of ``word``.

    Entry ``j`` is the integral of the first ``j`` letters; entry 0 is 1.
    """
    word = tuple(word)
    one = 1 << bits
    values = [one]
    coeffs = [one] + [0] * n_terms
    start = 0
    while start < len(word):
        hit = _PREFIX_CACHE.get((word[: start + 1], bits, n_terms))
        if hit is None:
            break
        coeffs, total = hit
        values.append(total)
        start += 1
    for j in range(start, len(word)):
        coeffs = _apply(coeffs, word[j], n_terms)
        total = sum(coeffs)
        if len(_PREFIX_CACHE) > _CACHE_LIMIT:
            _PREFIX_CACHE.clear()
        _PREFIX_CACHE[(word[: j + 1], bits, n_terms)] = (coeffs, total)
        values.append(total)
    return values


def reflect(letter: Letter) -> Letter:
    """The letter seen through ``t -> 1 - t`` (density sign included)."""
    return tuple(sorted((1 - p, -c) for p, c in letter))


def terms_needed(bits: int, weight: int) -> int:
    """Series length making the 2**-n tail of a weight-``weight`` word negligible."""
    n = bits + 10
    for _ in range(4):
        n = bits + 10 + math.ceil(weight * math.log2(n + 1))
    # rounded up so that words of nearby weight share cached prefixes
    return -(-n // 64) * 64


def integral(word: Sequence[Letter], bits: int, n_terms: int) -> int:
    """Fixed-point value (scale ``2**bits``) of the full [0, 1] integral."""
    word = tuple(word)
    if word and any(p == 0 for p, c in word[0] if c):
        raise ValueError("innermost letter may not contain dt/t")
    if word and any(p == 1 for p, c in word[-1] if c):
        raise ValueError("outermost letter may not contain dt/(1-t)")
    guard = 24
    b = bits + guard
    inner = prefix_values(word, b, n_terms)
    outer = prefix_values(tuple(reflect(l) for l in reversed(word)), b, n_terms)
    w = len(word)
    total = sum(inner[j] * outer[w - j] for j in range(w + 1))
    return total >> (b + guard)
