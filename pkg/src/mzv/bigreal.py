"""Precision-carrying real numbers and evaluation settings."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from numbers import Rational

import mpmath
from mpmath import mpf

MIN_BITS = 64


def digits_to_bits(digits: int) -> int:
    return max(MIN_BITS, math.ceil(digits * math.log2(10)) + 8)


@dataclass(frozen=True)
class EvalConfig:
    target_digits: int = 30
    guard_digits: int = 10
    cutoff_N: int = 100_000
    em_order: int = 8

    def __post_init__(self):
        if self.target_digits < 1:
            raise ValueError("target_digits must be positive")
        if self.guard_digits < 0:
            raise ValueError("guard_digits must be nonnegative")
        if self.cutoff_N < 10:
            raise ValueError("cutoff_N must be at least 10")
        if self.em_order < 0 or self.em_order % 2 or self.em_order > 16:
            raise ValueError("em_order must be an even integer in [0, 16]")

    @property
    def working_digits(self) -> int:
        return self.target_digits + self.guard_digits

    @property
    def bits(self) -> int:
        return digits_to_bits(self.working_digits)

    @property
    def eps(self) -> mpf:
        """Absolute accuracy the engine aims for (working precision)."""
        return mpf(10) ** (-self.working_digits)

    def with_(self, **changes) -> "EvalConfig":
        return replace(self, **changes)


def _as_mpf(x, bits: int) -> mpf:
    if isinstance(x, BigReal):
        return x.value
    if isinstance(x, Fraction):
        with mpmath.workprec(bits):
            return mpf(x.numerator) / x.denominator
    if isinstance(x, Rational):
        with mpmath.workprec(bits):
            return mpf(int(x.numerator)) / int(x.denominator)
    with mpmath.workprec(bits):
        return mpf(x)


class BigReal:
    """An mpmath real tagged with the precision it is good to.

    Mixed arithmetic runs at the smaller of the operand precisions; plain
    ints and Fractions count as exact.
    """

    __slots__ = ("value", "precision_bits")

    def __init__(self, value, precision_bits: int = 128):
        if precision_bits < MIN_BITS:
            raise ValueError(f"precision_bits must be >= {MIN_BITS}")
        self.precision_bits = int(precision_bits)
        if isinstance(value, BigReal):
            value = value.value
        self.value = _as_mpf(value, self.precision_bits)

    @classmethod
    def exact(cls, x, cfg: EvalConfig) -> "BigReal":
        return cls(x, cfg.bits)

    def _binop(self, other, fn) -> "BigReal":
        if isinstance(other, BigReal):
            bits = min(self.precision_bits, other.precision_bits)
        elif isinstance(other, (int, Rational, float, mpf)):
            bits = self.precision_bits
        else:
            return NotImplemented
        with mpmath.workprec(bits):
            return BigReal(fn(self.value, _as_mpf(other, bits)), bits)

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    def __radd__(self, other):
        return self._binop(other, lambda a, b: b + a)

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binop(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binop(other, lambda a, b: a * b)

    def __rmul__(self, other):
        return self._binop(other, lambda a, b: b * a)

    def __truediv__(self, other):
        return self._binop(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._binop(other, lambda a, b: b / a)

    def __pow__(self, n: int):
        with mpmath.workprec(self.precision_bits):
            return BigReal(self.value ** n, self.precision_bits)

    def __neg__(self):
        with mpmath.workprec(self.precision_bits):
            return BigReal(-self.value, self.precision_bits)

    def __pos__(self):
        return self

    def __abs__(self):
        with mpmath.workprec(self.precision_bits):
            return BigReal(abs(self.value), self.precision_bits)

    def _cmp_value(self, other):
        return other.value if isinstance(other, BigReal) else _as_mpf(other, self.precision_bits)

    def __eq__(self, other):
        try:
            return self.value == self._cmp_value(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.value, self.precision_bits))

    def __lt__(self, other):
        return self.value < self._cmp_value(other)

    def __le__(self, other):
        return self.value <= self._cmp_value(other)

    def __gt__(self, other):
        return self.value > self._cmp_value(other)

    def __ge__(self, other):
        return self.value >= self._cmp_value(other)

    def __float__(self) -> float:
        return float(self.value)

    @property
    def digits(self) -> int:
        return int(self.precision_bits * math.log10(2))

    def to_string(self, digits: int | None = None) -> str:
        n = digits or self.digits
        return mpmath.nstr(self.value, n, min_fixed=-mpmath.inf, max_fixed=mpmath.inf) \
            if abs(self.value) >= mpf(10) ** -5 or self.value == 0 \
            else mpmath.nstr(self.value, n)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"BigReal({mpmath.nstr(self.value, 20)}, bits={self.precision_bits})"


def bigsum(terms, cfg: EvalConfig) -> BigReal:
    total = BigReal(0, cfg.bits)
    for t in terms:
        total = total + t
    return total
