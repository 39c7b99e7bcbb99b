"""Arbitrary-precision evaluation of (alternating) multiple zeta(-star) values.

Multiple zeta values go through :mod:`mzv._iterint`, which converges
geometrically in every depth.  :func:`partial_sum` is the plain nested-sum
recursion, kept as the brute-force-checkable engine; :func:`zeta_single`
sums ``k**-s`` directly with an Euler-Maclaurin tail and serves as an
independent route to single zeta values.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import mpmath
from mpmath import mpf

from . import _iterint
from .bigreal import BigReal, EvalConfig
from .core import Composition, IndexEntry, MZVError, NotAdmissible, admissible, comp

DEFAULT_CONFIG = EvalConfig()


class PrecisionUnreachable(MZVError, ArithmeticError):
    """The requested accuracy needs more terms than ``cutoff_N`` allows."""


class DivergentAtOne(MZVError, ValueError):
    pass


class DivergentParameters(MZVError, ValueError):
    pass


class PoleAtNonpositiveInteger(MZVError, ValueError):
    pass


# --- multiple zeta values -------------------------------------------------


def _signs_to_word(entries: Sequence[IndexEntry], star: bool) -> tuple:
    """Letters (innermost first) of the iterated integral for ``entries``.

    Entry j opens with ``-dt/(t - c_j)`` where ``c_j`` is the product of the
    signs of entries j..r, followed by ``exponent - 1`` copies of dt/t.  For
    the star variant every opening letter but the first also gets a dt/t
    summand, which accounts for the equal-index terms.
    """
    signs = [-1 if e.barred else 1 for e in entries]
    word = []
    c = 1
    suffix = []
    for s in reversed(signs):
        c *= s
        suffix.append(c)
    suffix.reverse()
    for j, e in enumerate(entries):
        opening = {suffix[j]: -1}
        if star and j > 0:
            opening[0] = opening.get(0, 0) + 1
        word.append(tuple(sorted(opening.items())))
        word.extend([_iterint.X] * (e.exponent - 1))
    return tuple(word)


@lru_cache(maxsize=200_000)
def _zeta_fixed(entries: tuple, star: bool, bits: int, n_terms: int) -> int:
    return _iterint.integral(_signs_to_word(entries, star), bits, n_terms)


def series_terms(c: Composition, cfg: EvalConfig) -> int:
    return _iterint.terms_needed(cfg.bits, c.weight)


def zeta_m(c, star: bool = False, cfg: EvalConfig = DEFAULT_CONFIG) -> BigReal:
    """ζ(c) or ζ*(c); barred entries contribute ``(-1)**k_j``."""
    c = comp(c)
    if not admissible(c):
        raise NotAdmissible(f"ζ({c}) diverges: last entry must be >= 2 or barred")
    n = series_terms(c, cfg)
    if n > cfg.cutoff_N:
        raise PrecisionUnreachable(
            f"ζ({c}) needs {n} series terms for {cfg.working_digits} digits, "
            f"cutoff_N={cfg.cutoff_N}"
        )
    bits = cfg.bits
    raw = _zeta_fixed(c.entries, bool(star), bits, n)
    with mpmath.workprec(bits):
        return BigReal(mpmath.ldexp(mpf(raw), -bits), bits)


def zeta_m_checked(c, star: bool = False, cfg: EvalConfig = DEFAULT_CONFIG) -> tuple[BigReal, BigReal]:
    """Value plus an error estimate from a rerun with the series length doubled."""
    c = comp(c)
    value = zeta_m(c, star, cfg)
    n = series_terms(c, cfg)
    if 2 * n > cfg.cutoff_N:
        raise PrecisionUnreachable(f"ζ({c}): error check needs {2 * n} terms, cutoff_N={cfg.cutoff_N}")
    raw = _zeta_fixed(c.entries, bool(star), cfg.bits, 2 * n)
    with mpmath.workprec(cfg.bits):
        other = mpmath.ldexp(mpf(raw), -cfg.bits)
        err = abs(other - value.value) + mpmath.ldexp(mpf(1), 8 - cfg.bits)
    return value, BigReal(err, cfg.bits)


def star_expansion(c: Composition) -> list[Composition]:
    """All compositions obtained by merging runs of adjacent entries.

    ζ*(c) is the sum of ζ over this list; merged bars combine by XOR.
    """
    out = []
    r = len(c.entries)
    for mask in range(1 << max(r - 1, 0)):
        merged = []
        cur = c.entries[0]
        for j in range(1, r):
            e = c.entries[j]
            if mask >> (j - 1) & 1:
                cur = IndexEntry(cur.exponent + e.exponent, cur.barred != e.barred)
            else:
                merged.append(cur)
                cur = e
        merged.append(cur)
        out.append(Composition(tuple(merged)))
    return out


def partial_sum(c, N: int, star: bool = False, exact: bool = False, bits: int = 128):
    """Nested sum over ``k_r <= N`` by the partial-sum recursion.

    ``S_0(k) = 1`` and ``S_j(k) = sum_{k' < k} sign_j(k') k'**-a_j S_{j-1}(k')``
    (``<=`` for the star variant); cost is O(depth * N).  With ``exact=True``
    the result is a :class:`~fractions.Fraction`.
    """
    c = comp(c)
    if exact:
        one, power = Fraction(1), (lambda k, a: Fraction(1, k ** a))
    else:
        one, power = mpf(1), (lambda k, a: mpf(1) / mpf(k) ** a)
    with mpmath.workprec(bits):
        prev = [one] * (N + 1)  # S_0 evaluated anywhere is 1
        for j, e in enumerate(c.entries):
            cur = [one * 0] * (N + 1)
            acc = one * 0
            for k in range(1, N + 1):
                # S_{j-1}(k') for k' < k (or <= k when star); S_0 is not shifted
                inner = prev[k] if (star or j == 0) else prev[k - 1]
                term = power(k, e.exponent) * inner
                if e.barred and k % 2:
                    term = -term
                acc = acc + term
                cur[k] = acc
            prev = cur
            prev[0] = one * 0
        result = prev[N]
    return result if exact else BigReal(result, bits)


def naive_sum(c, N: int, star: bool = False) -> Fraction:
    """Exact nested sum by enumerating every index tuple up to ``N``.

    Exponential in the depth; meant as a brute-force oracle.  Terms are
    integers over the common denominator ``lcm(1..N) ** weight``.
    """
    c = comp(c)
    L = math.lcm(*range(1, N + 1))
    table = {a: [0] + [(L // k) ** a for k in range(1, N + 1)] for a in set(c.exponents)}
    r = len(c)
    total = 0

    def rec(j: int, lo: int, acc: int):
        nonlocal total
        e = c.entries[j]
        row = table[e.exponent]
        for k in range(lo, N + 1):
            t = acc * row[k]
            if e.barred and k % 2:
                t = -t
            if j + 1 == r:
                total += t
            else:
                rec(j + 1, k if star else k + 1, t)

    rec(0, 1, 1)
    return Fraction(total, L ** c.weight)


# --- single zeta, eta, polylog --------------------------------------------


@lru_cache(maxsize=None)
def _bernoulli_over_factorial(n: int) -> Fraction:
    # B_n / n! via the standard recurrence on exact rationals
    bs = [Fraction(1)]
    for m in range(1, n + 1):
        bs.append(-sum(Fraction(math.comb(m + 1, k)) * bs[k] for k in range(m)) / (m + 1))
    return bs[n] / math.factorial(n)


def _em_remainder_bound(s: int, N: int, order: int) -> float:
    """Size of the first omitted Euler-Maclaurin term for sum_{k>=N} k**-s."""
    q = order + 2
    b = abs(float(_bernoulli_over_factorial(q)))
    rising = math.prod(range(s, s + q - 1))  # s (s+1) ... (s+q-2)
    return b * rising * N ** (-(s + q - 1))


@lru_cache(maxsize=4096)
def _zeta_single_cached(s: int, bits: int, N: int, order: int) -> mpf:
    with mpmath.workprec(bits + 20):
        total = mpmath.fsum(mpf(k) ** -s for k in range(1, N))
        Nf = mpf(N)
        # tail sum_{k>=N} k^-s = N^{1-s}/(s-1) + N^-s/2 + sum_j B_2j/(2j)! (s)_{2j-1} N^{-s-2j+1}
        tail = Nf ** (1 - s) / (s - 1) + Nf ** (-s) / 2
        for j in range(1, order // 2 + 1):
            b = _bernoulli_over_factorial(2 * j)
            rising = math.prod(range(s, s + 2 * j - 1))
            tail += mpf(b.numerator) / b.denominator * rising * Nf ** (-s - 2 * j + 1)
        return +(total + tail)


def zeta_single(s: int, cfg: EvalConfig = DEFAULT_CONFIG) -> BigReal:
    """Riemann ζ(s), integer s >= 2, by direct summation plus an Euler-Maclaurin tail."""
    if s < 2:
        raise NotAdmissible(f"ζ({s}) diverges")
    eps = 10.0 ** (-cfg.working_digits)
    order = cfg.em_order
    N = 10
    while _em_remainder_bound(s, N, order) > eps:
        N *= 2
        if N > cfg.cutoff_N:
            raise PrecisionUnreachable(
                f"ζ({s}) at {cfg.working_digits} digits needs more than cutoff_N={cfg.cutoff_N} terms"
            )
    return BigReal(_zeta_single_cached(s, cfg.bits, N, order), cfg.bits)


def eta_bar(s: int, cfg: EvalConfig = DEFAULT_CONFIG) -> BigReal:
    """ζ(s̄) = sum (-1)^k k^-s = (2^(1-s) - 1) ζ(s); -log 2 at s = 1."""
    if s < 1:
        raise ValueError("s must be positive")
    if s == 1:
        with mpmath.workprec(cfg.bits):
            return BigReal(-mpmath.log(2), cfg.bits)
    return (Fraction(1, 2 ** (s - 1)) - 1) * zeta_single(s, cfg)


def polylog(k: int, u, cfg: EvalConfig = DEFAULT_CONFIG) -> BigReal:
    """Li_k(u) = sum u^n / n^k for 0 <= u <= 1."""
    bits = cfg.bits
    with mpmath.workprec(bits + 10):
        x = _to_mpf(u)
        if x < 0 or x > 1:
            raise ValueError("polylog argument must lie in [0, 1]")
        if x == 1:
            if k == 1:
                raise DivergentAtOne("Li_1(1) diverges")
            return zeta_single(k, cfg)
        if x == 0:
            return BigReal(0, bits)
        eps = mpf(10) ** (-cfg.working_digits)
        total = mpf(0)
        power = mpf(1)
        n = 0
        while True:
            n += 1
            if n > cfg.cutoff_N:
                raise PrecisionUnreachable(f"Li_{k}({mpmath.nstr(x, 8)}) needs more than cutoff_N terms")
            power *= x
            term = power / mpf(n) ** k
            total += term
            # remaining terms are below term * x / (1 - x)
            if term * x / (1 - x) < eps:
                break
        return BigReal(total, bits)


def bell_P(m: int, xs: Sequence):
    """Modified Bell polynomial P_m: exp(sum x_k z^k / k) = sum P_m z^m.

    Uses ``m P_m = sum_{k=1}^m x_k P_{m-k}``; works for any field-like
    entries (BigReal, Fraction, float).
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    if len(xs) < m:
        raise ValueError(f"P_{m} needs {m} arguments, got {len(xs)}")
    P = [1]
    for n in range(1, m + 1):
        acc = 0
        for k in range(1, n + 1):
            acc = acc + xs[k - 1] * P[n - k]
        P.append(acc / n if not isinstance(acc, int) else Fraction(acc, n))
    return P[m]


def gamma_fn(x, cfg: EvalConfig = DEFAULT_CONFIG) -> BigReal:
    bits = cfg.bits
    with mpmath.workprec(bits + 10):
        v = x.value if isinstance(x, BigReal) else (
            mpf(x.numerator) / x.denominator if isinstance(x, Fraction) else mpf(x))
        if v <= 0 and v == mpmath.floor(v):
            raise PoleAtNonpositiveInteger(f"Γ has a pole at {v}")
        return BigReal(mpmath.gamma(v), bits)


# --- 3F2 at unit argument ---------------------------------------------------


def _to_mpf(x):
    if isinstance(x, BigReal):
        return x.value
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


def hyp3f2_unit(a1, a2, a3, b1, b2, cfg: EvalConfig = DEFAULT_CONFIG, base_terms: int = 250,
                levels: int = 8) -> tuple[BigReal, BigReal]:
    """3F2(a1, a2, a3; b1, b2; 1) and an error bound.

    The terms decay like ``k**-(1+s)`` with ``s = b1 + b2 - a1 - a2 - a3``, so
    partial sums at ``N, 2N, 4N, ...`` differ from the limit by
    ``N**-s * (c0 + c1/N + ...)``.  Repeated Richardson steps remove those
    powers one at a time; the last correction is returned as the error.
    """
    bits = cfg.bits
    with mpmath.workprec(bits + 20):
        a = [_to_mpf(v) for v in (a1, a2, a3)]
        b = [_to_mpf(v) for v in (b1, b2)]
        s = b[0] + b[1] - sum(a)
        if s <= 0:
            raise DivergentParameters(f"3F2 at z=1 needs b1+b2-a1-a2-a3 > 0, got {mpmath.nstr(s, 10)}")
        checkpoints = [base_terms * 2 ** i for i in range(levels)]
        if checkpoints[-1] > cfg.cutoff_N * 10:
            raise PrecisionUnreachable("3F2 extrapolation needs more terms than allowed")
        partial = []
        term = mpf(1)
        total = mpf(0)
        k = 0
        for stop in checkpoints:
            while k < stop:
                total += term
                term *= (a[0] + k) * (a[1] + k) * (a[2] + k) / ((b[0] + k) * (b[1] + k) * (k + 1))
                k += 1
            partial.append(total)
        table = partial
        err = abs(table[-1] - table[-2])
        for i in range(levels - 1):
            f = mpf(2) ** (s + i)
            table = [(f * table[j + 1] - table[j]) / (f - 1) for j in range(len(table) - 1)]
            if len(table) >= 2:
                err = abs(table[-1] - table[-2])
        return BigReal(table[-1], bits), BigReal(err, bits)
