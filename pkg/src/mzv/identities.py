"""Catalog of identities among (alternating) multiple zeta(-star) values.

Each family builds :class:`IdentityInstance` objects from integer (or
rational) parameters.  An instance carries two or more *legs*, closures that
evaluate the same quantity by different routes; :func:`verify` evaluates all
of them and records the worst disagreement.

A few families exist in two versions.  The ``...-CORRECTED`` entries state
the identity with a misprinted sign or exponent repaired; the plain entry
keeps the formula as originally stated so that the discrepancy stays
visible in a full run.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import mpmath

from . import algebra
from .bigreal import BigReal, EvalConfig
from .core import Composition, MZVError, compositions, encode_word, height_one, ones
from .eval import (
    DEFAULT_CONFIG,
    bell_P,
    eta_bar,
    gamma_fn,
    hyp3f2_unit,
    zeta_m,
    zeta_single,
)

Leg = Callable[[EvalConfig], BigReal]


class ParameterError(MZVError, ValueError):
    """Parameters outside an identity's domain."""


class UnknownIdentity(MZVError, KeyError):
    pass


@dataclass(frozen=True)
class IdentityInstance:
    id: str
    params: dict
    lhs: Leg
    rhs: Leg
    lhs_label: str = "lhs"
    rhs_label: str = "rhs"
    extra_legs: tuple[tuple[str, Leg], ...] = ()
    tolerance: float | None = None

    @property
    def legs(self) -> list[tuple[str, Leg]]:
        return [(self.lhs_label, self.lhs), (self.rhs_label, self.rhs), *self.extra_legs]


# --- small helpers --------------------------------------------------------


def C(*exponents: int, bars: Iterable[int] = ()) -> Composition:
    return Composition.of(*exponents, bars=bars)


def _z(c: Composition, cfg: EvalConfig, star: bool = False) -> BigReal:
    return zeta_m(c, star, cfg)


def _zeta(s: int, cfg: EvalConfig) -> BigReal:
    return zeta_single(s, cfg)


def _sum(terms, cfg: EvalConfig = DEFAULT_CONFIG) -> BigReal:
    total = BigReal(0, cfg.bits)
    for t in terms:
        total = total + t
    return total


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def _nonneg(**kw):
    for name, v in kw.items():
        if not isinstance(v, int) or v < 0:
            raise ParameterError(f"{name} must be a nonnegative integer, got {v!r}")


def _at_least(bound: int, **kw):
    for name, v in kw.items():
        if not isinstance(v, int) or v < bound:
            raise ParameterError(f"{name} must be an integer >= {bound}, got {v!r}")


# --- the four height-one sums ------------------------------------------------


def Z_minus(n: int, cfg: EvalConfig) -> BigReal:
    return _sum(((-1) ** b) * _z(height_one(n - b, b), cfg) for b in range(n + 1))


def Z_plus(n: int, cfg: EvalConfig) -> BigReal:
    return _sum(_z(height_one(n - b, b), cfg) for b in range(n + 1))


def Zstar_minus(n: int, cfg: EvalConfig) -> BigReal:
    return _sum(((-1) ** b) * _z(height_one(n - b, b), cfg, star=True) for b in range(n + 1))


def Zstar_plus(n: int, cfg: EvalConfig) -> BigReal:
    return _sum(_z(height_one(n - b, b), cfg, star=True) for b in range(n + 1))


def Z_minus_closed(n: int, cfg: EvalConfig) -> BigReal:
    """0 for odd n, ``2 (1 - 2^-(n+1)) ζ(n+2)`` for even n."""
    if n % 2:
        return BigReal(0, cfg.bits)
    return 2 * (1 - Fraction(1, 2 ** (n + 1))) * _zeta(n + 2, cfg)


def Z_plus_closed(n: int, cfg: EvalConfig) -> BigReal:
    """``-2^(n+2) P_{n+2}(0, ζ(2̄), ..., ζ(overline{n+2}))``."""
    xs = [BigReal(0, cfg.bits)] + [eta_bar(k, cfg) for k in range(2, n + 3)]
    return -(2 ** (n + 2)) * bell_P(n + 2, xs)


def Zstar_plus_closed(n: int, cfg: EvalConfig) -> BigReal:
    return 2 * (n + 1) * (1 - Fraction(1, 2 ** (n + 1))) * _zeta(n + 2, cfg)


# values of Z_+(n), n <= 4, written out as polynomials in ζ(k̄)
def _z_plus_listed(n: int, cfg: EvalConfig) -> BigReal:
    e = lambda k: eta_bar(k, cfg)  # noqa: E731
    if n == 0:
        return -2 * e(2)
    if n == 1:
        return Fraction(-8, 3) * e(3)
    if n == 2:
        return -2 * (e(2) ** 2 + 2 * e(4))
    if n == 3:
        return Fraction(-16, 15) * (5 * e(2) * e(3) + 6 * e(5))
    if n == 4:
        return Fraction(-4, 9) * (3 * e(2) ** 3 + 18 * e(2) * e(4) + 8 * e(3) ** 2 + 24 * e(6))
    raise ValueError("listed values exist for n <= 4 only")


# --- family builders -----------------------------------------------------------


def make_Zminus_closed(n: int) -> IdentityInstance:
    _nonneg(n=n)
    extra = []
    if n % 2 == 0:
        m = n // 2
        extra = [
            ("zeta_star_twos", lambda cfg: _z(C(*([2] * (m + 1))), cfg, star=True)),
            ("minus_two_eta", lambda cfg: -2 * eta_bar(n + 2, cfg)),
        ]
    return IdentityInstance(
        "Z-", {"n": n},
        lambda cfg: Z_minus(n, cfg), lambda cfg: Z_minus_closed(n, cfg),
        "direct_sum", "closed_form", tuple(extra),
    )


def make_Zplus_closed(n: int) -> IdentityInstance:
    _nonneg(n=n)
    extra = [("listed_value", lambda cfg: _z_plus_listed(n, cfg))] if n <= 4 else []
    return IdentityInstance(
        "Z+", {"n": n},
        lambda cfg: Z_plus(n, cfg), lambda cfg: Z_plus_closed(n, cfg),
        "direct_sum", "bell_polynomial", tuple(extra),
    )


def make_Zstar_plus_closed(n: int) -> IdentityInstance:
    _nonneg(n=n)
    return IdentityInstance(
        "Z*+", {"n": n},
        lambda cfg: Zstar_plus(n, cfg), lambda cfg: Zstar_plus_closed(n, cfg),
        "direct_sum", "closed_form",
        (("minus_eta", lambda cfg: -2 * (n + 1) * eta_bar(n + 2, cfg)),),
    )


def make_Zstar_minus(n: int) -> IdentityInstance:
    _nonneg(n=n)

    def rhs(cfg):
        return _sum(
            _z(C(n - 2 * b + 2, *([2] * b)), cfg, star=True) for b in range(n // 2 + 1)
        )

    return IdentityInstance(
        "Z*-", {"n": n}, lambda cfg: Zstar_minus(n, cfg), rhs, "direct_sum", "star_twos_sum"
    )


def _t11_lhs(p: int, cfg: EvalConfig) -> BigReal:
    terms = []
    for m in range(0, p + 1, 2):
        for alpha in compositions(p + 3, m + 2):
            terms.append(2 ** (alpha[-1] + 1) * _z(C(*alpha[:-1], alpha[-1] + 1), cfg))
    return _sum(terms, cfg)


def _t11_rhs(p: int, cfg: EvalConfig, zm, zp) -> BigReal:
    total = _sum((zm(2 * m, cfg) * zp(p - 2 * m, cfg) for m in range(p // 2 + 1)), cfg)
    total = total + zp(p + 2, cfg)
    if p % 2 == 0:
        return total + (p + 2) * _zeta(p + 4, cfg) - zm(p + 2, cfg)
    return total + (p - 1) * _zeta(p + 4, cfg)


def make_T1_1(p: int) -> IdentityInstance:
    _nonneg(p=p)
    return IdentityInstance(
        "T1.1", {"p": p},
        lambda cfg: _t11_lhs(p, cfg),
        lambda cfg: _t11_rhs(p, cfg, Z_minus_closed, Z_plus_closed),
        "weighted_sum", "closed_form_convolution",
        (("direct_sum_convolution", lambda cfg: _t11_rhs(p, cfg, Z_minus, Z_plus)),),
    )


def _adw_convolution(p: int, cfg: EvalConfig, zm, zsp) -> BigReal:
    return _sum((zm(2 * m, cfg) * zsp(2 * p - 2 * m, cfg) for m in range(p + 1)), cfg)


def _make_adw(p: int, corrected: bool) -> IdentityInstance:
    _nonneg(p=p)
    shift = 2 * p + 2 if corrected else p + 2

    def rhs(cfg):
        return (2 * p + 2) * (2 * p + 1 + Fraction(1, 2 ** shift)) * _zeta(2 * p + 4, cfg)

    return IdentityInstance(
        "EQ.ADW-CORRECTED" if corrected else "EQ.ADW", {"p": p},
        lambda cfg: _adw_convolution(p, cfg, Z_minus_closed, Zstar_plus_closed), rhs,
        "closed_form_convolution", "zeta_multiple",
        (("direct_sum_convolution", lambda cfg: _adw_convolution(p, cfg, Z_minus, Zstar_plus)),),
    )


def make_T_thm2(p: int) -> IdentityInstance:
    """Even-index convolution of Z_- with Z*_+ against ``(2p+2)(2p+1+2^-(p+2)) ζ(2p+4)``."""
    return _make_adw(p, corrected=False)


def make_T_thm2_corrected(p: int) -> IdentityInstance:
    """Same convolution against ``(2p+2)(2p+1+2^-(2p+2)) ζ(2p+4)``."""
    return _make_adw(p, corrected=True)


def _conv_minus_starplus(p: int, cfg: EvalConfig) -> BigReal:
    return _sum((Z_minus_closed(m, cfg) * Zstar_plus_closed(p - m, cfg) for m in range(p + 1)), cfg)


def _parity_term(p: int, cfg: EvalConfig) -> BigReal:
    if p % 2 == 0:
        return BigReal(0, cfg.bits)
    return 2 * ((-1) ** p - 1) * _z(C(p + 2, 2, bars=[1]), cfg)


def _alt_double_block(p: int, cfg: EvalConfig) -> BigReal:
    """``sum_{a+b=p+1} 2^(a+2) ζ(b+1, overline{a+2})``."""
    return _sum((2 ** (a + 2) * _z(C(p + 1 - a + 1, a + 2, bars=[1]), cfg) for a in range(p + 2)), cfg)


def make_S5_convolution(p: int) -> IdentityInstance:
    _nonneg(p=p)
    return IdentityInstance(
        "S5", {"p": p},
        lambda cfg: _conv_minus_starplus(p, cfg),
        lambda cfg: _parity_term(p, cfg) + (p + 2) * _alt_double_block(p, cfg),
        "closed_form_convolution", "alternating_double_sums",
        (("direct_sum_convolution",
          lambda cfg: _sum((Z_minus(m, cfg) * Zstar_plus(p - m, cfg) for m in range(p + 1)), cfg)),),
    )


def _cor54_coeff(p: int, corrected: bool) -> Fraction:
    sign = 1 if corrected else -1
    return p + 1 + sign * Fraction(1, 2 ** (p + 2))


def _make_cor54(p: int, corrected: bool) -> IdentityInstance:
    _nonneg(p=p)
    coeff = _cor54_coeff(p, corrected)
    return IdentityInstance(
        "EQ.54-CORRECTED" if corrected else "EQ.54", {"p": p},
        lambda cfg: _conv_minus_starplus(p, cfg),
        lambda cfg: _parity_term(p, cfg) + (p + 2) * coeff * _zeta(p + 4, cfg),
        "closed_form_convolution", "zeta_multiple",
    )


def make_cor54(p: int) -> IdentityInstance:
    return _make_cor54(p, corrected=False)


def make_cor54_corrected(p: int) -> IdentityInstance:
    return _make_cor54(p, corrected=True)


def _make_cor54_derived(p: int, corrected: bool) -> IdentityInstance:
    _nonneg(p=p)
    coeff = _cor54_coeff(p, corrected)
    return IdentityInstance(
        "EQ.54-DERIVED-CORRECTED" if corrected else "EQ.54-DERIVED", {"p": p},
        lambda cfg: _alt_double_block(p, cfg),
        lambda cfg: coeff * _zeta(p + 4, cfg),
        "alternating_double_sums", "zeta_multiple",
    )


def make_cor54_derived(p: int) -> IdentityInstance:
    return _make_cor54_derived(p, corrected=False)


def make_cor54_derived_corrected(p: int) -> IdentityInstance:
    return _make_cor54_derived(p, corrected=True)


def make_weighted_alt(n: int) -> IdentityInstance:
    _nonneg(n=n)
    return IdentityInstance(
        "S5.WEIGHTED-ALT", {"n": n},
        lambda cfg: _sum((2 ** (n - a + 1) * _z(C(a + 1, n - a + 1, bars=[1]), cfg) for a in range(n + 1)), cfg),
        lambda cfg: (n + 1) * _zeta(n + 2, cfg) + 2 * _z(C(n + 1, 1, bars=[1]), cfg) + 2 * eta_bar(n + 2, cfg),
        "weighted_sum", "closed_form",
    )


def _teo1_lhs(n, cfg):
    return _sum((_z(C(a + 1, n - a + 1, bars=[1]), cfg) for a in range(n + 1)), cfg)


def make_teo_sums(n: int, corrected: bool = False) -> IdentityInstance:
    """``sum ζ(a1+1, overline{a2+1})`` over ``a1+a2 = n`` against ζ(1, overline{n+1}) and ζ(1̄)ζ(overline{n+1})."""
    _at_least(1, n=n)
    sign = -1 if corrected else 1
    return IdentityInstance(
        "TEO.1-CORRECTED" if corrected else "TEO.1", {"n": n},
        lambda cfg: _teo1_lhs(n, cfg),
        lambda cfg: sign * (_z(C(1, n + 1, bars=[1]), cfg) - eta_bar(1, cfg) * eta_bar(n + 1, cfg)),
        "double_sum", "closed_form",
    )


def make_teo_sums_corrected(n: int) -> IdentityInstance:
    return make_teo_sums(n, corrected=True)


def make_teo_sums2(n: int) -> IdentityInstance:
    _at_least(1, n=n)
    return IdentityInstance(
        "TEO.2", {"n": n},
        lambda cfg: _sum((_z(C(a + 1, n + 1 - a + 1, bars=[0, 1]), cfg) for a in range(n + 2)), cfg),
        lambda cfg: eta_bar(1, cfg) * _zeta(n + 2, cfg) - _z(C(1, n + 2, bars=[0]), cfg),
        "double_sum", "closed_form",
    )


def make_eq2w(r: int) -> IdentityInstance:
    _nonneg(r=r)
    return IdentityInstance(
        "EQ.2W", {"r": r},
        lambda cfg: _sum((eta_bar(a + 1, cfg) * eta_bar(r - a + 1, cfg) for a in range(r + 1)), cfg),
        lambda cfg: _sum((2 ** (r - a + 1) * _z(C(a + 1, r - a + 1, bars=[1]), cfg) for a in range(r + 1)), cfg),
        "product_sum", "weighted_double_sum",
    )


def make_eq2barm(p: int, q: int) -> IdentityInstance:
    _nonneg(p=p, q=q)

    def rhs(cfg):
        return _sum(
            ((math.comb(a2, p) + math.comb(a2, q)) * _z(C(p + q - a2 + 1, a2 + 1, bars=[1]), cfg)
             for a2 in range(p + q + 1)), cfg)

    return IdentityInstance(
        "EQ.2BARM", {"p": p, "q": q},
        lambda cfg: eta_bar(p + 1, cfg) * eta_bar(q + 1, cfg), rhs, "product", "double_sums",
    )


def make_eq1barm(p: int, q: int) -> IdentityInstance:
    _nonneg(p=p, q=q)

    def rhs(cfg):
        first = _sum(
            (math.comb(a2, q) * _z(C(p + q + 1 - a2 + 1, a2 + 1, bars=[0, 1]), cfg)
             for a2 in range(p + q + 2)), cfg)
        second = _sum(
            (math.comb(a2 + 1, p + 1) * _z(C(p + q - a2 + 1, a2 + 2, bars=[0]), cfg)
             for a2 in range(p + q + 1)), cfg)
        return first + second

    return IdentityInstance(
        "EQ.1BARM", {"p": p, "q": q},
        lambda cfg: _zeta(p + 2, cfg) * eta_bar(q + 1, cfg), rhs, "product", "double_sums",
    )


def _depth_two_sum(r: int, coeff: Callable[[int, int], Fraction | int], cfg: EvalConfig) -> BigReal:
    """``sum coeff(a1, a2) ζ(a1, a2+1)`` over ``a1 + a2 = r+3``."""
    w = r + 3
    return _sum((coeff(a1, w - a1) * _z(C(a1, w - a1 + 1), cfg) for a1 in range(1, w)), cfg)


def make_OZ(r: int) -> IdentityInstance:
    _nonneg(r=r)
    return IdentityInstance(
        "OZ", {"r": r},
        lambda cfg: _depth_two_sum(r, lambda a1, a2: 2 ** a2, cfg),
        lambda cfg: Fraction(r + 5, 2) * _zeta(r + 4, cfg),
        "weighted_sum", "zeta_multiple",
    )


def make_sum_formula(r: int) -> IdentityInstance:
    _nonneg(r=r)
    return IdentityInstance(
        "SUM", {"r": r},
        lambda cfg: _depth_two_sum(r, lambda a1, a2: 1, cfg),
        lambda cfg: _zeta(r + 4, cfg),
        "double_sum", "zeta",
    )


def t12_coefficient(a1: int, a2: int, lam: Fraction) -> Fraction:
    """``(λ^(a1-1) + 1)(λ+1)^a2 - λ^(a1-1) - λ^a2`` with ``0**0 == 1``."""
    lam = Fraction(lam)
    la = lam ** (a1 - 1)
    return (la + 1) * (lam + 1) ** a2 - la - lam ** a2


def make_T1_2(p: int, lam) -> IdentityInstance:
    _nonneg(p=p)
    lam = _frac(lam)
    if lam == 1:
        raise ParameterError("lambda must differ from 1 (use OZ for the limit)")
    extra = []
    if lam == -1 and p % 2 == 0:
        extra.append(("alternating_sign_sum",
                      lambda cfg: 2 * _depth_two_sum(p, lambda a1, a2: (-1) ** a1, cfg)))
    params = {"p": p, "lambda": lam}
    return IdentityInstance(
        "T1.2", params,
        lambda cfg: _depth_two_sum(p, lambda a1, a2: t12_coefficient(a1, a2, lam), cfg),
        lambda cfg: (lam ** (p + 3) - 1) / (lam - 1) * _zeta(p + 4, cfg),
        "weighted_sum", "zeta_multiple", tuple(extra),
    )


def make_euler_zeta13(r: int) -> IdentityInstance:
    _nonneg(r=r)
    return IdentityInstance(
        "EULER13", {"r": r},
        lambda cfg: _z(C(1, r + 3), cfg),
        lambda cfg: Fraction(r + 3, 2) * _zeta(r + 4, cfg)
        - Fraction(1, 2) * _sum((_zeta(l + 2, cfg) * _zeta(r - l + 2, cfg) for l in range(r + 1)), cfg),
        "double_zeta", "closed_form",
    )


def kaneko_sakata_terms(r: int, k: int) -> algebra.LinComb:
    """``sum_j (-1)^(j-1) sum ζ(a + b)`` over depth-j compositions a of k and b of r."""
    terms = []
    for j in range(1, min(r, k) + 1):
        for a in compositions(k, j):
            for b in compositions(r, j):
                terms.append((C(*(x + y for x, y in zip(a, b))), (-1) ** (j - 1)))
    return algebra.LinComb(terms)


def make_KS(r: int, k: int) -> IdentityInstance:
    _at_least(1, r=r, k=k)
    combo = kaneko_sakata_terms(r, k)
    return IdentityInstance(
        "KS", {"r": r, "k": k},
        lambda cfg: _z(C(*ones(r - 1), k + 1), cfg),
        lambda cfg: combo.evaluate(lambda c: _z(c, cfg), BigReal(0, cfg.bits)),
        "height_one", "composition_pairs",
    )


def make_AK(k: int, s: int) -> IdentityInstance:
    _at_least(2, k=k, s=s)

    def rhs(cfg):
        inner = _sum((_z(C(*ones(a), 2, *ones(k - 2 - a), s), cfg) for a in range(k - 1)), cfg)
        inner = inner + s * _z(C(*ones(k - 1), s + 1), cfg)
        tail = _sum(((-1) ** j * _zeta(k - j, cfg) * _z(C(*ones(j), s), cfg) for j in range(k - 1)), cfg)
        return (-1) ** (k - 1) * inner + tail

    return IdentityInstance(
        "AK", {"k": k, "s": s},
        lambda cfg: _z(C(*ones(s - 1), k + 1), cfg, star=True), rhs,
        "zeta_star", "mzv_representation",
    )


def make_le_murakami(w: int) -> IdentityInstance:
    _at_least(1, w=w)
    n = 2 * w - 2
    return IdentityInstance(
        "EQ.A.1", {"w": w},
        lambda cfg: _sum(((-1) ** (a + 1) * _z(height_one(a, n - a), cfg) for a in range(n + 1)), cfg),
        lambda cfg: 2 * eta_bar(2 * w, cfg),
        "signed_height_one_sum", "two_eta",
        # the same sum is -Z_-(2w-2); its closed form must agree in sign
        (("minus_Z_minus_closed", lambda cfg: -Z_minus_closed(n, cfg)),),
    )


def make_OEL_remark(n: int, k: int) -> IdentityInstance:
    if not (isinstance(k, int) and k >= 2 and k % 2 == 0):
        raise ParameterError(f"k must be an even integer >= 2, got {k!r}")
    if not (isinstance(n, int) and n >= k):
        raise ParameterError(f"n must be an integer >= k, got {n!r}")

    def lhs(cfg):
        terms = []
        for alpha in compositions(n, k):
            weight = sum(2 ** alpha[i] for i in range(1, k, 2))
            terms.append(weight * _z(C(*alpha[:-1], alpha[-1] + 1), cfg))
        return _sum(terms, cfg)

    return IdentityInstance(
        "OEL", {"n": n, "k": k}, lhs,
        lambda cfg: Fraction(n + k, 2) * _zeta(n + 1, cfg),
        "weighted_sum", "zeta_multiple",
    )


def make_reflection(u: int, v: int) -> IdentityInstance:
    _at_least(2, u=u, v=v)
    return IdentityInstance(
        "REFL", {"u": u, "v": v},
        lambda cfg: _z(C(u, v), cfg) + _z(C(v, u), cfg),
        lambda cfg: _zeta(u, cfg) * _zeta(v, cfg) - _zeta(u + v, cfg),
        "double_zetas", "products",
    )


def make_euler_decomposition(p: int, q: int) -> IdentityInstance:
    _at_least(1, p=p, q=q)
    combo = algebra.euler_decomposition(p, q)
    shuffled = None
    if p == q == 1:
        shuffled = algebra.word_to_zeta(algebra.shuffle(encode_word(C(2)), encode_word(C(2))))
    extra = ()
    if shuffled is not None:
        extra = (("shuffle_product", lambda cfg: shuffled.evaluate(lambda c: _z(c, cfg), BigReal(0, cfg.bits))),)
    return IdentityInstance(
        "T2.5", {"p": p, "q": q},
        lambda cfg: _zeta(p + 1, cfg) * _zeta(q + 1, cfg),
        lambda cfg: combo.evaluate(lambda c: _z(c, cfg), BigReal(0, cfg.bits)),
        "product", "double_sums", extra,
    )


def make_stuffle(r: int, s: int, rbar: int = 0, sbar: int = 0) -> IdentityInstance:
    _at_least(1, r=r, s=s)
    if rbar not in (0, 1) or sbar not in (0, 1):
        raise ParameterError("rbar and sbar are 0 or 1")
    a = C(r, bars=[0] if rbar else [])
    b = C(s, bars=[0] if sbar else [])
    if (r < 2 and not rbar) or (s < 2 and not sbar):
        raise ParameterError("depth-one factors must converge (exponent >= 2 or barred)")
    combo = algebra.stuffle(a, b)
    return IdentityInstance(
        "STUFFLE", {"r": r, "s": s, "rbar": rbar, "sbar": sbar},
        lambda cfg: _z(a, cfg) * _z(b, cfg),
        lambda cfg: combo.evaluate(lambda c: _z(c, cfg), BigReal(0, cfg.bits)),
        "product", "stuffle",
    )


def make_star_ones(m: int) -> IdentityInstance:
    _nonneg(m=m)
    return IdentityInstance(
        "STAR-ONES", {"m": m},
        lambda cfg: _z(height_one(m, 0), cfg, star=True),
        lambda cfg: (m + 1) * _zeta(m + 2, cfg),
        "zeta_star", "zeta_multiple",
    )


def make_height_one_duality(m: int, n: int) -> IdentityInstance:
    _nonneg(m=m, n=n)
    return IdentityInstance(
        "DUAL-H1", {"m": m, "n": n},
        lambda cfg: _z(height_one(m, n), cfg),
        lambda cfg: _z(height_one(n, m), cfg),
        "height_one", "dual",
    )


# --- generating functions ----------------------------------------------------------


def _geometric_box(x: float, y: float, budget: float, growth: Callable[[int], float]) -> tuple[int, int]:
    """Smallest box (M1, M2) whose complement bound falls below ``budget``.

    The bound is ``sum_{(m,n) outside box} growth(m) |x|^m |y|^n`` (computed in
    floats, far past the point of convergence).
    """
    ax, ay = abs(x), abs(y)

    def row(limit, a, g):
        total = 0.0
        k = limit + 1
        while True:
            t = g(k) * a ** k
            total += t
            if t < 1e-40 and k > limit + 50:
                return total
            k += 1

    full_x = row(-1, ax, growth)
    full_y = row(-1, ay, lambda k: 1.0)
    M1 = M2 = 0
    while True:
        tail_x = row(M1, ax, growth) if ax else 0.0
        tail_y = row(M2, ay, lambda k: 1.0) if ay else 0.0
        bound = tail_x * full_y + full_x * tail_y
        if bound < budget:
            return M1, M2
        if tail_x * full_y >= full_x * tail_y:
            M1 += 1
        else:
            M2 += 1


ZETA2 = math.pi ** 2 / 6


def _to_mp(x: Fraction, cfg: EvalConfig) -> BigReal:
    return BigReal(x, cfg.bits)


def make_genfun1(x, y, tolerance: float = 1e-12) -> IdentityInstance:
    """``sum ζ({1}^m, n+2) x^(m+1) y^(n+1)`` against its Gamma and exponential closed forms."""
    x, y = _frac(x), _frac(y)
    if abs(x) + abs(y) >= 1:
        raise ParameterError("need |x| + |y| < 1")
    xf, yf = float(x), float(y)
    # ζ({1}^m, n+2) <= ζ(m+2) <= ζ(2)
    M1, M2 = _geometric_box(xf, yf, tolerance / 10 / ZETA2 / max(abs(xf * yf), 1e-300),
                            lambda k: 1.0)

    def series(cfg):
        terms = []
        for m in range(M1 + 1):
            for n in range(M2 + 1):
                if x == 0 or y == 0:
                    continue
                terms.append(x ** (m + 1) * y ** (n + 1) * _z(height_one(m, n), cfg))
        return _sum(terms, cfg)

    def gamma_form(cfg):
        return 1 - gamma_fn(1 - x, cfg) * gamma_fn(1 - y, cfg) / gamma_fn(1 - x - y, cfg)

    def exp_form(cfg):
        s = abs(x) + abs(y)
        eps = cfg.eps
        total = BigReal(0, cfg.bits)
        k = 2
        while True:
            coeff = x ** k + y ** k - (x + y) ** k
            if coeff:
                total = total + coeff / k * _zeta(k, cfg)
            # remaining terms are bounded by 2 ζ(2) s^k / (1 - s)
            if 2 * ZETA2 * float(s) ** (k + 1) / (1 - float(s)) < float(eps):
                break
            k += 1
        with mpmath.workprec(cfg.bits):
            return BigReal(1 - mpmath.exp(total.value), cfg.bits)

    return IdentityInstance(
        "EQ.GN1", {"x": x, "y": y}, series, gamma_form, "truncated_series", "gamma_form",
        (("exp_form", exp_form),), tolerance=tolerance,
    )


def make_genfun2(x, y, tolerance: float = 1e-8) -> IdentityInstance:
    """``sum ζ*({1}^m, n+2) x^m y^n`` against ``3F2(1, 1, 1-y; 2-x, 2-y; 1) / ((1-x)(1-y))``."""
    x, y = _frac(x), _frac(y)
    if not (0 <= x < Fraction(1, 2) and 0 <= y < Fraction(1, 2)):
        raise ParameterError("need 0 <= x, y < 1/2")
    xf, yf = float(x), float(y)
    # ζ*({1}^m, n+2) <= ζ*({1}^m, 2) = (m+1) ζ(m+2) <= (m+1) ζ(2)
    M1, M2 = _geometric_box(xf, yf, tolerance / 10 / ZETA2, lambda k: k + 1.0)

    def series(cfg):
        terms = []
        for m in range(M1 + 1 if x else 1):
            for n in range(M2 + 1 if y else 1):
                terms.append(x ** m * y ** n * _z(height_one(m, n), cfg, star=True))
        return _sum(terms, cfg)

    def hyper_form(cfg):
        value, _err = hyp3f2_unit(1, 1, 1 - y, 2 - x, 2 - y, cfg)
        return value / ((1 - x) * (1 - y))

    return IdentityInstance(
        "EQ.GN2", {"x": x, "y": y}, series, hyper_form, "truncated_series", "hypergeometric_form",
        tolerance=tolerance,
    )


# --- registry -----------------------------------------------------------------


@dataclass(frozen=True)
class Family:
    id: str
    description: str
    params: tuple[str, ...]
    grid: tuple[dict, ...]
    build: Callable[..., IdentityInstance]
    note: str = ""

    def make(self, **params) -> IdentityInstance:
        missing = [p for p in self.params if p not in params]
        if missing:
            raise ParameterError(f"{self.id} needs parameters {', '.join(missing)}")
        unknown = [p for p in params if p not in self.params]
        if unknown:
            raise ParameterError(f"{self.id} does not take {', '.join(unknown)}")
        # "lambda" is a keyword, so builders take it as ``lam``
        args = {("lam" if k == "lambda" else k): _coerce_param(k, v) for k, v in params.items()}
        return self.build(**args)

    def instances(self) -> list[IdentityInstance]:
        return [self.make(**g) for g in self.grid]


def _coerce_param(name: str, v):
    if name in ("lambda", "x", "y"):
        return _frac(v)
    if isinstance(v, Fraction):
        if v.denominator != 1:
            raise ParameterError(f"{name} must be an integer, got {v}")
        return int(v)
    if isinstance(v, str):
        try:
            return int(v)
        except ValueError:
            raise ParameterError(f"{name} must be an integer, got {v!r}") from None
    return v


def _g(name: str, values: Iterable) -> tuple[dict, ...]:
    return tuple({name: v} for v in values)


def _g2(n1: str, n2: str, pairs: Iterable[tuple]) -> tuple[dict, ...]:
    return tuple({n1: a, n2: b} for a, b in pairs)


LAMBDAS = (Fraction(-2), Fraction(-1), Fraction(-1, 2), Fraction(0), Fraction(1, 2), Fraction(2), Fraction(3))

_FAMILIES = [
    Family("AK", "ζ*({1}^(s-1), k+1) via its representation by height-one-like MZVs",
           ("k", "s"), _g2("k", "s", [(2, 2), (2, 3), (3, 2), (3, 3)]), make_AK),
    Family("DUAL-H1", "ζ({1}^m, n+2) = ζ({1}^n, m+2)",
           ("m", "n"), _g2("m", "n", [(m, n) for m in range(4) for n in range(m + 1, 5)]),
           make_height_one_duality),
    Family("EQ.1BARM", "ζ(p+2) ζ(overline{q+1}) as binomial-weighted alternating double sums",
           ("p", "q"), _g2("p", "q", [(p, q) for p in range(3) for q in range(3)]), make_eq1barm),
    Family("EQ.2BARM", "ζ(overline{p+1}) ζ(overline{q+1}) as binomial-weighted double sums",
           ("p", "q"), _g2("p", "q", [(p, q) for p in range(3) for q in range(3)]), make_eq2barm),
    Family("EQ.2W", "sum ζ(overline{a+1}) ζ(overline{b+1}) = sum 2^(b+1) ζ(a+1, overline{b+1})",
           ("r",), _g("r", range(5)), make_eq2w),
    Family("EQ.54", "sum Z_-(m) Z*_+(n) against the zeta multiple with coefficient (p+2)(p+1-2^-(p+2)), as stated",
           ("p",), _g("p", range(6)), make_cor54,
           note="fails as stated; see EQ.54-CORRECTED"),
    Family("EQ.54-CORRECTED", "sum Z_-(m) Z*_+(n) against the zeta multiple with coefficient (p+2)(p+1+2^-(p+2))",
           ("p",), _g("p", range(6)), make_cor54_corrected),
    Family("EQ.54-DERIVED", "sum 2^(a+2) ζ(b+1, overline{a+2}) = (p+1-2^-(p+2)) ζ(p+4), as stated",
           ("p",), _g("p", range(6)), make_cor54_derived,
           note="fails as stated; see EQ.54-DERIVED-CORRECTED"),
    Family("EQ.54-DERIVED-CORRECTED", "sum 2^(a+2) ζ(b+1, overline{a+2}) = (p+1+2^-(p+2)) ζ(p+4)",
           ("p",), _g("p", range(6)), make_cor54_derived_corrected),
    Family("EQ.A.1", "sum (-1)^(a+1) ζ({1}^a, b+2) over a+b = 2w-2 equals 2 ζ(overline{2w})",
           ("w",), _g("w", range(1, 4)), make_le_murakami),
    Family("EQ.ADW", "sum Z_-(2m) Z*_+(2p-2m) = (2p+2)(2p+1+2^-(p+2)) ζ(2p+4), as stated",
           ("p",), _g("p", range(5)), make_T_thm2,
           note="fails as stated for p >= 1; see EQ.ADW-CORRECTED"),
    Family("EQ.ADW-CORRECTED", "sum Z_-(2m) Z*_+(2p-2m) = (2p+2)(2p+1+2^-(2p+2)) ζ(2p+4)",
           ("p",), _g("p", range(5)), make_T_thm2_corrected),
    Family("EQ.GN1", "generating function of ζ({1}^m, n+2): truncated series vs Gamma and exp forms",
           ("x", "y"), _g2("x", "y", [(Fraction(1, 4), Fraction(1, 4)), (Fraction(1, 4), Fraction(1, 3)),
                                     (Fraction(1, 10), Fraction(1, 2))]), make_genfun1),
    Family("EQ.GN2", "generating function of ζ*({1}^m, n+2): truncated series vs 3F2 at 1",
           ("x", "y"), _g2("x", "y", [(Fraction(0), Fraction(0)), (Fraction(1, 4), Fraction(1, 4))]),
           make_genfun2),
    Family("EULER13", "ζ(1, r+3) = (r+3)/2 ζ(r+4) - 1/2 sum ζ(l+2) ζ(r-l+2)",
           ("r",), _g("r", range(5)), make_euler_zeta13),
    Family("KS", "ζ({1}^(r-1), k+1) as a signed sum of ζ(a+b) over equal-depth compositions",
           ("r", "k"), _g2("r", "k", [(r, k) for r in range(1, 7) for k in range(1, 7) if r + k <= 7]),
           make_KS),
    Family("OEL", "sum (2^a2 + 2^a4 + ... + 2^ak) ζ(a1, ..., ak+1) over |a| = n = (n+k)/2 ζ(n+1)",
           ("n", "k"), _g2("n", "k", [(2, 2), (3, 2), (4, 2), (4, 4), (5, 4)]), make_OEL_remark),
    Family("OZ", "sum 2^a2 ζ(a1, a2+1) over a1+a2 = r+3 equals (r+5)/2 ζ(r+4)",
           ("r",), _g("r", range(6)), make_OZ),
    Family("REFL", "ζ(u,v) + ζ(v,u) = ζ(u) ζ(v) - ζ(u+v)",
           ("u", "v"), _g2("u", "v", [(2, 2), (2, 3), (3, 4)]), make_reflection),
    Family("S5", "sum Z_-(m) Z*_+(n) over m+n = p as alternating double sums",
           ("p",), _g("p", range(6)), make_S5_convolution),
    Family("STAR-ONES", "ζ*({1}^m, 2) = (m+1) ζ(m+2)",
           ("m",), _g("m", range(5)), make_star_ones),
    Family("STUFFLE", "depth-one harmonic products ζ(r)ζ(s), bars allowed",
           ("r", "s", "rbar", "sbar"),
           tuple({"r": r, "s": s, "rbar": rb, "sbar": sb}
                 for r in range(1, 4) for s in range(1, 4) for rb in (0, 1) for sb in (0, 1)
                 if (r >= 2 or rb) and (s >= 2 or sb)),
           make_stuffle),
    Family("SUM", "sum ζ(a1, a2+1) over a1+a2 = r+3 equals ζ(r+4)",
           ("r",), _g("r", range(6)), make_sum_formula),
    Family("T1.1", "even-depth weighted sum of 2^(a_{m+1}+1) ζ(...) via Z_- * Z_+ convolutions",
           ("p",), _g("p", range(7)), make_T1_1),
    Family("T1.2", "lambda-weighted sum of ζ(a1, a2+1) = (λ^(p+3)-1)/(λ-1) ζ(p+4)",
           ("p", "lambda"), tuple({"p": p, "lambda": lam} for p in range(5) for lam in LAMBDAS), make_T1_2),
    Family("T2.5", "ζ(p+1) ζ(q+1) as binomial-weighted double zeta values",
           ("p", "q"), _g2("p", "q", [(p, q) for p in range(1, 5) for q in range(1, 5) if p + q <= 8]),
           make_euler_decomposition),
    Family("TEO.1", "sum ζ(a1+1, overline{a2+1}) = ζ(1, overline{n+1}) - ζ(1̄) ζ(overline{n+1}), as stated",
           ("n",), _g("n", range(1, 4)), make_teo_sums, note="fails as stated; see TEO.1-CORRECTED"),
    Family("TEO.1-CORRECTED", "sum ζ(a1+1, overline{a2+1}) = ζ(1̄) ζ(overline{n+1}) - ζ(1, overline{n+1})",
           ("n",), _g("n", range(1, 4)), make_teo_sums_corrected),
    Family("TEO.2", "sum ζ(overline{a1+1}, overline{a2+1}) = ζ(1̄) ζ(n+2) - ζ(1̄, n+2)",
           ("n",), _g("n", range(1, 4)), make_teo_sums2),
    Family("S5.WEIGHTED-ALT", "sum 2^(b+1) ζ(a+1, overline{b+1}) = (n+1)ζ(n+2) + 2ζ(n+1, 1̄) + 2ζ(overline{n+2})",
           ("n",), _g("n", range(1, 6)), make_weighted_alt),
    Family("Z*+", "Z*_+(n) = 2(n+1)(1-2^-(n+1)) ζ(n+2) = -2(n+1) ζ(overline{n+2})",
           ("n",), _g("n", range(9)), make_Zstar_plus_closed),
    Family("Z*-", "Z*_-(n) = sum over a+2b = n of ζ*(a+2, {2}^b)",
           ("n",), _g("n", range(9)), make_Zstar_minus),
    Family("Z+", "Z_+(n) = -2^(n+2) P_{n+2}(0, ζ(2̄), ..., ζ(overline{n+2}))",
           ("n",), _g("n", range(9)), make_Zplus_closed),
    Family("Z-", "Z_-(n) = 0 for odd n; ζ*({2}^(n/2+1)) = 2(1-2^-(n+1)) ζ(n+2) for even n",
           ("n",), _g("n", range(9)), make_Zminus_closed),
]

CATALOG: dict[str, Family] = {f.id: f for f in sorted(_FAMILIES, key=lambda f: f.id)}


def family(identity_id: str) -> Family:
    try:
        return CATALOG[identity_id]
    except KeyError:
        raise UnknownIdentity(identity_id) from None


def make(identity_id: str, **params) -> IdentityInstance:
    return family(identity_id).make(**params)


# --- verification ------------------------------------------------------------


def default_tolerance(cfg: EvalConfig) -> float:
    return 10.0 ** (-(cfg.target_digits - 8))


def _fmt(x: BigReal | None, digits: int) -> str:
    if x is None:
        return ""
    return mpmath.nstr(x.value, digits, strip_zeros=False) if x.value != 0 else "0"


def _fmt_small(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x) if math.isfinite(x) else ("inf" if x > 0 else "nan")
    return mpmath.nstr(x, 6)


def normalize_params(params: dict) -> dict:
    out = {}
    for k, v in params.items():
        if isinstance(v, Fraction):
            out[k] = int(v) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
        else:
            out[k] = v
    return out


def params_key(params: dict) -> tuple:
    # family parameter order, so reports sort by the first parameter first
    return tuple((k, _frac(v)) for k, v in params.items())


@dataclass
class VerificationReport:
    id: str
    params: dict
    lhs_value: str
    rhs_value: str
    abs_err: str
    rel_err: str
    tolerance: str
    passed: bool
    elapsed_ms: str
    engine_error_estimate: str
    legs: list = field(default_factory=list)
    reason: str = ""

    FIELDS = ("id", "params", "lhs_value", "rhs_value", "abs_err", "rel_err", "tolerance",
              "pass", "elapsed_ms", "engine_error_estimate", "legs", "reason")

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "params": dict(self.params),
            "lhs_value": self.lhs_value,
            "rhs_value": self.rhs_value,
            "abs_err": self.abs_err,
            "rel_err": self.rel_err,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "elapsed_ms": self.elapsed_ms,
            "engine_error_estimate": self.engine_error_estimate,
            "legs": list(self.legs),
            "reason": self.reason,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        return cls(
            id=d["id"], params=dict(d["params"]), lhs_value=d["lhs_value"], rhs_value=d["rhs_value"],
            abs_err=d["abs_err"], rel_err=d["rel_err"], tolerance=d["tolerance"], passed=bool(d["pass"]),
            elapsed_ms=d["elapsed_ms"], engine_error_estimate=d["engine_error_estimate"],
            legs=list(d.get("legs", [])), reason=d.get("reason", ""),
        )

    @property
    def sort_key(self):
        return (self.id, params_key(self.params))


def _evaluate_legs(inst: IdentityInstance, cfg: EvalConfig) -> list[BigReal]:
    return [leg(cfg) for _, leg in inst.legs]


def verify(inst: IdentityInstance, cfg: EvalConfig = DEFAULT_CONFIG, tol: float | None = None,
           estimate_error: bool = True) -> VerificationReport:
    """Evaluate every leg of ``inst`` and compare each against the first.

    Passes when the worst absolute or relative disagreement is within the
    tolerance.  The engine error estimate is the largest change of any leg
    when everything is recomputed with ten more guard digits.  Errors inside
    the legs produce a failed report instead of propagating.
    """
    if inst.tolerance is not None:
        tolerance = inst.tolerance
    else:
        tolerance = tol if tol is not None else default_tolerance(cfg)
    digits = cfg.target_digits
    start = time.perf_counter()
    labels = [label for label, _ in inst.legs]
    base = dict(id=inst.id, params=normalize_params(inst.params), tolerance=_fmt_small(float(tolerance)),
                legs=labels)
    try:
        values = _evaluate_legs(inst, cfg)
        lhs = values[0]
        with mpmath.workprec(cfg.bits):
            diffs = [abs(v.value - lhs.value) for v in values[1:]]
            abs_err = max(diffs)
            scale = max(abs(v.value) for v in values)
            rel_err = abs_err / scale if scale != 0 else (mpmath.mpf(0) if abs_err == 0 else mpmath.inf)
        engine_err = None
        if estimate_error:
            hi = cfg.with_(guard_digits=cfg.guard_digits + 10)
            hi_values = _evaluate_legs(inst, hi)
            with mpmath.workprec(hi.bits):
                engine_err = max(abs(a.value - b.value) for a, b in zip(values, hi_values))
        passed = bool(abs_err <= tolerance or rel_err <= tolerance)
        reason = ""
        if not passed:
            worst = labels[1 + diffs.index(abs_err)]
            reason = f"legs {labels[0]} and {worst} differ by {mpmath.nstr(abs_err, 6)}"
        elapsed = (time.perf_counter() - start) * 1000
        return VerificationReport(
            lhs_value=_fmt(lhs, digits), rhs_value=_fmt(values[1], digits),
            abs_err=_fmt_small(abs_err), rel_err=_fmt_small(rel_err), passed=passed,
            elapsed_ms=f"{elapsed:.1f}", engine_error_estimate=_fmt_small(engine_err),
            reason=reason, **base,
        )
    except (MZVError, ArithmeticError, ValueError, OverflowError) as exc:
        elapsed = (time.perf_counter() - start) * 1000
        return VerificationReport(
            lhs_value="", rhs_value="", abs_err="", rel_err="", passed=False,
            elapsed_ms=f"{elapsed:.1f}", engine_error_estimate="",
            reason=f"{type(exc).__name__}: {exc}", **base,
        )


def verify_family(identity_id: str, grid: Sequence[dict] | None = None, cfg: EvalConfig = DEFAULT_CONFIG,
                  tol: float | None = None, estimate_error: bool = True) -> list[VerificationReport]:
    fam = family(identity_id)
    reports = [verify(fam.make(**g), cfg, tol, estimate_error) for g in (grid or fam.grid)]
    return sorted(reports, key=lambda r: r.sort_key)
