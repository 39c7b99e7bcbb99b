"""Double-precision quadrature of integral representations.

This is a cross-check on the series engine, not a source of digits.  Both
variables of the two-dimensional integrals live on ``0 < t1 < t2 < 1``;
with ``t = 1 - exp(-v)`` the weight ``dt / (1 - t)`` becomes ``dv`` and the
logarithmic endpoint singularities at 1 turn into polynomial factors
against an exponentially decaying weight on ``[0, inf)``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from scipy import integrate

from .core import MZVError


class SubdivisionLimit(MZVError, ArithmeticError):
    """QUADPACK ran out of subintervals before meeting the tolerance."""


@dataclass(frozen=True)
class QuadConfig:
    rel_tol: float = 1e-8
    max_subdivisions: int = 200

    def __post_init__(self):
        if not 1e-12 <= self.rel_tol <= 1e-4:
            raise ValueError("rel_tol must lie in [1e-12, 1e-4]")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be positive")


DEFAULT_QUAD = QuadConfig()


def _quad(f, a, b, qc: QuadConfig, **kw) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        value, err, info, *rest = integrate.quad(
            f, a, b, epsabs=0.0, epsrel=qc.rel_tol / 10, limit=qc.max_subdivisions,
            full_output=1, **kw,
        )
    ier = info.get("ier", 0) if isinstance(info, dict) else 0
    if rest and ier in (1, 2, 3, 5) and err > qc.rel_tol * max(abs(value), 1e-300):
        raise SubdivisionLimit(f"quad failed (ier={ier}, err={err:.3g}): {rest[0]}")
    return value


def _log_inv_t(v: float) -> float:
    """log(1/t) for t = 1 - exp(-v), accurate for small and large v."""
    return -math.log1p(-math.exp(-v)) if v > 1e-300 else math.inf


def _v_max(qc: QuadConfig, power: int) -> float:
    # the integrands decay like v**power * exp(-v)
    cutoff = -math.log(qc.rel_tol / 100)
    return cutoff + power * math.log(cutoff + power + 1) + 10


def quad_zeta_single(p: int, qc: QuadConfig = DEFAULT_QUAD) -> float:
    """ζ(p+2) from  (1/(p+1)!) ∫_0^1 log(1/t)^(p+1) dt/(1-t)."""
    if p < 0:
        raise ValueError("p must be nonnegative")
    k = p + 1

    def f(v):
        return _log_inv_t(v) ** k

    # log(1/t)^k ~ exp(-k v): the tail past v_max is negligible
    upper = _v_max(qc, 0) / k + 5
    return _quad(f, 0.0, upper, qc, points=[1.0]) / math.factorial(k)


def quad_eta(p: int, qc: QuadConfig = DEFAULT_QUAD) -> float:
    """ζ(overline{p+1}) from  -(1/p!) ∫_0^1 log(1/t)^p dt/(1+t), with t = exp(-u)."""
    if p < 0:
        raise ValueError("p must be nonnegative")

    def f(u):
        return u ** p * math.exp(-u) / (1.0 + math.exp(-u))

    return -_quad(f, 0.0, _v_max(qc, p), qc) / math.factorial(p)


def _double(integrand, qc: QuadConfig, power: int) -> float:
    """∫∫_{0<t1<t2<1} integrand(w, v) dt1 dt2 / ((1 - t1) t2) in (w, v) coordinates.

    ``w = -log(1 - t1)`` runs over ``[0, v]`` and ``v = -log(1 - t2)``; the
    measure is ``dw * dv * exp(-v) / (1 - exp(-v))``.
    """

    def outer(v):
        if v <= 0.0:
            return 0.0
        jac = math.exp(-v) / -math.expm1(-v)
        inner = _quad(lambda w: integrand(w, v), 0.0, v, qc)
        return jac * inner

    return _quad(outer, 0.0, _v_max(qc, power), qc, points=[1.0])


def _log_ratio(w: float, v: float) -> float:
    """log(t2 / t1) for t1 = 1 - e^-w, t2 = 1 - e^-v."""
    return math.log(-math.expm1(-v)) - math.log(-math.expm1(-w)) if w > 0 else math.inf


def quad_height_one(m: int, n: int, star: bool = False, qc: QuadConfig = DEFAULT_QUAD) -> float:
    """ζ({1}^m, n+2) (or the star value) as a double integral.

    The plain value weights by ``log(1/(1-t1))^m``, the star value by
    ``log(1/(1-t2))^m``; both carry ``log(t2/t1)^n / (m! n!)``.
    """
    if m < 0 or n < 0:
        raise ValueError("m and n must be nonnegative")
    if m + n > 6:
        raise ValueError("quadrature oracle is limited to m + n <= 6")
    norm = math.factorial(m) * math.factorial(n)

    def f(w, v):
        first = v if star else w
        return first ** m * _log_ratio(w, v) ** n if n else first ** m

    return _double(f, qc, m) / norm


def quad_weighted_block(p_: int, q: int, r: int, l: int, qc: QuadConfig = DEFAULT_QUAD) -> float:
    """Sum of ζ({1}^p_, a_1, ..., a_q, a_{q+1}+l+1) over |a| = q+r+1, as a double integral."""
    if min(p_, q, r, l) < 0:
        raise ValueError("parameters must be nonnegative")
    if p_ + q + r + l > 6:
        raise ValueError("quadrature oracle is limited to p_+q+r+l <= 6")
    norm = math.factorial(p_) * math.factorial(q) * math.factorial(r) * math.factorial(l)

    def f(w, v):
        val = w ** p_ * (v - w) ** q
        if r:
            val *= _log_ratio(w, v) ** r
        if l:
            val *= (-math.log(-math.expm1(-v))) ** l
        return val

    return _double(f, qc, p_ + q) / norm
