"""Acceptance criteria, one check per criterion.

Each check returns ``(passed, detail)``.  Under pytest every criterion is a
test and a summary line per criterion is printed at the end of the session
(see conftest.py); run this file directly to get only the summary lines:

    python tests/test_acceptance.py
"""

from __future__ import annotations

import itertools
import math
import sys
import time
from fractions import Fraction

import mpmath
import pytest

from mzv import identities as I
from mzv.algebra import LinComb, shuffle, stuffle, word_to_zeta
from mzv.bigreal import BigReal, EvalConfig
from mzv.core import Word, all_admissible, comp, encode_word, height_one
from mzv.eval import eta_bar, naive_sum, partial_sum, zeta_m, zeta_single
from mzv.oracle import quad_eta, quad_height_one, quad_weighted_block, quad_zeta_single
from mzv.core import Composition, compositions

CFG = EvalConfig()  # 30 target digits
TOL = 1e-20
TIME_LIMIT = 60.0

RESULTS: dict[int, tuple[bool, str]] = {}


def _run(ids_and_grids, tol=TOL):
    """Verify every (id, params) pair; return (all passed, failures, count)."""
    failures = []
    count = 0
    for fid, grid in ids_and_grids:
        for params in grid:
            count += 1
            report = I.verify(I.make(fid, **params), CFG, tol=tol, estimate_error=False)
            if not report.passed:
                failures.append(f"{fid} {I.normalize_params(params)} rel_err={report.rel_err}")
    return not failures, failures, count


def _summary(ok, failures, count, extra=""):
    if ok:
        return f"{count} instances within tolerance{extra}"
    shown = "; ".join(failures[:4]) + (" ..." if len(failures) > 4 else "")
    return f"{len(failures)}/{count} instances fail: {shown}{extra}"


def _close(a, b, tol=TOL) -> bool:
    av = a.value if isinstance(a, BigReal) else a
    bv = b.value if isinstance(b, BigReal) else b
    with mpmath.workprec(200):
        return abs(av - bv) <= tol * max(1, abs(bv))


def _r(name, n):
    return [{name: v} for v in range(n)]


# --- the criteria ------------------------------------------------------------


def criterion_1():
    ok, fails, n = _run([("SUM", _r("r", 6)), ("OZ", _r("r", 6))])
    with mpmath.workprec(200):
        oz0 = I.make("OZ", r=0).lhs(CFG)
        pi_ok = _close(oz0, mpmath.pi ** 4 / 36)
    return ok and pi_ok, _summary(ok, fails, n, f"; OZ r=0 equals pi^4/36: {pi_ok}")


def criterion_2():
    ok, fails, n = _run([("T1.1", _r("p", 7))])
    return ok, _summary(ok, fails, n, " (p even and odd)")


def criterion_3():
    ok, fails, n = _run([("EQ.ADW", _r("p", 5))])
    zeta4 = zeta_single(4, CFG)
    inst = I.make("EQ.ADW", p=0)
    p0_ok = _close(inst.lhs(CFG), Fraction(5, 2) * zeta4) and _close(inst.rhs(CFG), Fraction(5, 2) * zeta4)
    return ok and p0_ok, _summary(ok, fails, n, f"; p=0 both sides (5/2)zeta(4): {p0_ok}")


def criterion_4():
    grid = [{"p": p, "lambda": lam} for p in range(5) for lam in I.LAMBDAS]
    ok, fails, n = _run([("T1.2", grid)])
    # λ = 0 coefficients are exactly 1, i.e. the sum formula
    exact = all(I.t12_coefficient(a1, p + 3 - a1, Fraction(0)) == 1 for p in range(5) for a1 in range(1, p + 3))
    # λ = -1, even p: the signed sum is ζ(p+4)/2
    half_ok = all(
        _close(I._depth_two_sum(p, lambda a1, a2: (-1) ** a1, CFG), zeta_single(p + 4, CFG) / 2)
        for p in range(0, 5, 2)
    )
    return ok and exact and half_ok, _summary(
        ok, fails, n, f"; lambda=0 exact sum formula: {exact}; lambda=-1 half zeta: {half_ok}")


def criterion_5():
    ok, fails, n = _run([("S5", _r("p", 6)), ("EQ.54", _r("p", 6)), ("EQ.54-DERIVED", _r("p", 6))])
    return ok, _summary(ok, fails, n)


def criterion_6():
    ok, fails, n = _run([("S5.WEIGHTED-ALT", [{"n": v} for v in range(1, 6)])])
    return ok, _summary(ok, fails, n)


def criterion_7():
    ok, fails, n = _run([(fid, _r("n", 9)) for fid in ("Z-", "Z+", "Z*+", "Z*-")])
    listed = all(_close(I._z_plus_listed(k, CFG), I.Z_plus(k, CFG)) for k in range(5))
    return ok and listed, _summary(ok, fails, n, f"; five listed Z+ values: {listed}")


def criterion_8():
    pts1 = [(Fraction(1, 4), Fraction(1, 4)), (Fraction(1, 4), Fraction(1, 3)), (Fraction(1, 10), Fraction(1, 2))]
    pts2 = [(Fraction(0), Fraction(0)), (Fraction(1, 4), Fraction(1, 4))]
    failures = []
    for fid, pts, tol in (("EQ.GN1", pts1, 1e-12), ("EQ.GN2", pts2, 1e-8)):
        for x, y in pts:
            report = I.verify(I.make(fid, x=x, y=y), CFG, estimate_error=False)
            assert report.tolerance == repr(tol)
            if not report.passed:
                failures.append(f"{fid} ({x},{y}) abs_err={report.abs_err}")
    return not failures, _summary(not failures, failures, 5, " (gn1 at 1e-12 with three legs, gn2 at 1e-8)")


def criterion_9():
    ks = [{"r": r, "k": k} for r in range(1, 7) for k in range(1, 7) if r + k <= 7]
    ak = [{"k": k, "s": s} for k, s in ((2, 2), (2, 3), (3, 2), (3, 3))]
    lm = [{"w": w} for w in (1, 2, 3)]
    ok, fails, n = _run([("KS", ks), ("AK", ak), ("EQ.A.1", lm)])
    # sign bookkeeping: the same sum is checked against 2ζ(overline{2w}) and -Z_-(2w-2)
    signs = []
    for w in (1, 2, 3):
        inst = I.make("EQ.A.1", w=w)
        lhs = inst.lhs(CFG)
        signs.append(all(_close(lhs, leg(CFG)) for _, leg in inst.extra_legs) and _close(lhs, inst.rhs(CFG)))
    return ok and all(signs), _summary(ok, fails, n, f"; Le-Murakami vs Z_- sign consistent: {all(signs)}")


def criterion_10():
    parts = []
    exact = shuffle(Word("YX"), Word("YX")) == LinComb({Word("YXYX"): 2, Word("YYXX"): 4}) \
        and word_to_zeta(shuffle(Word("YX"), Word("YX"))) == LinComb({comp("2,2"): 2, comp("1,3"): 4})
    parts.append(f"YX sh YX exact: {exact}")

    cs = list(all_admissible(5))
    numeric = True
    pairs = 0
    for c1, c2 in itertools.combinations_with_replacement(cs, 2):
        prod = zeta_m(c1, cfg=CFG) * zeta_m(c2, cfg=CFG)
        sh = word_to_zeta(shuffle(encode_word(c1), encode_word(c2)))
        st = stuffle(c1, c2)
        zero = BigReal(0, CFG.bits)
        for lc in (sh, st):
            numeric &= _close(lc.evaluate(lambda c: zeta_m(c, cfg=CFG), zero), prod)
        pairs += 1
    parts.append(f"shuffle/stuffle numeric over {pairs} pairs: {numeric}")

    mass = all(
        shuffle(Word(("YX" * 4)[:m]), Word(("XXY" * 3)[:n])).mass() == math.comb(m + n, m)
        for m in range(9) for n in range(9)
    )
    parts.append(f"shuffle mass C(m+n,m): {mass}")

    dp = all(
        partial_sum(comp(t), 200, star, exact=True) == naive_sum(comp(t), 200, star)
        for t in ("3", "2~", "1,2", "2,1~", "1~,1,2") for star in (False, True)
    )
    parts.append(f"DP = naive (depth <= 3, N=200): {dp}")
    return exact and numeric and mass and dp, "; ".join(parts)


def criterion_11():
    checks = []
    for p in range(4):
        checks.append(("zeta", p, quad_zeta_single(p), zeta_single(p + 2, CFG)))
        checks.append(("eta", p, quad_eta(p), eta_bar(p + 1, CFG)))
    for m, n, star in [(0, 0, False), (1, 0, True), (1, 1, False), (2, 3, False), (3, 2, True), (0, 4, True)]:
        checks.append(("height_one", (m, n, star), quad_height_one(m, n, star), zeta_m(height_one(m, n), star, CFG)))
    for args in [(0, 0, 2, 0), (0, 1, 1, 0), (0, 1, 2, 0), (1, 1, 2, 1)]:
        p_, q, r, l = args
        total = BigReal(0, CFG.bits)
        for alpha in compositions(q + r + 1, q + 1):
            total = total + zeta_m(Composition.of(*([1] * p_), *alpha[:-1], alpha[-1] + l + 1), cfg=CFG)
        checks.append(("weighted_block", args, quad_weighted_block(*args), total))
    bad = [f"{k} {a}" for k, a, q, e in checks if abs(q - float(e)) > 1e-7 * abs(float(e))]
    return not bad, _summary(not bad, bad, len(checks), " (relative 1e-7)")


def criterion_12():
    grid = [{"n": n, "k": k} for n, k in ((2, 2), (3, 2), (4, 2), (4, 4), (5, 4))]
    ok, fails, n = _run([("OEL", grid)])
    return ok, _summary(ok, fails, n)


CRITERIA = {
    1: ("sum formula and Ohno-Zudilin weighted sum, r=0..5", criterion_1),
    2: ("T1.1 weighted sum via Z_- * Z_+ convolutions, p=0..6", criterion_2),
    3: ("even convolution Z_-(2m) Z*_+(2p-2m) as stated, p=0..4", criterion_3),
    4: ("T1.2 lambda-weighted double sum, p=0..4, 7 lambdas", criterion_4),
    5: ("S5 convolution, EQ.54 and EQ.54-DERIVED, p=0..5", criterion_5),
    6: ("weighted alternating double sum, n=1..5", criterion_6),
    7: ("Z_-, Z_+, Z*_+, Z*_- closed forms, n=0..8", criterion_7),
    8: ("generating functions gn1 and gn2", criterion_8),
    9: ("Kaneko-Sakata, Arakawa-Kaneko, Le-Murakami", criterion_9),
    10: ("shuffle/stuffle algebra and DP vs naive summation", criterion_10),
    11: ("quadrature oracle vs summation engine", criterion_11),
    12: ("weighted sum over even depth k (n,k) grid", criterion_12),
}

# criteria whose statement contains a misprinted formula; they are run as
# stated and are expected to fail (the -CORRECTED catalog entries pass)
KNOWN_UNATTAINABLE = {3, 5}


def evaluate(number: int) -> tuple[bool, str, float]:
    title, fn = CRITERIA[number]
    start = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - start
    if elapsed > TIME_LIMIT:
        ok, detail = False, f"{detail}; took {elapsed:.1f}s > {TIME_LIMIT:.0f}s"
    RESULTS[number] = (ok, f"{title}: {detail} [{elapsed:.2f}s]")
    return ok, detail, elapsed


def summary_lines() -> list[str]:
    return [f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {text}" for n, (ok, text) in sorted(RESULTS.items())]


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    ok, detail, _ = evaluate(number)
    assert ok, f"criterion {number} failed: {detail}"


# --- corrected companions (not criteria) -------------------------------------------


def test_companion_corrected_entries_pass():
    ok, fails, _ = _run([
        ("EQ.ADW-CORRECTED", _r("p", 5)),
        ("EQ.54-CORRECTED", _r("p", 6)),
        ("EQ.54-DERIVED-CORRECTED", _r("p", 6)),
    ])
    assert ok, fails


if __name__ == "__main__":
    for number in sorted(CRITERIA):
        evaluate(number)
    print("\n".join(summary_lines()))
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
