from fractions import Fraction

import mpmath
import pytest

from mzv.bigreal import BigReal, EvalConfig, digits_to_bits


def test_config_defaults():
    cfg = EvalConfig()
    assert (cfg.target_digits, cfg.guard_digits, cfg.cutoff_N, cfg.em_order) == (30, 10, 100_000, 8)
    assert cfg.working_digits == 40
    assert cfg.bits == digits_to_bits(40) >= 133


@pytest.mark.parametrize(
    "kw", [{"target_digits": 0}, {"guard_digits": -1}, {"cutoff_N": 9}, {"em_order": 3}, {"em_order": 18}]
)
def test_config_validation(kw):
    with pytest.raises(ValueError):
        EvalConfig(**kw)


def test_minimum_precision():
    with pytest.raises(ValueError):
        BigReal(1, 32)
    assert digits_to_bits(1) == 64


def test_mixed_precision_takes_smaller():
    a = BigReal(1, 200)
    b = BigReal(3, 100)
    assert (a / b).precision_bits == 100
    assert (a + 1).precision_bits == 200


def test_fraction_operands_are_exact():
    third = BigReal(Fraction(1, 3), 300)
    with mpmath.workprec(300):
        assert abs(third.value * 3 - 1) < mpmath.mpf(2) ** -295
    assert (3 * third).precision_bits == 300


def test_unary_ops_keep_precision():
    with mpmath.workprec(200):
        x = BigReal(mpmath.pi, 200)
        assert (-x).value == -x.value
        assert abs(-x).value == x.value


def test_comparisons_and_string():
    x = BigReal(Fraction(1, 4), 128)
    assert x < 1 and x > 0 and x == Fraction(1, 4)
    assert float(x) == 0.25
    assert x.to_string(5).startswith("0.25")
