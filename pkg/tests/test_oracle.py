import math

import pytest

from mzv.core import Composition, compositions, height_one
from mzv.eval import eta_bar, zeta_m, zeta_single
from mzv.oracle import (
    QuadConfig,
    quad_eta,
    quad_height_one,
    quad_weighted_block,
    quad_zeta_single,
)

TOL = 1e-7


def rel(a, b):
    return abs(a - float(b)) / abs(float(b))


def block_sum(p_, q, r, l):
    total = 0.0
    for alpha in compositions(q + r + 1, q + 1):
        c = Composition.of(*([1] * p_), *alpha[:-1], alpha[-1] + l + 1)
        total += float(zeta_m(c))
    return total


def test_quad_config_validation():
    QuadConfig(1e-12)
    QuadConfig(1e-4)
    for bad in (1e-13, 1e-3):
        with pytest.raises(ValueError):
            QuadConfig(bad)
    with pytest.raises(ValueError):
        QuadConfig(max_subdivisions=0)


@pytest.mark.parametrize("p", range(5))
def test_quad_zeta_single(p):
    assert rel(quad_zeta_single(p), zeta_single(p + 2)) < TOL


def test_quad_eta():
    assert rel(quad_eta(0), -math.log(2)) < TOL
    assert rel(quad_eta(1), -math.pi ** 2 / 12) < TOL
    for p in range(5):
        assert rel(quad_eta(p), eta_bar(p + 1)) < TOL


@pytest.mark.parametrize("m,n,star", [
    (0, 0, False), (1, 0, True), (1, 1, False), (2, 3, False), (3, 2, True), (0, 4, True),
    (2, 2, True), (4, 2, False), (0, 6, False),
])
def test_quad_height_one(m, n, star):
    assert rel(quad_height_one(m, n, star), zeta_m(height_one(m, n), star=star)) < TOL


def test_quad_height_one_star_value():
    assert rel(quad_height_one(1, 0, star=True), 2 * zeta_single(3)) < TOL


def test_quad_height_one_limits():
    with pytest.raises(ValueError):
        quad_height_one(4, 3)


@pytest.mark.parametrize("args", [(0, 0, 0, 0), (0, 0, 2, 0), (0, 1, 1, 0), (0, 1, 2, 0), (1, 1, 2, 1), (2, 1, 0, 1)])
def test_quad_weighted_block(args):
    assert rel(quad_weighted_block(*args), block_sum(*args)) < TOL


def test_weighted_block_special_values():
    for r in range(4):
        assert rel(quad_weighted_block(0, 0, r, 0), zeta_single(r + 2)) < TOL
    assert rel(quad_weighted_block(0, 1, 1, 0), zeta_single(4)) < TOL


def test_refinement_is_monotone():
    exact = zeta_m(height_one(2, 1))
    coarse = rel(quad_height_one(2, 1, qc=QuadConfig(1e-6)), exact)
    fine = rel(quad_height_one(2, 1, qc=QuadConfig(5e-7)), exact)
    assert coarse < 1e-6 and fine < 1e-6
