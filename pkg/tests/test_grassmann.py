import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from surfdimer import exact
from surfdimer.errors import MismatchedAlgebra, NotSkew, OddDimension, TooLarge
from surfdimer.fixtures import torus_grid
from surfdimer.grassmann import (
    GrassmannElement as G,
    charged_check,
    integral_charged,
    integral_neutral,
    partition_as_grassmann,
    pf_squared_check,
    random_skew,
    random_square,
)
from surfdimer.matchings import WeightSystem
from surfdimer.surface_map import build

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def element(n):
    return st.dictionaries(st.integers(0, (1 << n) - 1), coeffs, max_size=6).map(lambda d: G(n, d))


def test_generators_anticommute():
    a, b = G.generator(3, 0), G.generator(3, 2)
    assert a * b == -(b * a)
    assert a * a == G(3)


def test_mismatched_algebras():
    with pytest.raises(MismatchedAlgebra):
        G.generator(2, 0) * G.generator(3, 0)


@settings(max_examples=50, deadline=None)
@given(element(4), element(4), element(4))
def test_associative_and_distributive(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


def test_integration_order_sign():
    top = G.generator(2, 0) * G.generator(2, 1)
    assert top.integrate([0, 1]) == 1
    assert top.integrate([1, 0]) == -1


def test_neutral_small():
    assert integral_neutral([[0, Fraction(3)], [Fraction(-3), 0]]) == 3
    a, b, c, d, e, f = (Fraction(x) for x in (2, 3, 5, 7, 11, 13))
    A = [[0, a, b, c], [-a, 0, d, e], [-b, -d, 0, f], [-c, -e, -f, 0]]
    assert integral_neutral(A) == a * f - b * e + c * d
    with pytest.raises(OddDimension):
        integral_neutral([[0]])
    with pytest.raises(NotSkew):
        integral_neutral([[0, 1], [1, 0]])


def test_neutral_eight():
    A = random_skew(random.Random(8), 8)
    assert integral_neutral(A) == exact.pfaffian(A)


def test_charged():
    assert integral_charged([[Fraction(7, 2)]]) == Fraction(7, 2)
    assert integral_charged([[1, 0], [0, 1]]) == -1
    A = random_square(random.Random(5), 5)
    assert integral_charged(A) == exact.determinant(A)
    assert charged_check(A)["ok"]


def test_pf_squared():
    assert pf_squared_check([[0, Fraction(5)], [Fraction(-5), 0]])
    assert pf_squared_check([[0] * 4 for _ in range(4)])
    assert pf_squared_check(random_skew(random.Random(6), 6))


def test_partition_single_edge():
    m = build(2, [(0, 1)], [(0,), (1,)])
    assert partition_as_grassmann(m, WeightSystem([Fraction(9, 4)])) == Fraction(9, 4)


def test_partition_cap():
    m = torus_grid(4, 4)
    with pytest.raises(TooLarge):
        partition_as_grassmann(m, WeightSystem.uniform(m))


def test_partition_fixtures(fx):
    assert partition_as_grassmann(*fx("FIX-SQ")) == 13
    assert partition_as_grassmann(*fx("FIX-G1")) == 3
    assert partition_as_grassmann(*fx("FIX-G2")) == 18
