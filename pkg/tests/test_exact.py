import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from surfdimer import exact
from surfdimer.errors import NotSkew, OddSize, SingularMatrix
from surfdimer.grassmann import random_skew, random_square


def test_two_by_two():
    assert exact.pfaffian([[0, Fraction(3, 4)], [Fraction(-3, 4), 0]]) == Fraction(3, 4)
    assert exact.pfaffian([]) == 1


def test_four_by_four_expansion():
    a, b, c, d, e, f = (Fraction(x) for x in (2, 3, 5, 7, 11, 13))
    A = [[0, a, b, c], [-a, 0, d, e], [-b, -d, 0, f], [-c, -e, -f, 0]]
    assert exact.pfaffian(A) == a * f - b * e + c * d


def test_errors():
    with pytest.raises(OddSize):
        exact.pfaffian([[0]])
    with pytest.raises(NotSkew):
        exact.pfaffian([[0, 1], [1, 0]])
    with pytest.raises(SingularMatrix):
        exact.inverse([[1, 2], [2, 4]])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([2, 4, 6]))
def test_elimination_matches_expansion(seed, n):
    A = random_skew(random.Random(seed), n)
    assert exact.pfaffian(A) == exact.pfaffian_expansion(A)
    assert exact.pfaffian(A) ** 2 == exact.determinant(A)


def test_pivoting_with_zero_leading_entry():
    A = [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]
    assert exact.pfaffian(A) == exact.pfaffian_expansion(A) == -1


def test_determinant_against_sympy():
    rng = random.Random(11)
    for n in (1, 3, 5):
        A = random_square(rng, n)
        assert exact.determinant(A) == Fraction(str(sympy.Matrix(A).det()))


def test_inverse():
    A = random_square(random.Random(2), 4)
    inv = exact.inverse(A)
    for i in range(4):
        for j in range(4):
            assert sum(A[i][k] * inv[k][j] for k in range(4)) == (1 if i == j else 0)


def test_minor_identity_six():
    # Pf of a principal minor of A^-1 equals a signed complementary minor of A over Pf(A)
    A = random_skew(random.Random(7), 6)
    inv = exact.inverse(A)
    I = [1, 4]
    rest = [0, 2, 3, 5]
    sign = exact.permutation_sign(I + rest)
    lhs = exact.pfaffian(exact.submatrix(inv, I))
    rhs = sign * exact.pfaffian(exact.submatrix(A, rest)) / exact.pfaffian(A)
    assert lhs == (-1) ** (len(I) // 2) * rhs


def test_permutation_sign():
    assert exact.permutation_sign([0, 1, 2]) == 1
    assert exact.permutation_sign([1, 0, 2]) == -1
    assert exact.permutation_sign([2, 0, 1]) == 1
