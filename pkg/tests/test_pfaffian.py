import itertools
from fractions import Fraction

import pytest

from surfdimer import exact, fixtures
from surfdimer.errors import OddVertexCount, SharedVertex, SingularMatrix
from surfdimer.kasteleyn import Orientation, construct
from surfdimer.matchings import (
    WeightSystem,
    correlation_bruteforce,
    matching_list,
    partition_bruteforce,
    partition_total,
    weight,
)
from surfdimer.pfaffian import (
    Setup,
    class_terms,
    correlation_inverse,
    correlation_pfaffian,
    correlation_planar,
    kasteleyn_matrix,
    matching_sign,
    partition_pfaffian,
    pfaffian_identity,
    z_alpha_pfaffian,
)
from surfdimer.surface_map import build, homology_basis


def single_edge():
    return build(2, [(0, 1)], [(0,), (1,)])


def test_single_edge_matrix():
    m = single_edge()
    A = kasteleyn_matrix(m, Orientation(0, 1), [Fraction(5, 2)])
    assert A.rows() == [[0, Fraction(5, 2)], [Fraction(-5, 2), 0]]
    assert matching_sign(m, Orientation(0, 1), (0,)) == 1
    assert matching_sign(m, Orientation(1, 1), (0,)) == -1


def test_opposite_parallel_edges_cancel(fx):
    m, _ = fx("FIX-G1")
    A = kasteleyn_matrix(m, Orientation(0b010, 3), [1, 1, 7])
    assert A[0, 1] == 7


def test_square_pfaffian(fx):
    m, w = fx("FIX-SQ")
    K = construct(m)
    pf = exact.pfaffian(kasteleyn_matrix(m, K, w).entries)
    assert abs(pf) == 1 * 3 + 2 * 5
    assert matching_sign(m, K, (0, 2)) * pf == 13


def test_matching_sign_is_term_sign(fx):
    # the signed matching sum is the Pfaffian
    for name in ("FIX-SQ", "FIX-G1", "FIX-G2"):
        m, w = fx(name)
        for rep in Setup.of(m).classes:
            K = rep.orientation
            signed = sum(matching_sign(m, K, D) * weight(D, w) for D in matching_list(m))
            assert signed == exact.pfaffian(kasteleyn_matrix(m, K, w).entries)


@pytest.mark.parametrize("name", ["FIX-SQ", "FIX-G1", "FIX-G2", "FIX-T34", "FIX-TRI43"])
def test_identity_every_class(fx, name):
    m, w = fx(name)
    setup = Setup.of(m)
    table = partition_bruteforce(m, setup.basis, w, setup.D0)
    for rep in setup.classes:
        pfaffian_identity(m, setup.basis, rep.orientation, w, setup.D0, table, rep.mask)


@pytest.mark.parametrize(
    "name, z",
    [("FIX-SQ", 13), ("FIX-G1", 3), ("FIX-G2", 18), ("FIX-T34", 392), ("FIX-TRI43", Fraction(3899780, 729))],
)
def test_partition_values(fx, name, z):
    m, w = fx(name)
    assert partition_pfaffian(m, None, w) == z == partition_total(m, w)


def test_partition_independent_of_base_matching(fx):
    m, w = fx("FIX-G2")
    for D0 in matching_list(m):
        assert partition_pfaffian(m, None, w, D0) == 18


def test_z_alpha(fx):
    m, w = fx("FIX-G2")
    setup = Setup.of(m)
    table = partition_bruteforce(m, setup.basis, w, setup.D0)
    terms = class_terms(m, w, setup=setup)
    for alpha in range(16):
        assert z_alpha_pfaffian(m, setup.basis, w, setup.D0, alpha, terms) == table.get(alpha)


def test_workers_do_not_change_terms(fx):
    m, w = fx("FIX-T34")
    a = class_terms(m, w, workers=1)
    b = class_terms(m, w, workers=4)
    assert [(t.mask, t.pf, t.eps, t.arf) for t in a] == [(t.mask, t.pf, t.eps, t.arf) for t in b]


def test_odd_vertices():
    m = build(3, [(0, 1), (1, 2), (2, 0)], [(0, 5), (1, 2), (3, 4)])
    with pytest.raises(OddVertexCount):
        partition_pfaffian(m, None, WeightSystem.uniform(m))


def test_even_map_without_matching():
    # star with three leaves: V=4, no perfect matching
    m = build(4, [(0, 1), (0, 2), (0, 3)], [(0, 2, 4), (1,), (3,), (5,)])
    assert matching_list(m) == []
    assert partition_pfaffian(m, None, WeightSystem.uniform(m)) == 0


def test_correlations_square(fx):
    m, w = fx("FIX-SQ")
    assert correlation_pfaffian(m, None, w, [0]) == Fraction(3, 13)
    assert correlation_pfaffian(m, None, w, [0, 2]) == Fraction(3, 13)
    assert correlation_planar(m, construct(m), w, [1]) == Fraction(10, 13)
    with pytest.raises(SharedVertex):
        correlation_pfaffian(m, None, w, [0, 1])
    assert correlation_pfaffian(m, None, w, [0, 1], allow_shared=True) == 0


def test_full_matching_correlation(fx):
    m, w = fx("FIX-T34")
    Z = partition_total(m, w)
    D = matching_list(m)[7]
    assert correlation_pfaffian(m, None, w, list(D)) == weight(D, w) / Z


def test_parallel_edges_resolved_individually():
    m, _ = fixtures.load("FIX-G1")
    w = WeightSystem([Fraction(2, 3), 1, 7])
    Z = Fraction(2, 3) + 1 + 7
    for e in range(3):
        assert correlation_pfaffian(m, None, w, [e]) == w[e] / Z
    m2, w2 = fixtures.load("FIX-G2")
    for e in range(5):
        assert correlation_pfaffian(m2, None, w2, [e]) == correlation_bruteforce(m2, w2, [e])


def test_loop_never_occupied():
    m = fixtures.bouquet_torus()
    with pytest.raises(SharedVertex):
        correlation_pfaffian(m, None, WeightSystem.uniform(m), [0])


def test_inverse_path_agrees_when_invertible(fx):
    m, w = fx("FIX-TRI43")
    for e in range(0, m.n_edges, 5):
        assert correlation_inverse(m, None, w, [e]) == correlation_bruteforce(m, w, [e])
    assert correlation_inverse(m, None, w, [0, 20]) == correlation_bruteforce(m, w, [0, 20])


def test_inverse_path_refuses_singular_class(fx):
    m, w = fx("FIX-T34")
    with pytest.raises(SingularMatrix):
        correlation_inverse(m, None, w, [0])


def test_torus_singular_class(fx):
    m, w = fx("FIX-T44")
    terms = class_terms(m, w)
    singular = [t for t in terms if t.arf == -1]
    assert len(singular) == 1 and singular[0].pf == 0
    assert all(t.pf != 0 for t in terms if t.arf == 1)
