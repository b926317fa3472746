import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from surfdimer import fixtures
from surfdimer.errors import NotACocycle, NotKasteleyn, OddVertexCount
from surfdimer.kasteleyn import (
    Orientation,
    act_cocycle,
    class_representatives,
    construct,
    equivalence,
    flip_vertex,
    is_kasteleyn,
)
from surfdimer.surface_map import build, cocycle_basis


def cyclic_square():
    # every edge points along the walk 0 -> 1 -> 2 -> 3 -> 0, tail at dart 2e
    return Orientation(0, 4)


def test_cyclic_square_is_not_kasteleyn(fx):
    m, _ = fx("FIX-SQ")
    check = is_kasteleyn(m, cyclic_square())
    assert not check
    assert check.bad_faces


def test_cyclic_square_with_one_flip_is_kasteleyn(fx):
    m, _ = fx("FIX-SQ")
    for e in range(4):
        assert is_kasteleyn(m, cyclic_square().reversed(1 << e))


def test_construct_on_fixtures(fx):
    for name in fixtures.FIXTURE_FILES:
        m, _ = fx(name)
        assert is_kasteleyn(m, construct(m))


def test_bit_string_round_trip():
    K = Orientation.from_string("0110")
    assert K.to_string() == "0110"
    assert K.tail(1) == 3 and K.tail(0) == 0


def test_odd_vertex_count():
    m = build(3, [(0, 1), (1, 2), (2, 0)], [(0, 5), (1, 2), (3, 4)])
    with pytest.raises(OddVertexCount):
        construct(m)


def test_flips(fx):
    m, _ = fx("FIX-T44")
    K = construct(m)
    for v in range(m.n_vertices):
        assert flip_vertex(m, flip_vertex(m, K, v), v) == K
        assert is_kasteleyn(m, flip_vertex(m, K, v))
    all_flipped = K
    for v in range(m.n_vertices):
        all_flipped = flip_vertex(m, all_flipped, v)
    assert all_flipped == K


def test_loop_unchanged_by_flip():
    m = fixtures.bouquet_torus()
    K = Orientation(0b01, 2)
    assert flip_vertex(m, K, 0) == K


def test_equivalence_of_flips(fx):
    m, _ = fx("FIX-SQ")
    K = construct(m)
    same = equivalence(m, K, K)
    assert same.theta == 0 and same.equivalent and same.witness == frozenset()
    eq = equivalence(m, K, flip_vertex(m, K, 2))
    assert eq.equivalent and eq.witness == frozenset({2})


def test_equivalence_rejects_non_kasteleyn(fx):
    m, _ = fx("FIX-SQ")
    with pytest.raises(NotKasteleyn):
        equivalence(m, cyclic_square(), construct(m))


def test_act_cocycle(fx):
    m, _ = fx("FIX-G1")
    K = construct(m)
    assert act_cocycle(m, K, 0) == K
    for v in range(m.n_vertices):
        assert act_cocycle(m, K, m.vertex_star(v)) == flip_vertex(m, K, v)
    for z in cocycle_basis(m).cocycles:
        K2 = act_cocycle(m, K, z)
        assert is_kasteleyn(m, K2)
        assert not equivalence(m, K, K2).equivalent
    # on the one-face map every edge meets the face twice; use the square
    sq, _ = fx("FIX-SQ")
    with pytest.raises(NotACocycle):
        act_cocycle(sq, construct(sq), 0b1)


@pytest.mark.parametrize("name, count", [("FIX-SQ", 1), ("FIX-G1", 4), ("FIX-G2", 16), ("FIX-T44", 4)])
def test_class_representatives(fx, name, count):
    m, _ = fx(name)
    reps = class_representatives(m)
    assert [r.mask for r in reps] == list(range(count))
    for a, b in itertools.combinations(reps, 2):
        assert not equivalence(m, a.orientation, b.orientation).equivalent


def test_action_free_and_transitive(fx):
    m, _ = fx("FIX-G1")
    reps = class_representatives(m)
    K0 = reps[0].orientation
    # any Kasteleyn orientation lands in exactly one class
    for bits in range(1 << m.n_edges):
        K = Orientation(bits, m.n_edges)
        if not is_kasteleyn(m, K):
            continue
        hits = [r.mask for r in reps if equivalence(m, r.orientation, K).equivalent]
        assert len(hits) == 1
    assert equivalence(m, K0, K0).equivalent


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 9), st.integers(0, 6))
def test_existence_iff_even(seed, V, extra):
    m = fixtures.random_map(random.Random(seed), V, max(V - 1, 1) + extra)
    if V % 2:
        with pytest.raises(OddVertexCount):
            construct(m)
    else:
        K = construct(m)
        assert is_kasteleyn(m, K)
        for rep in class_representatives(m, base=K):
            assert is_kasteleyn(m, rep.orientation)
