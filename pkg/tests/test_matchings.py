import math
from fractions import Fraction

import pytest

from surfdimer import fixtures
from surfdimer.errors import (
    EmptyPartition,
    NoMatchingExists,
    NonpositiveTemperature,
    NonpositiveWeight,
    NotAMatching,
)
from surfdimer.matchings import (
    WeightSystem,
    boltzmann_weight,
    check_matching,
    composition_cycles,
    correlation_bruteforce,
    delta,
    matching_list,
    partition_bruteforce,
    partition_total,
    weight,
)
from surfdimer.surface_map import build, class_of, homology_basis, walk_chain


def test_square_matchings(fx):
    assert matching_list(fx("FIX-SQ")[0]) == [(0, 2), (1, 3)]


def test_theta_matchings(fx):
    assert matching_list(fx("FIX-G1")[0]) == [(0,), (1,), (2,)]


def test_odd_map_has_no_matchings():
    m = build(3, [(0, 1), (1, 2), (2, 0)], [(0, 5), (1, 2), (3, 4)])
    assert matching_list(m) == []
    with pytest.raises(NoMatchingExists) as info:
        partition_bruteforce(m, homology_basis(m), WeightSystem.uniform(m))
    assert info.value.total == 0


def test_weights():
    assert weight((0, 2), [1, 2, 3, 5]) == 3
    assert weight((), []) == 1
    assert weight((0,), [Fraction(2, 3), 1, 7]) == Fraction(2, 3)
    with pytest.raises(NonpositiveWeight):
        WeightSystem([1, 0])


def test_boltzmann():
    assert boltzmann_weight(0, 1) == 1
    assert boltzmann_weight(math.log(2), 1) == pytest.approx(0.5, abs=1e-12)
    assert boltzmann_weight(1.0, 1e12) == pytest.approx(1.0)
    with pytest.raises(NonpositiveTemperature):
        boltzmann_weight(1.0, 0)


def test_check_matching(fx):
    m, _ = fx("FIX-SQ")
    assert check_matching(m, [2, 0]) == (0, 2)
    with pytest.raises(NotAMatching):
        check_matching(m, [0, 1])


def test_parallel_enumeration_is_identical(fx):
    m, _ = fx("FIX-T44")
    assert matching_list(m, workers=4) == matching_list(m)


def test_composition_cycles(fx):
    m, _ = fx("FIX-SQ")
    assert composition_cycles(m, (0, 2), (0, 2)) == []
    (c,) = composition_cycles(m, (0, 2), (1, 3))
    assert walk_chain(c) == 0b1111
    g, _ = fx("FIX-G1")
    b = homology_basis(g)
    (c,) = composition_cycles(g, (0,), (1,))
    assert walk_chain(c) == 0b011
    assert delta(g, b, (0,), (1,)) == class_of(g, b, 0b011)


def test_class_resolved_partition(fx):
    m, w = fx("FIX-SQ")
    t = partition_bruteforce(m, homology_basis(m), w, (0, 2))
    assert t.total == 13 and t.get(0) == 13
    g, w = fx("FIX-G1")
    b = homology_basis(g)
    t = partition_bruteforce(g, b, w, (0,))
    assert t.total == 3
    assert sorted(t.table.values()) == [1, 1, 1]
    assert t.get(class_of(g, b, 0b011)) == 1 and t.get(class_of(g, b, 0b101)) == 1


def test_known_totals(fx):
    assert partition_total(*fx("FIX-G2")) == 1 + 2 + 3 + 5 + 7
    # 4x4 square torus: 272 dimer coverings
    assert partition_total(*fx("FIX-T44")) == 272


def test_correlations(fx):
    m, w = fx("FIX-SQ")
    assert correlation_bruteforce(m, w, [0]) == Fraction(3, 13)
    assert correlation_bruteforce(m, w, [0, 2]) == Fraction(3, 13)
    assert correlation_bruteforce(m, w, [0, 1]) == 0
    odd = build(3, [(0, 1), (1, 2), (2, 0)], [(0, 5), (1, 2), (3, 4)])
    with pytest.raises(EmptyPartition):
        correlation_bruteforce(odd, WeightSystem.uniform(odd), [0])
