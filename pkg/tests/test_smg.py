import pytest

from surfdimer import fixtures
from surfdimer.errors import SmgSyntaxError, ValidationError
from surfdimer.smg import emit, parse, parse_text

SQ = """smg v1
vertices 4
edges 4
edge 0 0 1 1/1
edge 1 1 2 2/1
edge 2 2 3 3/1
edge 3 3 0 5/1
rot 0: 0a 3b
rot 1: 0b 1a
rot 2: 1b 2a
rot 3: 2b 3a
"""


def test_parse_square():
    m, w = parse_text(SQ)
    assert m.info() == (4, 4, 2, 0)
    assert list(w) == [1, 2, 3, 5]


def test_parse_path():
    m, _ = parse(fixtures.fixture_path("FIX-G2"))
    assert m.info() == (2, 5, 1, 2)


@pytest.mark.parametrize("name", list(fixtures.FIXTURE_FILES))
def test_round_trip(fx, name):
    m, w = fx(name)
    m2, w2 = parse_text(emit(m, w))
    assert (m2.endpoints, m2.rotations, tuple(w2)) == (m.endpoints, m.rotations, tuple(w))
    assert emit(m2, w2) == emit(m, w)


def test_zero_weight():
    with pytest.raises(ValidationError) as info:
        parse_text(SQ.replace("edge 1 1 2 2/1", "edge 1 1 2 0/1"))
    assert info.value.line == 5


def test_duplicate_dart():
    with pytest.raises(ValidationError):
        parse_text(SQ.replace("rot 1: 0b 1a", "rot 1: 0b 1a 0b"))


def test_missing_dart_is_validation_error():
    with pytest.raises(ValidationError):
        parse_text(SQ.replace("rot 0: 0a 3b", "rot 0: 0a"))


def test_syntax_errors_carry_position():
    with pytest.raises(SmgSyntaxError) as info:
        parse_text(SQ.replace("rot 2: 1b 2a", "rot 2: 1b 2z"))
    assert info.value.line == 10 and info.value.column == 11
    with pytest.raises(SmgSyntaxError):
        parse_text("smg v2\n")


def test_comments_ignored():
    m, _ = parse_text("# header comment\n" + SQ.replace("edges 4", "edges 4  # four"))
    assert m.n_edges == 4
