from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from minkcheck import (InputError, SomeBetwCase, betw, betw_nonstrict,
                       betw_set, canonical_triple, ev, is_kinematic_triangle,
                       line_path, path_through, some_betw_case)

F = Fraction


def test_betw_on_time_axis(mink):
    assert betw(mink, ev(0, 0), ev(1, 0), ev(2, 0))
    assert not betw(mink, ev(0, 0), ev(2, 0), ev(1, 0))
    assert not betw(mink, ev(0, 0), ev(1, 0), ev(1, 0))


def test_betw_requires_known_events(mink, three_event_model):
    with pytest.raises(InputError):
        betw(three_event_model, ev(0, 0), ev(1, 0), ev(2, 0))
    with pytest.raises(InputError):
        betw(mink, three_event_model.event("a"), ev(1, 0), ev(2, 0))


def test_betw_nonstrict(mink):
    assert betw_nonstrict(mink, ev(0, 0), ev(2, 0), ev(2, 0))
    assert betw_nonstrict(mink, ev(0, 0), ev(1, 0), ev(2, 0))
    assert not betw_nonstrict(mink, ev(0, 0), ev(3, 0), ev(2, 0))


def test_betw_set(mink):
    a, b = ev(-2, 0), ev(3, 0)
    assert betw_set(mink, a, [ev(0, 0), ev(1, 0)], b)
    assert betw_set(mink, a, [], b)
    assert not betw_set(mink, ev(0, 0), [ev(1, 0)], ev(1, 0))


def test_path_through(mink):
    p = path_through(mink, ev(0, 0), ev(2, 1))
    assert p.line == (F(1, 2), 0)
    assert path_through(mink, ev(0, 0), ev(1, 2)) is None  # spacelike
    with pytest.raises(InputError):
        path_through(mink, ev(0, 0), ev(0, 0))


def test_path_through_finite(three_event_model):
    m = three_event_model
    p = path_through(m, m.event("a"), m.event("b"))
    assert p is not None and m.on_path(p, m.event("c"))


def test_kinematic_triangle(mink):
    # pairwise timelike with three pairwise distinct slopes
    assert is_kinematic_triangle(mink, ev(0, 0), ev(4, 1), ev(2, F(-1, 2)))
    assert not is_kinematic_triangle(mink, ev(0, 0), ev(1, 0), ev(2, 0))
    assert not is_kinematic_triangle(mink, ev(0, 0), ev(0, 0), ev(2, 0))


def test_triangle_implies_no_common_path(mink):
    a, b, c = ev(0, 0), ev(4, 1), ev(2, F(-1, 2))
    ab = path_through(mink, a, b)
    assert not mink.on_path(ab, c)


def _order_by_enumeration(model, Q, a, b, c):
    """Independent oracle: check all six relations directly."""
    if a == b:
        return SomeBetwCase.EQ_AB
    if a == c:
        return SomeBetwCase.EQ_AC
    if b == c:
        return SomeBetwCase.EQ_BC
    table = {
        SomeBetwCase.ABC: (a, b, c),
        SomeBetwCase.BCA: (b, c, a),
        SomeBetwCase.CAB: (c, a, b),
    }
    hits = [case for case, (p, q, r) in table.items() if model.betw(p, q, r)]
    assert len(hits) == 1
    return hits[0]


def test_some_betw_case(mink):
    Q = line_path(0, 0)
    assert some_betw_case(mink, Q, ev(0, 0), ev(1, 0), ev(2, 0)) is SomeBetwCase.ABC
    # middle of {(1,0),(0,0),(2,0)} is (1,0), i.e. the first argument
    got = some_betw_case(mink, Q, ev(1, 0), ev(0, 0), ev(2, 0))
    assert got is SomeBetwCase.CAB
    assert got is _order_by_enumeration(mink, Q, ev(1, 0), ev(0, 0), ev(2, 0))
    assert some_betw_case(mink, Q, ev(1, 0), ev(2, 0), ev(1, 0)) is SomeBetwCase.EQ_AC
    with pytest.raises(InputError):
        some_betw_case(mink, Q, ev(0, 1), ev(1, 0), ev(2, 0))


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
def test_some_betw_case_matches_enumeration(t1, t2, t3):
    from minkcheck import Minkowski1p1
    model = Minkowski1p1()
    Q = line_path(0, 0)
    a, b, c = ev(t1, 0), ev(t2, 0), ev(t3, 0)
    assert some_betw_case(model, Q, a, b, c) is _order_by_enumeration(model, Q, a, b, c)


@given(st.text(alphabet="abcdef", min_size=1, max_size=2),
       st.text(alphabet="abcdef", min_size=1, max_size=2),
       st.text(alphabet="abcdef", min_size=1, max_size=2))
def test_canonical_triple_idempotent(a, b, c):
    t = canonical_triple(a, b, c)
    assert canonical_triple(*t) == t
    assert canonical_triple(c, b, a) == t
