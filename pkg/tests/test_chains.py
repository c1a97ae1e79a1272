from fractions import Fraction

import pytest

from minkcheck import (Chain, InputError, brute_force_chain, chain4,
                       chain_ends, chain_from_set, chains_equal_up_to_reversal,
                       check_lemma1, check_lemma2, check_lemma3,
                       check_local_order, check_total_order, classify_chain,
                       distinct_prolong_sequence, ev, index_injective_check,
                       line_path, local_total_equiv, prolong, reverse_chain,
                       substream)

F = Fraction


def on_axis(*ts):
    return [ev(t, 0) for t in ts]


def test_check_total_order(mink):
    assert check_total_order(mink, on_axis(0, 1, 2, 3))
    assert not check_total_order(mink, on_axis(0, 2, 1))
    assert check_total_order(mink, [ev(0, 0), ev(2, 1), ev(4, 2)])
    with pytest.raises(InputError):
        check_total_order(mink, on_axis(0, 1))


def test_check_local_order(mink):
    assert check_local_order(mink, on_axis(0, 1, 2, 5))
    assert not check_local_order(mink, on_axis(0, 2, 1))


def test_local_total_equiv_on_conforming_model(mink):
    rng = substream(1, "chains")
    for _ in range(30):
        path = mink.sample_path(rng)
        k = rng.randint(3, 8)
        params = sorted(mink.sample_params_distinct(rng, k))
        seq = [mink.event_on(path, t) for t in params]
        assert local_total_equiv(mink, seq)
        shuffled = list(seq)
        rng.shuffle(shuffled)
        assert local_total_equiv(mink, shuffled)


def test_local_total_diverge_on_broken_model(o4_violation_model):
    m = o4_violation_model
    seq = [m.event(x) for x in "abcd"]
    assert check_local_order(m, seq)
    assert not check_total_order(m, seq)
    assert not local_total_equiv(m, seq)


def test_index_injective():
    assert index_injective_check(on_axis(0, 1, 2))
    assert not index_injective_check(on_axis(0, 1, 0))


def test_classify_chain(mink):
    assert classify_chain(mink, on_axis(0, 1)).kind == "short"
    got = classify_chain(mink, on_axis(0, 1, 3))
    assert got.kind == "long" and check_total_order(mink, got.chain.seq)
    assert classify_chain(mink, [ev(0, 0), ev(1, 2)]).kind == "not_chain"
    assert classify_chain(mink, [ev(0, 0)]).kind == "not_chain"


def test_chain_from_set_worked_example(mink):
    chain = chain_from_set(mink, [ev(4, 2), ev(0, 0), ev(2, 1)])
    ids = [e.id for e in chain.seq]
    assert ids in (["(0,0)", "(2,1)", "(4,2)"], ["(4,2)", "(2,1)", "(0,0)"])


def test_chain_from_set_not_co_path(mink):
    with pytest.raises(InputError):
        chain_from_set(mink, [ev(0, 0), ev(1, 2), ev(2, 0)])
    with pytest.raises(InputError):
        chain_from_set(mink, [ev(0, 0)])


def test_chain_matches_brute_force_on_random_sets(mink):
    rng = substream(2, "chain-sets")
    for _ in range(40):
        path = mink.sample_path(rng)
        k = rng.randint(2, 7)
        events = [mink.event_on(path, t) for t in mink.sample_params_distinct(rng, k)]
        built = chain_from_set(mink, events)
        oracle = brute_force_chain(mink, events)
        assert chains_equal_up_to_reversal(built, oracle)
        if k >= 3:
            assert check_total_order(mink, built.seq)


def test_brute_force_guard(mink):
    events = on_axis(*range(10))
    with pytest.raises(InputError, match="guard"):
        brute_force_chain(mink, events)


def test_reverse_chain_involution(mink):
    chain = chain_from_set(mink, on_axis(0, 1, 2, 3))
    assert reverse_chain(reverse_chain(chain)) == chain
    assert check_total_order(mink, reverse_chain(chain).seq)
    two = chain_from_set(mink, on_axis(0, 1))
    assert reverse_chain(two).seq == tuple(reversed(two.seq))


def test_chain_ends(mink):
    a, b = chain_ends(mink, on_axis(0, 1, 5, 3))
    assert {a.id, b.id} == {"(0,0)", "(5,0)"}
    # cross-check: ends equal the first/last of the built chain
    chain = chain_from_set(mink, on_axis(0, 1, 5, 3))
    assert {chain.first, chain.last} == {a, b}
    with pytest.raises(InputError):
        chain_ends(mink, on_axis(0, 1))


def test_chain_ends_matches_parameter_extremes(mink):
    rng = substream(4, "ends")
    for _ in range(25):
        path = mink.sample_path(rng)
        params = mink.sample_params_distinct(rng, rng.randint(3, 8))
        events = [mink.event_on(path, t) for t in params]
        a, b = chain_ends(mink, events)
        assert {a.coords[0], b.coords[0]} == {min(params), max(params)}


def test_prolong(mink, three_event_model):
    assert prolong(mink, ev(0, 0), ev(1, 0)).id == "(2,0)"
    assert prolong(mink, ev(2, 1), ev(0, 0)).id == "(-2,-1)"
    m = three_event_model
    assert prolong(m, m.event("a"), m.event("b")) == m.event("c")
    assert prolong(m, m.event("b"), m.event("c")) is None  # right edge
    with pytest.raises(InputError):
        prolong(mink, ev(0, 0), ev(0, 0))


def test_distinct_prolong_sequence(mink, three_event_model):
    seq = distinct_prolong_sequence(mink, ev(0, 0), ev(1, 0), 3)
    assert [e.id for e in seq] == ["(2,0)", "(4,0)", "(8,0)"]
    long = distinct_prolong_sequence(mink, ev(0, 0), ev(1, 0), 100)
    assert len({ev(0, 0), ev(1, 0), *long}) == 102
    with pytest.raises(InputError):
        distinct_prolong_sequence(three_event_model,
                                  three_event_model.event("a"),
                                  three_event_model.event("b"), 2)


def test_chain4(mink):
    chain = chain4(mink, ev(0, 0), ev(3, 0), ev(1, 0), ev(2, 0))
    assert [e.id for e in chain.seq] in (
        [f"({t},0)" for t in range(4)], [f"({t},0)" for t in (3, 2, 1, 0)])
    with pytest.raises(InputError):
        chain4(mink, ev(0, 0), ev(0, 0), ev(1, 0), ev(2, 0))


def test_chain4_permutation_invariant(mink):
    events = [ev(0, 0), ev(2, 1), ev(4, 2), ev(6, 3)]
    import itertools
    base = chain4(mink, *events)
    for perm in itertools.permutations(events):
        assert chains_equal_up_to_reversal(chain4(mink, *perm), base)


def test_lemma_checkers(mink):
    a, b = ev(0, 0), ev(1, 0)
    assert check_lemma1(mink, a, b, ev(3, 0), ev(2, 0)).is_pass
    assert check_lemma1(mink, a, b, ev(2, 0), ev(5, 0)).is_pass
    assert check_lemma2(mink, a, b, ev(3, 0), ev(2, 0)).is_pass
    assert check_lemma3(mink, a, b, ev(2, 0), ev(5, 0)).is_pass
    with pytest.raises(InputError):
        check_lemma1(mink, a, b, ev(2, 0), ev(2, 0))  # c = d
    with pytest.raises(InputError):
        check_lemma3(mink, a, b, ev(5, 0), ev(2, 0))  # betw(a,c,d) fails


def test_chain_invariants():
    with pytest.raises(InputError):
        Chain(seq=(ev(0, 0),))
    with pytest.raises(InputError):
        Chain(seq=(ev(0, 0), ev(0, 0)))
