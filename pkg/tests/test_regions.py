from fractions import Fraction

import pytest

from minkcheck import (Chain, InputError, chain_from_set, ev, in_interval,
                       in_prolongation, in_segment, line_path, reverse_chain,
                       segment_count, segmentation, substream, thm3_witness,
                       thm7_witness, thm8_check, verify_segmentation)
from minkcheck.regions import reversed_segmentation, segmentation_as_sets

F = Fraction

TIME_AXIS = line_path(0, 0)


def axis_chain(mink, *ts):
    return chain_from_set(mink, [ev(t, 0) for t in ts])


def test_membership_predicates(mink):
    assert in_segment(mink, ev(0, 0), ev(2, 0), ev(1, 0))
    assert not in_segment(mink, ev(0, 0), ev(2, 0), ev(2, 0))
    assert in_interval(mink, ev(0, 0), ev(2, 0), ev(2, 0))
    assert in_interval(mink, ev(0, 0), ev(2, 0), ev(0, 0))
    assert in_prolongation(mink, ev(0, 0), ev(1, 0), ev(3, 0))
    assert not in_prolongation(mink, ev(0, 0), ev(1, 0), ev(-1, 0))
    with pytest.raises(InputError):
        in_segment(mink, ev(0, 0), ev(1, 2), ev(1, 0))  # no path


def test_interval_extends_segment_pointwise(mink):
    a, b = ev(0, 0), ev(2, 0)
    for p in range(-8, 17):
        x = ev(F(p, 4), 0)
        assert in_interval(mink, a, b, x) == (
            in_segment(mink, a, b, x) or x == a or x == b)


def test_segmentation_shape(mink):
    chain = axis_chain(mink, 0, 1, 2, 3)
    seg = segmentation(mink, TIME_AXIS, chain)
    assert len(seg.segments) == 3
    assert seg.p1 == (chain.seq[1], chain.seq[0])
    assert seg.p2 == (chain.seq[-2], chain.seq[-1])
    two = axis_chain(mink, 0, 1)
    assert len(segmentation(mink, TIME_AXIS, two).segments) == 1


def test_segmentation_classification(mink):
    seg = segmentation(mink, TIME_AXIS, axis_chain(mink, 0, 1, 2, 3))
    from minkcheck.regions import _classify
    assert _classify(mink, seg, ev(F(3, 2), 0)) == ["segment1"]
    assert _classify(mink, seg, ev(-5, 0)) == ["p1"]
    assert _classify(mink, seg, ev(7, 0)) == ["p2"]
    assert _classify(mink, seg, ev(2, 0)) == ["chain"]


def test_verify_segmentation(mink):
    seg = segmentation(mink, TIME_AXIS, axis_chain(mink, 0, 1, 2, 3))
    verdict = verify_segmentation(mink, seg, samples=1000,
                                  rng=substream(0, "verify"))
    assert verdict.is_pass and verdict.samples_used >= 1000


def test_verify_segmentation_finite(three_event_model):
    m = three_event_model
    chain = chain_from_set(m, m.events())
    seg = segmentation(m, chain.path, chain)
    verdict = verify_segmentation(m, seg)
    assert verdict.is_pass and verdict.mode == "exhaustive"


def test_segment_count_dense(mink):
    for n in range(2, 9):
        chain = axis_chain(mink, *range(n))
        seg = segmentation(mink, TIME_AXIS, chain)
        verdict = segment_count(mink, seg)
        assert verdict.evidence["count"] == n - 1
        assert not verdict.evidence["degenerate"]


def test_segment_count_degenerate_on_finite(three_event_model):
    m = three_event_model
    chain = chain_from_set(m, m.events())
    seg = segmentation(m, chain.path, chain)
    verdict = segment_count(m, seg)
    # both segments of the 3-event chain are empty, hence equal as sets
    assert verdict.evidence["constructed"] == 2
    assert verdict.evidence["count"] == 1
    assert verdict.evidence["degenerate"]


def test_segmentation_orientation_invariance(mink):
    seg = segmentation(mink, TIME_AXIS, axis_chain(mink, 0, 1, 2, 3))
    rev = reversed_segmentation(mink, seg)
    a, b = segmentation_as_sets(seg), segmentation_as_sets(rev)
    assert a["segments"] == b["segments"]
    assert {a["p1"], a["p2"]} == {b["p1"], b["p2"]}


def test_segments_nonempty_on_dense_models(mink):
    rng = substream(1, "dense")
    for _ in range(10):
        path = mink.sample_path(rng)
        params = sorted(mink.sample_params_distinct(rng, 4))
        chain = chain_from_set(mink, [mink.event_on(path, t) for t in params])
        seg = segmentation(mink, path, chain)
        for (a, b) in seg.segments:
            mid = (a.coords[0] + b.coords[0]) / 2
            assert in_segment(mink, a, b, mink.event_on(path, mid))


WORKED = dict(a=ev(0, 0), b=ev(4, 1), c=ev(2, F(-1, 2)),
              d=ev(0, -2), e=ev(F(9, 5), F(-9, 20)))


def test_thm3_worked_example(mink):
    f = thm3_witness(mink, **WORKED)
    assert f.coords == (F(36, 11), F(9, 11))
    assert mink.betw(WORKED["a"], f, WORKED["b"])


def test_thm7_worked_example(mink):
    f = thm7_witness(mink, **WORKED)
    assert f.coords == (F(36, 11), F(9, 11))
    assert mink.betw(WORKED["d"], WORKED["e"], f)
    # f comes after e along the d-e direction
    assert f.coords[0] > WORKED["e"].coords[0] > WORKED["d"].coords[0]


def test_thm7_mirrored_triangle(mink):
    mirrored = {k: ev(v.coords[0], -v.coords[1]) for k, v in WORKED.items()}
    f = thm7_witness(mink, **mirrored)
    assert f.coords == (F(36, 11), F(-9, 11))


def test_thm3_rejects_bad_hypotheses(mink):
    bad = dict(WORKED)
    bad["d"] = ev(3, 0)  # not beyond c on the b-c line
    with pytest.raises(InputError):
        thm3_witness(mink, **bad)
    collinear = dict(a=ev(0, 0), b=ev(1, 0), c=ev(2, 0), d=ev(3, 0), e=ev(1, 0))
    with pytest.raises(InputError):
        thm3_witness(mink, **collinear)


def test_thm8(mink):
    a, b, c = WORKED["a"], WORKED["b"], WORKED["c"]
    ac, ba, cb = (line_path(F(-1, 4), 0),
                  mink.path_through(b, a), mink.path_through(c, b))
    bp = mink.event_on(mink.path_through(a, c), 1)
    cp = mink.event_on(ba, 2)
    ap = mink.event_on(cb, 3)
    verdict = thm8_check(mink, a, b, c, ap, bp, cp)
    assert verdict.is_pass
    with pytest.raises(InputError):
        thm8_check(mink, a, b, c, bp, bp, cp)
