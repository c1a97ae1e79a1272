import pytest

from minkcheck import InputError, ev, gen_instances, is_kinematic_triangle
from minkcheck.generators import GenerationError
from minkcheck.unreach import unreach_from


def test_deterministic_per_kind_and_seed(mink):
    a = gen_instances(mink, "triple-on-path", n=3, seed=7)
    b = gen_instances(mink, "triple-on-path", n=3, seed=7)
    assert a == b
    c = gen_instances(mink, "triple-on-path", n=3, seed=8)
    assert a != c


def test_triple_on_path_satisfies_precondition(mink):
    for inst in gen_instances(mink, "triple-on-path", n=25, seed=1):
        assert mink.betw(inst["a"], inst["b"], inst["c"])


def test_quad_on_path_satisfies_precondition(mink):
    for inst in gen_instances(mink, "quad-on-path", n=25, seed=1):
        assert mink.betw(inst["a"], inst["b"], inst["c"])
        assert mink.betw(inst["b"], inst["c"], inst["d"])


def test_triangle_de_satisfies_hypotheses(mink, gal):
    for model in (mink, gal):
        for inst in gen_instances(model, "triangle+d+e", n=20, seed=2):
            a, b, c, d, e = (inst[k] for k in "abcde")
            assert is_kinematic_triangle(model, a, b, c)
            assert model.betw(b, c, d)
            assert model.betw(c, e, a)
            assert model.path_through(d, e) is not None


def test_triangle_sides_satisfies_hypotheses(mink):
    for inst in gen_instances(mink, "triangle+sides", n=15, seed=3):
        a, b, c = inst["a"], inst["b"], inst["c"]
        assert is_kinematic_triangle(mink, a, b, c)
        assert mink.betw(a, inst["bp"], c)
        assert mink.betw(b, inst["cp"], a)
        assert mink.betw(c, inst["ap"], b)


def test_unreach_kinds(mink):
    for inst in gen_instances(mink, "unreach-xy", n=20, seed=4):
        u = unreach_from(mink, inst["path"], inst["b"])
        assert not u.contains(mink, inst["Qx"])
        assert u.contains(mink, inst["Qy"])
    for inst in gen_instances(mink, "unreach-xyz", n=20, seed=4):
        u = unreach_from(mink, inst["path"], inst["b"])
        assert u.contains(mink, inst["Qx"]) and u.contains(mink, inst["Qz"])
        assert mink.betw(inst["Qx"], inst["Qy"], inst["Qz"])


def test_unreach_xz_impossible_on_galilean(gal):
    with pytest.raises(GenerationError) as err:
        gen_instances(gal, "unreach-xz", n=5, seed=0)
    assert err.value.stats["produced"] == 0


def test_co_path_set_range(mink):
    sizes = {len(inst["events"])
             for inst in gen_instances(mink, "co-path-set(2,7)", n=60, seed=5)}
    assert sizes <= set(range(2, 8)) and len(sizes) >= 4
    for inst in gen_instances(mink, "co-path-set(4)", n=10, seed=5):
        assert len(inst["events"]) == 4
        for e in inst["events"]:
            assert mink.on_path(inst["path"], e)


def test_finite_enumeration(three_event_model):
    m = three_event_model
    triples = gen_instances(m, "triple-on-path")
    assert len(triples) == 2  # both orientations of the single stored fact
    assert gen_instances(m, "triangle+d+e") == []
    pairs = gen_instances(m, "pair-on-path")
    assert len(pairs) == 6


def test_thm14iii_configs(mink):
    for inst in gen_instances(mink, "thm14iii-config", n=10, seed=6):
        Q, R, x, a = inst["Q"], inst["R"], inst["x"], inst["a"]
        assert Q != R
        assert mink.on_path(Q, x) and mink.on_path(R, x)
        assert mink.on_path(R, a) and a != x
        assert not mink.on_path(Q, inst["b"])


def test_unknown_kind(mink):
    with pytest.raises(InputError):
        gen_instances(mink, "nonsense-kind", n=3, seed=0)
