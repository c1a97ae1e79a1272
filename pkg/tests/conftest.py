import json

import pytest

from minkcheck import Galilean1p1, Minkowski1p1, load_finite_model


@pytest.fixture(scope="session")
def mink():
    return Minkowski1p1()


@pytest.fixture(scope="session")
def gal():
    return Galilean1p1()


def make_model(events, paths, betweenness, name):
    doc = {"events": events, "paths": paths, "betweenness": betweenness}
    return load_finite_model(json.dumps(doc), name=name)


@pytest.fixture(scope="session")
def singleton_model():
    return make_model(["a"], [], [], "singleton")


@pytest.fixture(scope="session")
def three_event_model():
    return make_model(["a", "b", "c"], [["a", "b", "c"]], [["a", "b", "c"]], "three")


@pytest.fixture(scope="session")
def gap_model():
    """Two unreachable events with a reachable one between them: violates
    the connectedness axiom, so the connectedness theorem checker must
    produce a replayable fail."""
    return make_model(
        ["q1", "q2", "q3", "b"],
        [["q1", "q2", "q3"], ["b", "q2"]],
        [["q1", "q2", "q3"]],
        "gap",
    )


@pytest.fixture(scope="session")
def o4_violation_model():
    """Stores [[a b c]] and [[b c d]] without [[a b d]]: loads fine (only
    membership and distinctness are load-time checks) but fails the
    transitivity axiom, and breaks the local/total order equivalence."""
    return make_model(
        ["a", "b", "c", "d"],
        [["a", "b", "c", "d"]],
        [["a", "b", "c"], ["b", "c", "d"]],
        "o4-violation",
    )


@pytest.fixture(scope="session")
def star_model():
    """Three spokes through a hub; swapping two spokes fixes the third."""
    return make_model(
        ["x", "q1", "r1", "s1"],
        [["x", "q1"], ["x", "r1"], ["x", "s1"]],
        [],
        "star",
    )


@pytest.fixture(scope="session")
def uneven_star_model():
    """Spoke via-sets differ, so the symmetry hypothesis is unmet."""
    return make_model(
        ["x", "qm", "q1", "r1", "s1"],
        [["x", "qm", "q1"], ["x", "r1"], ["x", "s1"], ["s1", "qm"]],
        [["x", "qm", "q1"]],
        "uneven-star",
    )


@pytest.fixture(scope="session")
def lopsided_star_model():
    """Hypothesis holds but no event permutation can map the wide spoke
    onto the narrow one."""
    return make_model(
        ["x", "q1", "r1", "r2", "s1"],
        [["x", "q1"], ["x", "r1", "r2"], ["x", "s1"]],
        [],
        "lopsided-star",
    )
