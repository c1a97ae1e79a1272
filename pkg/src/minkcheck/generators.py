"""Deterministic instance generation for conditional checks.

Universal statements are tested by generating instances that satisfy their
hypotheses exactly, then asserting the conclusion.  Analytic models sample
from a seeded substream (rejection sampling with constructive fallbacks, so
streams never hang); finite models enumerate every conforming instance.
Instances are plain dicts of named events, paths, and sequences.
"""

from __future__ import annotations

import itertools
import random
import re
from fractions import Fraction
from typing import Dict, Iterator, List, Optional

from .chains import chain_from_set
from .core import (Event, InputError, Model, ModelInconsistencyError, ev,
                   is_kinematic_triangle, line_path)
from .models import AnalyticModel, FiniteModel, line_intersection, substream
from .unreach import joinable, unreach_from

Instance = Dict[str, object]

ATTEMPTS_PER_INSTANCE = 64


class GenerationError(InputError):
    """The rejection budget ran out before n instances were produced."""

    def __init__(self, kind: str, wanted: int, produced: int, attempts: int):
        super().__init__(
            f"generator {kind!r} produced {produced}/{wanted} instances in {attempts} attempts")
        self.stats = {"kind": kind, "wanted": wanted,
                      "produced": produced, "attempts": attempts}


def _positive_fraction(rng: random.Random, max_den: int = 8) -> Fraction:
    q = rng.randint(1, max_den)
    p = rng.randint(1, 4 * q)
    return Fraction(p, q)


def _unit_fraction(rng: random.Random, den: int = 64) -> Fraction:
    return Fraction(rng.randint(1, den - 1), den)


def _closed_unit_fraction(rng: random.Random, den: int = 64) -> Fraction:
    return Fraction(rng.randint(0, den), den)


# ---------------------------------------------------------------------------
# samplers (analytic models): each returns one instance or None to reject
# ---------------------------------------------------------------------------

def _sample_event(model, rng):
    return {"event": model.sample_event(rng)}


def _sample_event_pair(model, rng):
    a = model.sample_event(rng)
    b = model.sample_event(rng)
    if a == b:
        return None
    return {"a": a, "b": b}


def _sample_path_pair(model, rng):
    P = model.sample_path(rng)
    R = model.sample_path(rng)
    if P == R:
        return None
    return {"P": P, "R": R}


def _sample_path_point(model, rng):
    path = model.sample_path(rng)
    return {"path": path, "event": model.sample_event_on(rng, path)}


def _sample_pair_on_path(model, rng):
    path = model.sample_path(rng)
    t1, t2 = model.sample_params_distinct(rng, 2)
    return {"path": path, "a": model.event_on(path, t1), "b": model.event_on(path, t2)}


def _ordered_events(model, path, params, rng):
    params = sorted(params)
    if rng.random() < 0.5:
        params.reverse()
    return [model.event_on(path, t) for t in params]


def _sample_betw_triple(model, rng):
    path = model.sample_path(rng)
    a, b, c = _ordered_events(model, path, model.sample_params_distinct(rng, 3), rng)
    return {"path": path, "a": a, "b": b, "c": c}


def _sample_betw_quad(model, rng):
    path = model.sample_path(rng)
    a, b, c, d = _ordered_events(model, path, model.sample_params_distinct(rng, 4), rng)
    return {"path": path, "a": a, "b": b, "c": c, "d": d}


def _sample_distinct_triple(model, rng):
    path = model.sample_path(rng)
    ts = model.sample_params_distinct(rng, 3)
    a, b, c = (model.event_on(path, t) for t in ts)
    return {"path": path, "a": a, "b": b, "c": c}


def _sample_co_path_set(model, rng, k: int, hi: Optional[int] = None):
    if hi is not None:
        k = rng.randint(k, hi)
    path = model.sample_path(rng)
    events = tuple(sorted((model.event_on(path, t)
                           for t in model.sample_params_distinct(rng, k)),
                          key=lambda e: e.key()))
    return {"path": path, "events": events}


def _sample_chain_seq(model, rng, lo: int, hi: int):
    k = rng.randint(lo, hi)
    path = model.sample_path(rng)
    seq = tuple(_ordered_events(model, path, model.sample_params_distinct(rng, k), rng))
    return {"path": path, "seq": seq}


_TRIANGLE_TEMPLATE = (
    (Fraction(0), Fraction(0)),
    (Fraction(4), Fraction(1)),
    (Fraction(2), Fraction(-1, 2)),
    (Fraction(0), Fraction(-2)),
    (Fraction(9, 5), Fraction(-9, 20)),
)


def _template_triangle_de(model, rng):
    """Affine image of a known-good configuration; always satisfies the hypotheses."""
    lam = _positive_fraction(rng)
    dt = Fraction(rng.randint(-8, 8))
    dx = Fraction(rng.randint(-8, 8))
    a, b, c, d, e = (ev(lam * t + dt, lam * x + dx) for (t, x) in _TRIANGLE_TEMPLATE)
    return {"a": a, "b": b, "c": c, "d": d, "e": e}


def _template_triangle_sides(model, rng):
    base = _template_triangle_de(model, rng)
    a, b, c = base["a"], base["b"], base["c"]
    ac = model.path_through(a, c)
    ba = model.path_through(b, a)
    cb = model.path_through(c, b)
    bp = model.event_on(ac, a.coords[0] + (c.coords[0] - a.coords[0]) * _unit_fraction(rng))
    cp = model.event_on(ba, b.coords[0] + (a.coords[0] - b.coords[0]) * _unit_fraction(rng))
    ap = model.event_on(cb, c.coords[0] + (b.coords[0] - c.coords[0]) * _unit_fraction(rng))
    return {"a": a, "b": b, "c": c, "ap": ap, "bp": bp, "cp": cp}


def _sample_triangle(model, rng):
    a = model.sample_event(rng)
    v1 = model.sample_velocity(rng)
    v2 = model.sample_velocity(rng)
    if v1 == v2:
        return None
    d1 = _positive_fraction(rng)
    d2 = _positive_fraction(rng)
    if d1 == d2:
        return None
    ta, xa = a.coords
    b = ev(ta + d1, xa + v1 * d1)
    c = ev(ta + d2, xa + v2 * d2)
    if not is_kinematic_triangle(model, a, b, c):
        return None
    return {"a": a, "b": b, "c": c}


def _sample_triangle_de(model, rng):
    tri = _sample_triangle(model, rng)
    if tri is None:
        return None
    a, b, c = tri["a"], tri["b"], tri["c"]
    bc = model.path_through(b, c)
    ca = model.path_through(c, a)
    tb, tc, ta = b.coords[0], c.coords[0], a.coords[0]
    d = model.event_on(bc, tc + (tc - tb) * _positive_fraction(rng))
    e = model.event_on(ca, tc + (ta - tc) * _unit_fraction(rng))
    if d == e or d.coords[0] == e.coords[0]:
        return None
    if model.path_through(d, e) is None:
        return None
    return {"a": a, "b": b, "c": c, "d": d, "e": e}


def _sample_triangle_sides(model, rng):
    tri = _sample_triangle(model, rng)
    if tri is None:
        return None
    a, b, c = tri["a"], tri["b"], tri["c"]
    ac = model.path_through(a, c)
    ba = model.path_through(b, a)
    cb = model.path_through(c, b)
    bp = model.event_on(ac, a.coords[0] + (c.coords[0] - a.coords[0]) * _unit_fraction(rng))
    cp = model.event_on(ba, b.coords[0] + (a.coords[0] - b.coords[0]) * _unit_fraction(rng))
    ap = model.event_on(cb, c.coords[0] + (b.coords[0] - c.coords[0]) * _unit_fraction(rng))
    return {"a": a, "b": b, "c": c, "ap": ap, "bp": bp, "cp": cp}


def _sample_unreach_config(model, rng):
    path = model.sample_path(rng)
    return {"path": path, "b": model.sample_event_off_path(rng, path)}


def _sample_unreach_xy(model, rng):
    base = _sample_unreach_config(model, rng)
    path, b = base["path"], base["b"]
    lo, hi = unreach_from(model, path, b).interval
    Qy = model.event_on(path, lo + (hi - lo) * _closed_unit_fraction(rng))
    step = _positive_fraction(rng)
    tx = lo - step if rng.random() < 0.5 else hi + step
    return {"path": path, "b": b, "Qx": model.event_on(path, tx), "Qy": Qy}


def _sample_unreach_xz(model, rng):
    base = _sample_unreach_config(model, rng)
    path, b = base["path"], base["b"]
    lo, hi = unreach_from(model, path, b).interval
    if lo == hi:
        return None  # at most one unreachable event: no conforming instance
    u1 = _closed_unit_fraction(rng)
    u2 = _closed_unit_fraction(rng)
    if u1 == u2:
        return None
    Qx = model.event_on(path, lo + (hi - lo) * min(u1, u2))
    Qz = model.event_on(path, lo + (hi - lo) * max(u1, u2))
    return {"path": path, "b": b, "Qx": Qx, "Qz": Qz}


def _sample_unreach_xyz(model, rng):
    base = _sample_unreach_xz(model, rng)
    if base is None:
        return None
    path = base["path"]
    t1 = model.param_of(path, base["Qx"])
    t2 = model.param_of(path, base["Qz"])
    Qy = model.event_on(path, t1 + (t2 - t1) * _unit_fraction(rng))
    base["Qy"] = Qy
    return base


def _sample_thm14_config(model, rng):
    path = model.sample_path(rng)
    a = model.sample_event_off_path(rng, path)
    b = a if rng.random() < 0.125 else model.sample_event_off_path(rng, path)
    return {"path": path, "a": a, "b": b}


def _sample_thm14ii_config(model, rng):
    base = _sample_thm14_config(model, rng)
    path = base["path"]
    t1, t2 = model.sample_params_distinct(rng, 2)
    base["c"] = model.event_on(path, t1)
    base["d"] = model.event_on(path, t2)
    return base


def _sample_thm14iii_config(model, rng):
    Q = model.sample_path(rng)
    R = model.sample_path(rng)
    if Q.v == R.v:
        return None
    x = line_intersection(Q, R)
    delta = _positive_fraction(rng)
    ta = x.coords[0] + (delta if rng.random() < 0.5 else -delta)
    a = model.event_on(R, ta)
    b = model.sample_event_off_path(rng, Q)
    return {"Q": Q, "R": R, "x": x, "a": a, "b": b}


def _sample_lemma12_config(model, rng):
    path = model.sample_path(rng)
    q0, q1, q2, q3 = _ordered_events(model, path, model.sample_params_distinct(rng, 4), rng)
    c, d = (q2, q3) if rng.random() < 0.5 else (q3, q2)
    return {"path": path, "a": q0, "b": q1, "c": c, "d": d}


def _sample_lemma3_config(model, rng):
    path = model.sample_path(rng)
    a, b, c, d = _ordered_events(model, path, model.sample_params_distinct(rng, 4), rng)
    return {"path": path, "a": a, "b": b, "c": c, "d": d}


def _sample_spray_config(model, rng, k: int):
    x = model.sample_event(rng)
    tx, xx = x.coords
    velocities: List[Fraction] = []
    for _ in range(64 * k):
        v = model.sample_velocity(rng)
        if v not in velocities:
            velocities.append(v)
        if len(velocities) == k:
            break
    if len(velocities) < k:
        return None
    paths = tuple(line_path(v, xx - v * tx) for v in velocities)
    return {"x": x, "paths": paths}


# ---------------------------------------------------------------------------
# enumerators (finite models)
# ---------------------------------------------------------------------------

def _enum_event(model):
    for e in model.events():
        yield {"event": e}


def _enum_event_pair(model):
    for a, b in itertools.combinations(model.events(), 2):
        yield {"a": a, "b": b}


def _enum_path_pair(model):
    for P, R in itertools.combinations(model.paths(), 2):
        yield {"P": P, "R": R}


def _enum_path_point(model):
    for path in model.paths():
        for e in model.path_events(path):
            yield {"path": path, "event": e}


def _enum_pair_on_path(model):
    for path in model.paths():
        for a, b in itertools.permutations(model.path_events(path), 2):
            yield {"path": path, "a": a, "b": b}


def _oriented_triples(model):
    for (a, b, c) in model.triples():
        yield (model.event(a), model.event(b), model.event(c))
        yield (model.event(c), model.event(b), model.event(a))


def _enum_betw_triple(model):
    for a, b, c in _oriented_triples(model):
        yield {"path": None, "a": a, "b": b, "c": c}


def _enum_betw_quad(model):
    # d may coincide with a: the corrected transitivity axiom covers that
    # case, and models storing both [[a b c]] and [[b c a]] must fail it
    triples = list(_oriented_triples(model))
    for (a, b, c) in triples:
        for (b2, c2, d) in triples:
            if b2 == b and c2 == c:
                yield {"path": None, "a": a, "b": b, "c": c, "d": d}


def _enum_distinct_triple(model):
    for path in model.paths():
        for a, b, c in itertools.combinations(model.path_events(path), 3):
            yield {"path": path, "a": a, "b": b, "c": c}


def _enum_co_path_set(model, k: int, hi: Optional[int] = None):
    sizes = range(k, (hi or k) + 1)
    for path in model.paths():
        events = model.path_events(path)
        for size in sizes:
            for combo in itertools.combinations(events, size):
                yield {"path": path, "events": tuple(combo)}


def _enum_chain_seq(model, lo: int, hi: int):
    for path in model.paths():
        events = model.path_events(path)
        for k in range(lo, min(hi, len(events), 6) + 1):
            for combo in itertools.combinations(events, k):
                try:
                    chain = chain_from_set(model, combo)
                except (InputError, ModelInconsistencyError):
                    continue  # non-orderable subsets are O5's problem, not ours
                yield {"path": path, "seq": chain.seq}


def _enum_triangle_de(model):
    events = model.events()
    for a, b, c in itertools.permutations(events, 3):
        if not is_kinematic_triangle(model, a, b, c):
            continue
        for d in events:
            if not model.betw(b, c, d):
                continue
            for e in events:
                if not model.betw(c, e, a):
                    continue
                if e != d and model.path_through(d, e) is not None:
                    yield {"a": a, "b": b, "c": c, "d": d, "e": e}


def _enum_triangle_sides(model):
    events = model.events()
    for a, b, c in itertools.permutations(events, 3):
        if not is_kinematic_triangle(model, a, b, c):
            continue
        for bp in events:
            if not model.betw(a, bp, c):
                continue
            for cp in events:
                if not model.betw(b, cp, a):
                    continue
                for ap in events:
                    if model.betw(c, ap, b):
                        yield {"a": a, "b": b, "c": c, "ap": ap, "bp": bp, "cp": cp}


def _enum_unreach_config(model):
    for path in model.paths():
        for b in model.events():
            if not model.on_path(path, b):
                yield {"path": path, "b": b}


def _enum_unreach_xy(model):
    for base in _enum_unreach_config(model):
        path, b = base["path"], base["b"]
        u = unreach_from(model, path, b)
        for Qx in model.path_events(path):
            if u.contains(model, Qx):
                continue
            for Qy in model.path_events(path):
                if u.contains(model, Qy):
                    yield {"path": path, "b": b, "Qx": Qx, "Qy": Qy}


def _enum_unreach_xz(model):
    for base in _enum_unreach_config(model):
        path, b = base["path"], base["b"]
        u = unreach_from(model, path, b)
        members = [e for e in model.path_events(path) if u.contains(model, e)]
        for Qx, Qz in itertools.combinations(members, 2):
            yield {"path": path, "b": b, "Qx": Qx, "Qz": Qz}


def _enum_unreach_xyz(model):
    for base in _enum_unreach_xz(model):
        for Qy in model.events():
            if model.betw(base["Qx"], Qy, base["Qz"]):
                yield {**base, "Qy": Qy}


def _enum_thm14_config(model):
    for path in model.paths():
        off = [e for e in model.events() if not model.on_path(path, e)
               and joinable(model, e, path)]
        for a, b in itertools.combinations_with_replacement(off, 2):
            yield {"path": path, "a": a, "b": b}


def _enum_thm14ii_config(model):
    for base in _enum_thm14_config(model):
        for c, d in itertools.permutations(model.path_events(base["path"]), 2):
            yield {**base, "c": c, "d": d}


def _enum_thm14iii_config(model):
    for Q, R in itertools.permutations(model.paths(), 2):
        shared = [e for e in model.path_events(Q) if model.on_path(R, e)]
        for x in shared:
            for a in model.path_events(R):
                if a == x or model.on_path(Q, a):
                    continue
                for b in model.events():
                    if not model.on_path(Q, b) and joinable(model, b, Q):
                        yield {"Q": Q, "R": R, "x": x, "a": a, "b": b}


def _enum_lemma12_config(model):
    triples = list(_oriented_triples(model))
    for (a, b, c) in triples:
        for (a2, b2, d) in triples:
            if a2 == a and b2 == b and d != c:
                yield {"path": None, "a": a, "b": b, "c": c, "d": d}


def _enum_lemma3_config(model):
    triples = list(_oriented_triples(model))
    for (a, b, c) in triples:
        for (a2, c2, d) in triples:
            if a2 == a and c2 == c:
                yield {"path": None, "a": a, "b": b, "c": c, "d": d}


def _enum_spray_config(model, k: int):
    for x in model.events():
        through = model.paths_through(x)
        for combo in itertools.combinations(through, k):
            yield {"x": x, "paths": tuple(combo)}


_SAMPLERS = {
    "event": _sample_event,
    "event-pair": _sample_event_pair,
    "path-pair": _sample_path_pair,
    "path-point": _sample_path_point,
    "pair-on-path": _sample_pair_on_path,
    "triple-on-path": _sample_betw_triple,
    "quad-on-path": _sample_betw_quad,
    "distinct-triple-on-path": _sample_distinct_triple,
    "triangle+d+e": _sample_triangle_de,
    "triangle+sides": _sample_triangle_sides,
    "unreach-config": _sample_unreach_config,
    "unreach-xy": _sample_unreach_xy,
    "unreach-xz": _sample_unreach_xz,
    "unreach-xyz": _sample_unreach_xyz,
    "thm14-config": _sample_thm14_config,
    "thm14ii-config": _sample_thm14ii_config,
    "thm14iii-config": _sample_thm14iii_config,
    "lemma12-config": _sample_lemma12_config,
    "lemma3-config": _sample_lemma3_config,
}

_ENUMERATORS = {
    "event": _enum_event,
    "event-pair": _enum_event_pair,
    "path-pair": _enum_path_pair,
    "path-point": _enum_path_point,
    "pair-on-path": _enum_pair_on_path,
    "triple-on-path": _enum_betw_triple,
    "quad-on-path": _enum_betw_quad,
    "distinct-triple-on-path": _enum_distinct_triple,
    "triangle+d+e": _enum_triangle_de,
    "triangle+sides": _enum_triangle_sides,
    "unreach-config": _enum_unreach_config,
    "unreach-xy": _enum_unreach_xy,
    "unreach-xz": _enum_unreach_xz,
    "unreach-xyz": _enum_unreach_xyz,
    "thm14-config": _enum_thm14_config,
    "thm14ii-config": _enum_thm14ii_config,
    "thm14iii-config": _enum_thm14iii_config,
    "lemma12-config": _enum_lemma12_config,
    "lemma3-config": _enum_lemma3_config,
}

_FALLBACKS = {
    "triangle+d+e": _template_triangle_de,
    "triangle+sides": _template_triangle_sides,
}

_PARAM_RE = re.compile(r"^([a-z0-9+-]+(?:-[a-z0-9+]+)*)\((\d+)(?:,(\d+))?\)$")


def _split_kind(kind: str):
    m = _PARAM_RE.match(kind)
    if not m:
        return kind, ()
    name = m.group(1)
    args = tuple(int(g) for g in m.groups()[1:] if g is not None)
    return name, args


def stream_instances(model: Model, kind: str, n: Optional[int],
                     rng: random.Random) -> Iterator[Instance]:
    """Yield up to n conforming instances; may fall short if rejection dominates."""
    name, args = _split_kind(kind)
    if isinstance(model, FiniteModel):
        if name == "co-path-set":
            it = _enum_co_path_set(model, *args)
        elif name == "chain-seq":
            it = _enum_chain_seq(model, *args)
        elif name == "spray-config":
            it = _enum_spray_config(model, *args)
        else:
            if name not in _ENUMERATORS:
                raise InputError(f"unknown instance kind {kind!r}")
            it = _ENUMERATORS[name](model)
        yield from (it if n is None else itertools.islice(it, n))
        return

    if n is None:
        raise InputError("sampled generation needs an explicit instance count")
    if name == "co-path-set":
        sampler = lambda m, r: _sample_co_path_set(m, r, *args)
    elif name == "chain-seq":
        sampler = lambda m, r: _sample_chain_seq(m, r, *args)
    elif name == "spray-config":
        sampler = lambda m, r: _sample_spray_config(m, r, *args)
    elif name not in _SAMPLERS:
        raise InputError(f"unknown instance kind {kind!r}")
    else:
        sampler = _SAMPLERS[name]

    fallback = _FALLBACKS.get(name)
    produced = 0
    attempts = 0
    budget = ATTEMPTS_PER_INSTANCE * n
    while produced < n and attempts < budget:
        attempts += 1
        got = sampler(model, rng)
        if got is None and fallback is not None and attempts % 16 == 0:
            got = fallback(model, rng)
        if got is not None:
            produced += 1
            yield got


def gen_instances(model: Model, kind: str, n: Optional[int] = None,
                  seed: int = 0) -> List[Instance]:
    """n instances exactly satisfying the named precondition.

    Deterministic per (kind, seed).  Raises GenerationError with statistics
    when the rejection budget runs out before n instances exist; finite
    models enumerate instead (n acts as a cap).
    """
    rng = substream(seed, f"gen:{kind}")
    out = list(stream_instances(model, kind, n, rng))
    if n is not None and not isinstance(model, FiniteModel) and len(out) < n:
        raise GenerationError(kind, n, len(out), ATTEMPTS_PER_INSTANCE * n)
    return out
