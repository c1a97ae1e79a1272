"""Concrete models: finite models loaded from JSON, and two analytic 1+1 models.

The analytic models live over pairs of exact rationals.  Minkowski paths are
the lines x(t) = x0 + v*t with |v| < 1 (strictly timelike worldlines;
lightlike pairs are not path-connected, so unreachable intervals come out
closed).  Galilean paths are the same lines with any finite rational v, and
constant-t lines are never paths; this is the instructive counter-model in
which every unreachable set has at most one element.
"""

from __future__ import annotations

import hashlib
import json
import random
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple

from .core import Event, InputError, Model, Path, canonical_triple, ev, line_path
from .rational import format_rational, parse_rational

# Sampler bounds: coordinates p/q with |p| <= COORD_BOUND * q, q <= DEN_BOUND.
COORD_BOUND = 16
DEN_BOUND = 32


class ModelFormatError(ValueError):
    """A finite-model document failed to parse or validate."""


def substream(seed: int, label: str) -> random.Random:
    """Deterministic per-check RNG derived from (master seed, label).

    Checks drawing from their own substreams can run in any order, or in
    parallel, without changing results.
    """
    digest = hashlib.blake2b(f"{seed}:{label}".encode(), digest_size=8).digest()
    return random.Random(int.from_bytes(digest, "big"))


def sample_fraction(rng: random.Random, bound: int = COORD_BOUND, max_den: int = DEN_BOUND) -> Fraction:
    q = rng.randint(1, max_den)
    p = rng.randint(-bound * q, bound * q)
    return Fraction(p, q)


class AnalyticModel(Model):
    """Shared machinery for the line-based models over rational pairs."""

    kind = "analytic"

    def valid_velocity(self, v: Fraction) -> bool:
        raise NotImplementedError

    def connectable(self, a: Event, b: Event) -> bool:
        """Whether two distinct events are joined by a path of this model."""
        raise NotImplementedError

    def sample_velocity(self, rng: random.Random) -> Fraction:
        raise NotImplementedError

    # -- events ---------------------------------------------------------

    def has_event(self, e: Event) -> bool:
        return e.coords is not None

    def sample_event(self, rng: random.Random) -> Event:
        return ev(sample_fraction(rng), sample_fraction(rng))

    def sample_event_off_path(self, rng: random.Random, path: Path) -> Event:
        for _ in range(64):
            e = self.sample_event(rng)
            if not self.on_path(path, e):
                return e
        t = sample_fraction(rng)
        return ev(t, path.x0 + path.v * t + 1)  # always off the line

    # -- paths ----------------------------------------------------------

    def line_through(self, a: Event, b: Event) -> Optional[Path]:
        """Unique line parameters (v, x0) if the pair is path-connectable."""
        if a == b:
            raise InputError("line_through requires two distinct events")
        (ta, xa), (tb, xb) = a.coords, b.coords
        if ta == tb:
            return None
        v = (xb - xa) / (tb - ta)
        if not self.valid_velocity(v):
            return None
        return line_path(v, xa - v * ta)

    def path_through(self, a: Event, b: Event) -> Optional[Path]:
        return self.line_through(a, b)

    def on_path(self, path: Path, e: Event) -> bool:
        t, x = e.coords
        return x == path.x0 + path.v * t

    def event_on(self, path: Path, t) -> Event:
        t = Fraction(t)
        return ev(t, path.x0 + path.v * t)

    def param_of(self, path: Path, e: Event) -> Fraction:
        if not self.on_path(path, e):
            raise InputError(f"event {e.id!r} is not on path {path.id!r}")
        return e.coords[0]

    def sample_path(self, rng: random.Random) -> Path:
        return line_path(self.sample_velocity(rng), sample_fraction(rng))

    def sample_event_on(self, rng: random.Random, path: Path) -> Event:
        return self.event_on(path, sample_fraction(rng))

    def sample_params_distinct(self, rng: random.Random, k: int) -> List[Fraction]:
        seen: set = set()
        out: List[Fraction] = []
        while len(out) < k:
            t = sample_fraction(rng)
            if t not in seen:
                seen.add(t)
                out.append(t)
        return out

    # -- betweenness -----------------------------------------------------

    def betw(self, a: Event, b: Event, c: Event) -> bool:
        if a == b or a == c or b == c:
            return False
        line = self.line_through(a, c)
        if line is None or not self.on_path(line, b):
            return False
        ta, tb, tc = a.coords[0], b.coords[0], c.coords[0]
        return ta < tb < tc or tc < tb < ta


class Minkowski1p1(AnalyticModel):
    """1+1-dimensional Minkowski spacetime over exact rationals."""

    name = "minkowski11"

    def valid_velocity(self, v: Fraction) -> bool:
        return abs(v) < 1

    def connectable(self, a: Event, b: Event) -> bool:
        if a == b:
            raise InputError("connectable requires distinct events")
        return timelike(a, b)

    def sample_velocity(self, rng: random.Random) -> Fraction:
        q = rng.randint(1, DEN_BOUND)
        p = rng.randint(-(q - 1), q - 1) if q > 1 else 0
        return Fraction(p, q)


class Galilean1p1(AnalyticModel):
    """Galilean counter-model: any finite velocity, no constant-t paths."""

    name = "galilean11"

    def valid_velocity(self, v: Fraction) -> bool:
        return True

    def connectable(self, a: Event, b: Event) -> bool:
        if a == b:
            raise InputError("connectable requires distinct events")
        return a.coords[0] != b.coords[0]

    def sample_velocity(self, rng: random.Random) -> Fraction:
        return sample_fraction(rng, bound=4, max_den=DEN_BOUND)


def timelike(a: Event, b: Event) -> bool:
    """Strictly timelike separation: (dx)^2 < (dt)^2, evaluated exactly."""
    if a == b:
        raise InputError("timelike requires distinct events")
    if a.coords is None or b.coords is None:
        raise InputError("timelike requires coordinate-bearing events")
    dt = a.coords[0] - b.coords[0]
    dx = a.coords[1] - b.coords[1]
    return dx * dx < dt * dt


def line_through(model: AnalyticModel, a: Event, b: Event) -> Optional[Path]:
    return model.line_through(a, b)


def line_intersection(P: Path, R: Path) -> Optional[Event]:
    """The unique intersection event of two analytic paths, or None if parallel."""
    if P.line is None or R.line is None:
        raise InputError("line_intersection requires analytic paths")
    if P.line == R.line:
        raise InputError("identical paths intersect everywhere")
    if P.v == R.v:
        return None
    t = (R.x0 - P.x0) / (P.v - R.v)
    return ev(t, P.x0 + P.v * t)


class FiniteModel(Model):
    """An explicitly listed model: named events, event-set paths, betweenness triples.

    Triples are stored canonically, so the stored relation is symmetric under
    reversal by construction.  Loading validates membership (paths contain
    only listed events), distinctness of triple members, and that each triple
    lies on some listed path; everything else is the axiom checkers' job.
    """

    kind = "finite"

    def __init__(self, events: Iterable[str], paths: Iterable[Iterable[str]],
                 triples: Iterable[Tuple[str, str, str]], name: str = "finite"):
        self.name = name
        self._events = {eid: Event(id=eid) for eid in events}
        self._paths = [
            Path(id=f"P{i}", members=frozenset(p)) for i, p in enumerate(paths)
        ]
        self._triples = frozenset(canonical_triple(*t) for t in triples)
        self._validate()

    def _validate(self) -> None:
        for p in self._paths:
            for eid in p.members:
                if eid not in self._events:
                    raise ModelFormatError(f"path {p.id} contains unknown event {eid!r}")
        for (a, b, c) in sorted(self._triples):
            if len({a, b, c}) != 3:
                raise ModelFormatError(f"betweenness triple ({a},{b},{c}) has repeated members")
            for eid in (a, b, c):
                if eid not in self._events:
                    raise ModelFormatError(f"betweenness triple names unknown event {eid!r}")
            if not any({a, b, c} <= p.members for p in self._paths):
                raise ModelFormatError(
                    f"betweenness triple ({a},{b},{c}) lies on no listed path")

    # -- enumeration ------------------------------------------------------

    def events(self) -> List[Event]:
        return [self._events[eid] for eid in sorted(self._events)]

    def paths(self) -> List[Path]:
        return list(self._paths)

    def event(self, eid: str) -> Event:
        if eid not in self._events:
            raise InputError(f"unknown event id {eid!r}")
        return self._events[eid]

    def triples(self) -> List[Tuple[str, str, str]]:
        return sorted(self._triples)

    def path_events(self, path: Path) -> List[Event]:
        return [self._events[eid] for eid in sorted(path.members)]

    def paths_through(self, e: Event) -> List[Path]:
        return [p for p in self._paths if e.id in p.members]

    # -- model interface --------------------------------------------------

    def has_event(self, e: Event) -> bool:
        return e.id in self._events

    def betw(self, a: Event, b: Event, c: Event) -> bool:
        return canonical_triple(a.id, b.id, c.id) in self._triples

    def on_path(self, path: Path, e: Event) -> bool:
        return e.id in path.members

    def path_through(self, a: Event, b: Event) -> Optional[Path]:
        for p in self._paths:
            if a.id in p.members and b.id in p.members:
                return p
        return None

    def connectable(self, a: Event, b: Event) -> bool:
        if a == b:
            raise InputError("connectable requires distinct events")
        return self.path_through(a, b) is not None


def load_finite_model(text: str, name: str = "finite") -> FiniteModel:
    """Parse and validate the finite-model document format.

    Format (UTF-8 JSON):
      {"events": ["a", ...], "paths": [["a","b"], ...],
       "betweenness": [["a","b","c"], ...]}
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelFormatError(f"invalid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise ModelFormatError("model document must be a JSON object")
    events = doc.get("events", [])
    paths = doc.get("paths", [])
    triples = doc.get("betweenness", [])
    if not isinstance(events, list) or not all(isinstance(e, str) for e in events):
        raise ModelFormatError('"events" must be a list of strings')
    if len(set(events)) != len(events):
        raise ModelFormatError('"events" contains duplicates')
    if not isinstance(paths, list) or not all(
            isinstance(p, list) and all(isinstance(e, str) for e in p) for p in paths):
        raise ModelFormatError('"paths" must be a list of event-id lists')
    for p in paths:
        if len(set(p)) != len(p):
            raise ModelFormatError(f"path {p} lists an event twice")
    if not isinstance(triples, list) or not all(
            isinstance(t, list) and len(t) == 3 and all(isinstance(e, str) for e in t)
            for t in triples):
        raise ModelFormatError('"betweenness" must be a list of 3-element id lists')
    return FiniteModel(events, paths, [tuple(t) for t in triples], name=name)


def builtin_model(name: str) -> Model:
    if name == "minkowski11":
        return Minkowski1p1()
    if name == "galilean11":
        return Galilean1p1()
    raise InputError(f"unknown builtin model {name!r}")


def resolve_model(spec: str) -> Model:
    """Resolve a CLI model argument: ``builtin:NAME`` or a finite-model file path."""
    if spec.startswith("builtin:"):
        return builtin_model(spec[len("builtin:"):])
    try:
        with open(spec, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ModelFormatError(f"cannot read model file {spec!r}: {e}") from e
    return load_finite_model(text, name=spec)
