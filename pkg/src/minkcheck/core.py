"""Primitive notions: events, paths, betweenness, and check verdicts.

A model owns its event set (events are not a universal type), exposes a pure
betweenness oracle, and decides path incidence exactly.  Everything here is
immutable; all operations are pure and safe for concurrent use.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Tuple

from .rational import format_coords, format_rational


class InputError(ValueError):
    """An operation precondition was violated by the caller."""


class ModelInconsistencyError(RuntimeError):
    """The model breaks an assumption that holds in every conforming model."""


@dataclass(frozen=True)
class Event:
    """A point of the event set.

    Finite-model events are bare named identities; analytic events carry
    exact rational coordinates (t, x) and derive their id from them.
    """

    id: str
    coords: Optional[Tuple[Fraction, Fraction]] = None

    def key(self):
        """Fixed total tiebreak used to make constructions deterministic."""
        return self.coords if self.coords is not None else self.id

    def __repr__(self) -> str:
        return f"Event({self.id})"


def ev(t, x) -> Event:
    """Build an analytic event from exact rational coordinates."""
    t, x = Fraction(t), Fraction(x)
    return Event(id=format_coords(t, x), coords=(t, x))


@dataclass(frozen=True)
class Path:
    """A path: a set of events, either listed explicitly or as a line x(t) = x0 + v*t."""

    id: str
    members: Optional[frozenset] = None  # frozenset of event ids (finite models)
    line: Optional[Tuple[Fraction, Fraction]] = None  # (v, x0) (analytic models)

    @property
    def v(self) -> Fraction:
        return self.line[0]

    @property
    def x0(self) -> Fraction:
        return self.line[1]

    def __repr__(self) -> str:
        return f"Path({self.id})"


def line_path(v, x0) -> Path:
    v, x0 = Fraction(v), Fraction(x0)
    return Path(id=f"v={format_rational(v)},x0={format_rational(x0)}", line=(v, x0))


def canonical_triple(a: str, b: str, c: str) -> Tuple[str, str, str]:
    """Store (a,b,c) and its reversal (c,b,a) identically; O2 becomes structural."""
    return min((a, b, c), (c, b, a))


class Status(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    """Three-valued check result.

    A fail always carries a concrete counterexample that re-evaluates to a
    failure; an unknown carries its reason.  ``mode`` records how a pass was
    established (sampled / exhaustive / vacuous / exact).
    """

    status: Status
    mode: str = ""
    witness: Optional[dict] = None
    reason: str = ""
    samples_used: int = 0
    evidence: dict = field(default_factory=dict)

    @classmethod
    def passed(cls, mode: str, samples: int = 0, **evidence) -> "Verdict":
        return cls(Status.PASS, mode=mode, samples_used=samples, evidence=dict(evidence))

    @classmethod
    def failed(cls, witness: dict, samples: int = 0, **evidence) -> "Verdict":
        return cls(Status.FAIL, witness=witness, samples_used=samples, evidence=dict(evidence))

    @classmethod
    def unknown(cls, reason: str, samples: int = 0) -> "Verdict":
        return cls(Status.UNKNOWN, reason=reason, samples_used=samples)

    @property
    def is_pass(self) -> bool:
        return self.status is Status.PASS

    @property
    def is_fail(self) -> bool:
        return self.status is Status.FAIL

    def label(self) -> str:
        if self.status is Status.PASS:
            return f"pass({self.mode})" if self.mode else "pass"
        if self.status is Status.FAIL:
            return f"fail({self.mode})" if self.mode else "fail"
        return "unknown"


@dataclass(frozen=True)
class Budget:
    """Sampling budget for a check: instance count, master seed, wall-time cap."""

    samples: int = 500
    seed: int = 0
    time_limit: float = 5.0


class Model:
    """Interface every concrete model implements.

    Immutable after construction.  The betweenness oracle is deterministic
    and pure; incidence and equality are decided exactly.
    """

    kind: str = ""
    name: str = ""

    def has_event(self, e: Event) -> bool:
        raise NotImplementedError

    def betw(self, a: Event, b: Event, c: Event) -> bool:
        raise NotImplementedError

    def on_path(self, path: Path, e: Event) -> bool:
        raise NotImplementedError

    def path_through(self, a: Event, b: Event) -> Optional[Path]:
        raise NotImplementedError

    def describe(self) -> str:
        return self.name


def _require_events(model: Model, *events: Event) -> None:
    for e in events:
        if not model.has_event(e):
            raise InputError(f"unknown event {e.id!r} in model {model.name}")


def betw(model: Model, a: Event, b: Event, c: Event) -> bool:
    """The primitive ternary relation: b lies strictly between a and c.

    True only for distinct, co-path triples; symmetric under reversal.
    """
    _require_events(model, a, b, c)
    return model.betw(a, b, c)


def betw_nonstrict(model: Model, a: Event, b: Event, c: Event) -> bool:
    """Non-strict variant: betw(a,b,c) or b = c."""
    _require_events(model, a, b, c)
    return b == c or model.betw(a, b, c)


def betw_set(model: Model, a: Event, group, b: Event) -> bool:
    """Every member of ``group`` lies strictly between a and b.

    ``group`` is an iterable of events or any object exposing
    ``between_all(model, a, b)`` (unreachable sets decide this exactly).
    An empty group is vacuously bounded.
    """
    _require_events(model, a, b)
    if hasattr(group, "between_all"):
        return group.between_all(model, a, b)
    return all(model.betw(a, x, b) for x in group)


def path_through(model: Model, a: Event, b: Event) -> Optional[Path]:
    """The unique path containing both events, or None.

    Uniqueness is an axiom (at most one path through two distinct events);
    on a non-conforming finite model the first listed match is returned and
    the axiom checker reports the violation.
    """
    if a == b:
        raise InputError("path_through requires two distinct events")
    _require_events(model, a, b)
    return model.path_through(a, b)


def is_kinematic_triangle(model: Model, a: Event, b: Event, c: Event) -> bool:
    """Three distinct events pairwise joined by three pairwise-distinct paths."""
    _require_events(model, a, b, c)
    if a == b or a == c or b == c:
        return False
    ab = model.path_through(a, b)
    ac = model.path_through(a, c)
    bc = model.path_through(b, c)
    if ab is None or ac is None or bc is None:
        return False
    return ab != ac and ab != bc and ac != bc


class SomeBetwCase(str, enum.Enum):
    EQ_AB = "eq_ab"
    EQ_AC = "eq_ac"
    EQ_BC = "eq_bc"
    ABC = "abc"
    BCA = "bca"
    CAB = "cab"


def some_betw_case(model: Model, Q: Path, a: Event, b: Event, c: Event) -> SomeBetwCase:
    """Which of the six exhaustive relations holds for three events of one path.

    For distinct triples exactly one cyclic order holds: abc (b in the
    middle), bca (c in the middle), or cab (a in the middle).
    """
    for e in (a, b, c):
        if not model.on_path(Q, e):
            raise InputError(f"event {e.id!r} is not on path {Q.id!r}")
    if a == b:
        return SomeBetwCase.EQ_AB
    if a == c:
        return SomeBetwCase.EQ_AC
    if b == c:
        return SomeBetwCase.EQ_BC
    hits = [case for case, (p, q, r) in (
        (SomeBetwCase.ABC, (a, b, c)),
        (SomeBetwCase.BCA, (b, c, a)),
        (SomeBetwCase.CAB, (c, a, b)),
    ) if model.betw(p, q, r)]
    if len(hits) != 1:
        raise ModelInconsistencyError(
            f"expected exactly one order among {a.id},{b.id},{c.id} on {Q.id}, got {len(hits)}"
        )
    return hits[0]
