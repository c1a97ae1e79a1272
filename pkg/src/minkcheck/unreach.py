"""Unreachable subsets and the theorems that bound, connect, and escape them.

On a finite model an unreachable set is an explicit event set.  On an
analytic model the no-path condition along a line is piecewise linear in the
path parameter, so the unreachable subset of a path from an outside event is
an exact closed rational interval [t-, t+]; membership is O(1) and exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .chains import Chain, chain_from_set
from .core import Event, InputError, Model, Path, Verdict
from .models import AnalyticModel, FiniteModel, Galilean1p1, Minkowski1p1


@dataclass(frozen=True)
class UnreachSet:
    """The events of ``path`` joined to ``source`` by no path."""

    path: Path
    source: Event
    members: Optional[frozenset] = None  # finite models
    interval: Optional[Tuple[Fraction, Fraction]] = None  # closed [t-, t+]

    def contains(self, model: Model, e: Event) -> bool:
        if self.members is not None:
            return e in self.members
        if not model.on_path(self.path, e):
            return False
        lo, hi = self.interval
        return lo <= e.coords[0] <= hi

    def is_empty(self) -> bool:
        if self.members is not None:
            return not self.members
        return False  # a closed interval always has at least one rational

    def two_distinct_members(self, model: Model) -> Optional[Tuple[Event, Event]]:
        """Two distinct member events, if the set has them."""
        if self.members is not None:
            ordered = sorted(self.members, key=lambda e: e.key())
            return (ordered[0], ordered[1]) if len(ordered) >= 2 else None
        lo, hi = self.interval
        if lo == hi:
            return None
        return (model.event_on(self.path, lo), model.event_on(self.path, hi))

    def member_count_le(self, k: int) -> bool:
        """Whether the set provably has at most k members."""
        if self.members is not None:
            return len(self.members) <= k
        lo, hi = self.interval
        return lo == hi and k >= 1

    def sample_members(self, model: Model, rng: random.Random, n: int) -> List[Event]:
        if self.members is not None:
            ordered = sorted(self.members, key=lambda e: e.key())
            if not ordered:
                return []
            return [ordered[rng.randrange(len(ordered))] for _ in range(n)]
        lo, hi = self.interval
        out = []
        for _ in range(n):
            u = Fraction(rng.randint(0, 64), 64)
            out.append(model.event_on(self.path, lo + (hi - lo) * u))
        return out

    def between_all(self, model: Model, a: Event, b: Event) -> bool:
        """Exact test that every member lies strictly between a and b."""
        if self.members is not None:
            return all(model.betw(a, x, b) for x in sorted(self.members, key=lambda e: e.key()))
        if not (model.on_path(self.path, a) and model.on_path(self.path, b)):
            # off-path bounds can never put members strictly between them
            return False
        lo, hi = self.interval
        ta, tb = a.coords[0], b.coords[0]
        left, right = min(ta, tb), max(ta, tb)
        return left < lo and hi < right


@dataclass(frozen=True)
class UnreachViaSet:
    """Members of Q strictly between x and the anchor that share a witness on R.

    The analytic representation allows each end to be open or closed: the
    witness condition yields a closed interval, the strict betweenness window
    an open one, and the set is their exact intersection.
    """

    path: Path
    anchor: Event
    via: Path
    meet: Event
    members: Optional[frozenset] = None
    interval: Optional[Tuple[Fraction, bool, Fraction, bool]] = None  # lo, lo_closed, hi, hi_closed

    def contains(self, model: Model, e: Event) -> bool:
        if self.members is not None:
            return e in self.members
        if self.interval is None or not model.on_path(self.path, e):
            return False
        lo, lo_closed, hi, hi_closed = self.interval
        t = e.coords[0]
        above = t >= lo if lo_closed else t > lo
        below = t <= hi if hi_closed else t < hi
        return above and below

    def is_empty(self) -> bool:
        if self.members is not None:
            return not self.members
        return self.interval is None


def _unreach_interval(model: AnalyticModel, Q: Path, b: Event) -> Tuple[Fraction, Fraction]:
    """Closed parameter interval of Q-events not path-connectable to b."""
    tb, xb = b.coords
    if isinstance(model, Minkowski1p1):
        # |x_Q(t) - xb| >= |t - tb| holds exactly between the two lightlike solves.
        u = xb - Q.x0
        r1 = (u - tb) / (Q.v - 1)
        r2 = (u + tb) / (Q.v + 1)
        return (min(r1, r2), max(r1, r2))
    if isinstance(model, Galilean1p1):
        # only the simultaneous event is out of reach
        return (tb, tb)
    raise InputError(f"no unreachable-interval rule for model {model.name}")


def unreach_from(model: Model, Q: Path, b: Event) -> UnreachSet:
    """The unreachable subset of path Q from an event b outside it."""
    if model.on_path(Q, b):
        raise InputError(f"source event {b.id} lies on the path")
    if isinstance(model, FiniteModel):
        members = frozenset(
            x for x in model.path_events(Q) if model.path_through(x, b) is None
        )
        return UnreachSet(path=Q, source=b, members=members)
    return UnreachSet(path=Q, source=b, interval=_unreach_interval(model, Q, b))


def unreach_via(model: Model, Q: Path, Qa: Event, R: Path, x: Event) -> UnreachViaSet:
    """Unreachable subset of Q from Qa via R, at the meeting event x."""
    if Q == R:
        raise InputError("paths Q and R must be distinct")
    if not (model.on_path(Q, x) and model.on_path(R, x)):
        raise InputError("x must lie on both paths")
    if not model.on_path(Q, Qa):
        raise InputError("anchor must lie on Q")
    if Qa == x:
        raise InputError("anchor must differ from the meeting event")

    if isinstance(model, FiniteModel):
        members = set()
        for Qy in model.path_events(Q):
            if not model.betw(x, Qy, Qa):
                continue
            for Rw in model.path_events(R):
                if model.on_path(Q, Rw):
                    continue
                ua = unreach_from(model, Q, Rw)
                if ua.contains(model, Qa) and ua.contains(model, Qy):
                    members.add(Qy)
                    break
        return UnreachViaSet(path=Q, anchor=Qa, via=R, meet=x, members=frozenset(members))

    # Witnesses Rw on R that cannot reach Qa form a closed parameter interval
    # on R; for each such s the unreachable window on Q is a closed interval
    # with endpoints linear in s, so their union is spanned by the endpoint
    # windows.
    s_lo, s_hi = _unreach_interval(model, R, Qa)
    span: List[Fraction] = []
    for s in (s_lo, s_hi):
        rw = model.event_on(R, s)
        w_lo, w_hi = _unreach_interval(model, Q, rw)
        span.extend((w_lo, w_hi))
    w_lo, w_hi = min(span), max(span)

    t_x, t_a = x.coords[0], Qa.coords[0]
    o_lo, o_hi = min(t_x, t_a), max(t_x, t_a)
    lo, lo_closed = (w_lo, True) if w_lo > o_lo else (o_lo, False)
    hi, hi_closed = (w_hi, True) if w_hi < o_hi else (o_hi, False)
    if lo > hi or (lo == hi and not (lo_closed and hi_closed)):
        return UnreachViaSet(path=Q, anchor=Qa, via=R, meet=x, interval=None)
    return UnreachViaSet(path=Q, anchor=Qa, via=R, meet=x,
                         interval=(lo, lo_closed, hi, hi_closed))


def joinable(model: Model, a: Event, Q: Path) -> bool:
    """Whether some path joins a to an event of Q."""
    if isinstance(model, FiniteModel):
        return any(model.path_through(a, q) is not None
                   for q in model.path_events(Q) if q != a)
    lo, hi = _unreach_interval(model, Q, a)
    del lo, hi  # bounded, so events beyond it are reachable
    return True


def thm4_bound(model: Model, Q: Path, b: Event, Qx: Event, Qy: Event) -> Optional[Event]:
    """An event Qz of Q, reachable from b, with betw(Qx, Qy, Qz) and Qx != Qz.

    Analytic construction steps one unit past the far end of the unreachable
    interval; finite models search the path and may have no such event.
    """
    u = unreach_from(model, Q, b)
    if u.contains(model, Qx):
        raise InputError("Qx must be reachable from b")
    if not u.contains(model, Qy):
        raise InputError("Qy must be unreachable from b")
    if isinstance(model, FiniteModel):
        for Qz in model.path_events(Q):
            if not u.contains(model, Qz) and model.betw(Qx, Qy, Qz):
                return Qz
        return None
    lo, hi = u.interval
    tx = model.param_of(Q, Qx)
    return model.event_on(Q, hi + 1 if tx < lo else lo - 1)


def thm13_check(model: Model, Q: Path, b: Event, Qx: Event, Qy: Event, Qz: Event) -> Verdict:
    """Connectedness: between two unreachable events everything is unreachable."""
    u = unreach_from(model, Q, b)
    if not (u.contains(model, Qx) and u.contains(model, Qz)):
        raise InputError("Qx and Qz must both be unreachable from b")
    if Qx == Qz:
        raise InputError("Qx and Qz must be distinct")
    if not model.betw(Qx, Qy, Qz):
        raise InputError("betw(Qx, Qy, Qz) must hold")
    if u.contains(model, Qy):
        return Verdict.passed("exact", samples=1)
    return Verdict.failed({
        "path": Q.id, "b": b.id, "Qx": Qx.id, "Qy": Qy.id, "Qz": Qz.id,
        "note": "Qy between unreachable events but reachable",
    }, samples=1)


def i6_chain(model: Model, Q: Path, b: Event, Qx: Event, Qz: Event) -> Chain:
    """A finite chain from Qx to Qz staying inside the unreachable set.

    The analytic construction subdivides the parameter interval at the
    midpoint; convexity of the interval makes both membership clauses exact.
    On finite models the chain collects every unreachable event between the
    ends (dropping any would only widen the gaps).
    """
    u = unreach_from(model, Q, b)
    if not (u.contains(model, Qx) and u.contains(model, Qz)):
        raise InputError("both ends must be unreachable from b")
    if Qx == Qz:
        raise InputError("chain ends must be distinct")
    if isinstance(model, FiniteModel):
        inner = [e for e in model.path_events(Q)
                 if u.contains(model, e) and model.betw(Qx, e, Qz)]
        return chain_from_set(model, [Qx, Qz, *inner])
    t1 = model.param_of(Q, Qx)
    t2 = model.param_of(Q, Qz)
    mid = (t1 + t2) / 2
    return Chain(seq=(Qx, model.event_on(Q, mid), Qz), path=Q)


def i7_chain(model: Model, Q: Path, b: Event, Qx: Event, Qy: Event) -> Chain:
    """A finite chain from reachable Qx through unreachable Qy back out to a
    reachable end."""
    u = unreach_from(model, Q, b)
    if u.contains(model, Qx):
        raise InputError("Qx must be reachable from b")
    if not u.contains(model, Qy):
        raise InputError("Qy must be unreachable from b")
    Qn = thm4_bound(model, Q, b, Qx, Qy)
    if Qn is None:
        raise InputError("model provides no reachable bound past Qy")
    return Chain(seq=(Qx, Qy, Qn), path=Q)


def thm14_bounds(model: Model, Q: Path, a: Event, b: Event) -> Optional[Tuple[Event, Event]]:
    """Events y,z of Q with both unreachable sets strictly between them."""
    for e in (a, b):
        if model.on_path(Q, e):
            raise InputError(f"event {e.id} must lie off the path")
        if not joinable(model, e, Q):
            raise InputError(f"event {e.id} cannot be joined to the path")
    ua = unreach_from(model, Q, a)
    ub = unreach_from(model, Q, b)
    if isinstance(model, FiniteModel):
        events = model.path_events(Q)
        for y in events:
            for z in events:
                if y == z:
                    continue
                if ua.between_all(model, y, z) and ub.between_all(model, y, z):
                    return (y, z)
        return None
    lo = min(ua.interval[0], ub.interval[0]) - 1
    hi = max(ua.interval[1], ub.interval[1]) + 1
    return (model.event_on(Q, lo), model.event_on(Q, hi))


def thm14_event(model: Model, Q: Path, a: Event, b: Event,
                c: Event, d: Event) -> Optional[Tuple[Event, Path, Path]]:
    """An event e of Q past d (betw(c,d,e)) reachable from both a and b,
    together with the two connecting paths."""
    if c == d:
        raise InputError("c and d must be distinct")
    for e_ in (c, d):
        if not model.on_path(Q, e_):
            raise InputError(f"event {e_.id} must lie on the path")
    ua = unreach_from(model, Q, a)
    ub = unreach_from(model, Q, b)
    if isinstance(model, FiniteModel):
        _ = thm14_bounds(model, Q, a, b)  # validates joinability preconditions
        for e in model.path_events(Q):
            if not model.betw(c, d, e):
                continue
            if ua.contains(model, e) or ub.contains(model, e):
                continue
            ae = model.path_through(a, e)
            be = model.path_through(b, e)
            if ae is not None and be is not None:
                return (e, ae, be)
        return None
    tc, td = model.param_of(Q, c), model.param_of(Q, d)
    lo = min(ua.interval[0], ub.interval[0])
    hi = max(ua.interval[1], ub.interval[1])
    te = max(td, hi) + 1 if td > tc else min(td, lo) - 1
    e = model.event_on(Q, te)
    ae = model.path_through(a, e)
    be = model.path_through(b, e)
    if ae is None or be is None:
        raise InputError("constructed event is unexpectedly unreachable")
    return (e, ae, be)


def thm14_beyond(model: Model, Q: Path, R: Path, x: Event, a: Event,
                 b: Event) -> Optional[Tuple[Event, Path, Path]]:
    """An event e with the whole set Q(a,0) strictly between x and e, plus paths ae, be.

    Built by anchoring c at the meeting event and taking d inside the
    unreachable set of a.
    """
    if Q == R:
        raise InputError("paths Q and R must be distinct")
    if not (model.on_path(Q, x) and model.on_path(R, x)):
        raise InputError("x must lie on both paths")
    if not model.on_path(R, a) or a == x:
        raise InputError("a must lie on R and differ from x")
    if model.on_path(Q, b):
        raise InputError("b must lie off Q")
    ua = unreach_from(model, Q, a)
    if ua.is_empty():
        return None
    if isinstance(model, FiniteModel):
        members = sorted(ua.members, key=lambda e_: e_.key())
        d = members[0]
        got = thm14_event(model, Q, a, b, x, d)
        if got is None:
            return None
        e, ae, be = got
        if not ua.between_all(model, x, e):
            return None
        return (e, ae, be)
    lo, hi = ua.interval
    d = model.event_on(Q, (lo + hi) / 2)
    got = thm14_event(model, Q, a, b, x, d)
    if got is None:
        return None
    e, ae, be = got
    if not ua.between_all(model, x, e):
        raise InputError("construction failed to bound the unreachable set")
    return (e, ae, be)
