"""Segments, intervals, prolongations, path segmentation, and the
collinearity and triangle results built from exact line intersections.

A chain of N events splits its path into the chain points, N-1 open
segments between chain-adjacent pairs, and two outer prolongations.  The
cover is exact and disjoint; the distinct-segment count equals N-1 only on
dense models (segments of a finite model can collapse to the empty set).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .chains import Chain, reverse_chain
from .core import (Event, InputError, Model, Path, Verdict,
                   is_kinematic_triangle)
from .models import AnalyticModel, FiniteModel, line_intersection


def _require_path(model: Model, a: Event, b: Event) -> Path:
    if a == b:
        raise InputError("endpoint events must be distinct")
    path = model.path_through(a, b)
    if path is None:
        raise InputError(f"no path through {a.id} and {b.id}")
    return path


def in_segment(model: Model, a: Event, b: Event, x: Event) -> bool:
    """x strictly between a and b on the path ab (endpoints excluded)."""
    _require_path(model, a, b)
    return model.betw(a, x, b)


def in_interval(model: Model, a: Event, b: Event, x: Event) -> bool:
    """The segment closed by its endpoints; never empty."""
    _require_path(model, a, b)
    return x == a or x == b or model.betw(a, x, b)


def in_prolongation(model: Model, a: Event, b: Event, x: Event) -> bool:
    """x beyond b as seen from a."""
    _require_path(model, a, b)
    return model.betw(a, b, x)


@dataclass(frozen=True)
class Segmentation:
    """Chain-adjacent segments plus the two outer prolongations of a path."""

    path: Path
    chain: Chain
    segments: Tuple[Tuple[Event, Event], ...]
    p1: Tuple[Event, Event]  # prolongation beyond the first chain event
    p2: Tuple[Event, Event]  # prolongation beyond the last chain event


def segmentation(model: Model, Q: Path, chain: Chain) -> Segmentation:
    for e in chain.seq:
        if not model.on_path(Q, e):
            raise InputError(f"chain event {e.id} is not on the path")
    seq = chain.seq
    segments = tuple((seq[i], seq[i + 1]) for i in range(len(seq) - 1))
    p1 = (seq[1], seq[0])
    p2 = (seq[-2], seq[-1])
    return Segmentation(path=Q, chain=chain, segments=segments, p1=p1, p2=p2)


def _classify(model: Model, seg: Segmentation, x: Event) -> List[str]:
    """All region labels containing x; a valid segmentation yields exactly one."""
    hits = []
    if x in seg.chain.seq:
        hits.append("chain")
    for i, (a, b) in enumerate(seg.segments):
        if model.betw(a, x, b):
            hits.append(f"segment{i}")
    if model.betw(*seg.p1, x):
        hits.append("p1")
    if model.betw(*seg.p2, x):
        hits.append("p2")
    return hits


def verify_segmentation(model: Model, seg: Segmentation,
                        samples: int = 500, rng: Optional[random.Random] = None) -> Verdict:
    """Every path event lies in exactly one region (a segment, a
    prolongation, or the chain set)."""
    if isinstance(model, FiniteModel):
        probes = model.path_events(seg.path)
        mode = "exhaustive"
    else:
        rng = rng or random.Random(0)
        params = [model.param_of(seg.path, e) for e in seg.chain.seq]
        lo, hi = min(params) - 8, max(params) + 8
        probes = [model.event_on(seg.path, lo + (hi - lo) * Fraction(rng.randint(0, 4096), 4096))
                  for _ in range(samples)]
        probes.extend(seg.chain.seq)
        mode = "sampled"
    for x in probes:
        hits = _classify(model, seg, x)
        if len(hits) != 1:
            return Verdict.failed({"event": x.id, "regions": hits}, samples=len(probes))
    return Verdict.passed(mode, samples=len(probes))


def segment_count(model: Model, seg: Segmentation) -> Verdict:
    """Count of distinct segments, as sets.

    Dense models realize the full count (chain length - 1); on a finite
    model adjacent chain events can bound empty segments which all coincide,
    so the observed count may be lower and the verdict records the
    degeneracy.
    """
    constructed = len(seg.segments)
    if isinstance(model, FiniteModel):
        member_sets = []
        for (a, b) in seg.segments:
            members = frozenset(x.id for x in model.path_events(seg.path)
                                if model.betw(a, x, b))
            member_sets.append(members)
        distinct = len(set(member_sets))
        return Verdict.passed("exhaustive", samples=constructed, count=distinct,
                              constructed=constructed,
                              degenerate=distinct < constructed)
    # chain parameters are strictly ordered, so open parameter windows are
    # nonempty and pairwise distinct on a dense model
    return Verdict.passed("exact", samples=constructed, count=constructed,
                          constructed=constructed, degenerate=False)


def segmentation_as_sets(seg: Segmentation) -> dict:
    """Orientation-free view: segment endpoint pairs and prolongation pairs as sets."""
    return {
        "segments": {frozenset((a.id, b.id)) for (a, b) in seg.segments},
        "p1": frozenset((seg.p1[0].id, seg.p1[1].id)),
        "p2": frozenset((seg.p2[0].id, seg.p2[1].id)),
    }


def reversed_segmentation(model: Model, seg: Segmentation) -> Segmentation:
    return segmentation(model, seg.path, reverse_chain(seg.chain))


def _check_triangle_de(model: Model, a: Event, b: Event, c: Event,
                       d: Event, e: Event) -> Tuple[Path, Path]:
    if not is_kinematic_triangle(model, a, b, c):
        raise InputError("a,b,c do not form a kinematic triangle")
    if not model.betw(b, c, d):
        raise InputError("betw(b,c,d) must hold")
    if not model.betw(c, e, a):
        raise InputError("betw(c,e,a) must hold")
    de = model.path_through(d, e)
    if de is None:
        raise InputError(f"no path through {d.id} and {e.id}")
    ab = model.path_through(a, b)
    return de, ab


def thm3_witness(model: Model, a: Event, b: Event, c: Event,
                 d: Event, e: Event) -> Optional[Event]:
    """The event f where the path de meets ab, with betw(a,f,b).

    Exact line intersection on analytic models, exhaustive search on finite
    ones; a missing witness means the model violates the collinearity axiom.
    """
    de, ab = _check_triangle_de(model, a, b, c, d, e)
    if isinstance(model, AnalyticModel):
        f = line_intersection(de, ab)
        if f is not None and model.betw(a, f, b):
            return f
        return None
    for f in model.path_events(ab):
        if model.on_path(de, f) and model.betw(a, f, b):
            return f
    return None


def thm7_witness(model: Model, a: Event, b: Event, c: Event,
                 d: Event, e: Event) -> Optional[Event]:
    """As thm3_witness, and additionally betw(d,e,f)."""
    f = thm3_witness(model, a, b, c, d, e)
    if f is None or not model.betw(d, e, f):
        return None
    return f


def thm8_check(model: Model, a: Event, b: Event, c: Event,
               ap: Event, bp: Event, cp: Event) -> Verdict:
    """No path contains all three side-internal events of a kinematic triangle."""
    if not is_kinematic_triangle(model, a, b, c):
        raise InputError("a,b,c do not form a kinematic triangle")
    if not model.betw(a, bp, c):
        raise InputError("betw(a,b',c) must hold")
    if not model.betw(b, cp, a):
        raise InputError("betw(b,c',a) must hold")
    if not model.betw(c, ap, b):
        raise InputError("betw(c,a',b) must hold")
    witness = {"a'": ap.id, "b'": bp.id, "c'": cp.id}
    if isinstance(model, AnalyticModel):
        common = model.line_through(ap, bp)
        if common is not None and model.on_path(common, cp):
            return Verdict.failed({**witness, "path": common.id}, samples=1)
        return Verdict.passed("exact", samples=1)
    for p in model.paths():
        if all(model.on_path(p, x) for x in (ap, bp, cp)):
            return Verdict.failed({**witness, "path": p.id}, samples=1)
    return Verdict.passed("exhaustive", samples=1)
