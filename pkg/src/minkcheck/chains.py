"""Chains: totally and locally ordered event sequences on a path.

A chain is realized directly as an event sequence (the indexing function
made concrete: position i holds f(i)).  Orientation is never canonical;
results about chains are stated up to reversal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .core import (Event, InputError, Model, ModelInconsistencyError, Path,
                   SomeBetwCase, Verdict, ev, some_betw_case)

BRUTE_FORCE_GUARD = 9  # factorial guard for the exhaustive chain search


@dataclass(frozen=True)
class Chain:
    """A finite chain: at least two pairwise-distinct events in path order."""

    seq: Tuple[Event, ...]
    path: Optional[Path] = None

    def __post_init__(self):
        if len(self.seq) < 2:
            raise InputError("a chain has at least two events")
        if len(set(self.seq)) != len(self.seq):
            raise InputError("chain events must be pairwise distinct")

    def __len__(self) -> int:
        return len(self.seq)

    @property
    def underlying(self) -> frozenset:
        return frozenset(self.seq)

    @property
    def first(self) -> Event:
        return self.seq[0]

    @property
    def last(self) -> Event:
        return self.seq[-1]


@dataclass(frozen=True)
class ChainClass:
    kind: str  # "short" | "long" | "not_chain"
    chain: Optional[Chain] = None
    reason: str = ""


def check_total_order(model: Model, seq: Sequence[Event]) -> bool:
    """Every index-ordered triple of the sequence is in betweenness."""
    if len(seq) < 3:
        raise InputError("total-order check needs at least three events")
    n = len(seq)
    for i in range(n - 2):
        for j in range(i + 1, n - 1):
            for k in range(j + 1, n):
                if not model.betw(seq[i], seq[j], seq[k]):
                    return False
    return True


def check_local_order(model: Model, seq: Sequence[Event]) -> bool:
    """Only adjacent triples are required: betw(seq[i], seq[i+1], seq[i+2])."""
    if len(seq) < 3:
        raise InputError("local-order check needs at least three events")
    return all(model.betw(seq[i], seq[i + 1], seq[i + 2]) for i in range(len(seq) - 2))


def local_total_equiv(model: Model, seq: Sequence[Event]) -> bool:
    """The two order predicates agree on every finite sequence of a conforming model."""
    return check_local_order(model, seq) == check_total_order(model, seq)


def index_injective_check(seq: Sequence[Event]) -> bool:
    return len(set(seq)) == len(seq)


def _common_path(model: Model, events: Sequence[Event]) -> Path:
    if len(events) < 2:
        raise InputError("need at least two events")
    first, second = events[0], events[1]
    path = model.path_through(first, second)
    if path is None:
        raise InputError(f"events {first.id} and {second.id} are not path-connected")
    for e in events[2:]:
        if not model.on_path(path, e):
            raise InputError(f"event {e.id} is not on the common path")
    return path


def chain_from_set(model: Model, X: Iterable[Event]) -> Chain:
    """Order a finite co-path event set into a chain, incrementally.

    Seed with the three smallest events under the fixed tiebreak, oriented by
    their unique betweenness case; insert each remaining event b left of the
    first element, past the last, or before the smallest index k with
    betw(first, b, seq[k]).  The result always satisfies the total order.
    """
    xs = sorted(set(X), key=lambda e: e.key())
    if len(xs) < 2:
        raise InputError("chain_from_set needs at least two events")
    path = _common_path(model, xs)
    if len(xs) == 2:
        return Chain(seq=(xs[0], xs[1]), path=path)

    a, b, c = xs[0], xs[1], xs[2]
    case = some_betw_case(model, path, a, b, c)
    middle = {SomeBetwCase.ABC: (a, b, c), SomeBetwCase.BCA: (b, c, a),
              SomeBetwCase.CAB: (c, a, b)}[case]
    seq = list(middle)
    if seq[0].key() > seq[-1].key():
        seq.reverse()

    for e in xs[3:]:
        if model.betw(e, seq[0], seq[-1]):
            seq.insert(0, e)
        elif model.betw(seq[0], seq[-1], e):
            seq.append(e)
        elif model.betw(seq[0], e, seq[-1]):
            for k in range(1, len(seq)):
                if model.betw(seq[0], e, seq[k]):
                    seq.insert(k, e)
                    break
            else:
                raise ModelInconsistencyError(
                    f"no insertion index for {e.id} despite betw({seq[0].id},{e.id},{seq[-1].id})")
        else:
            raise ModelInconsistencyError(
                f"event {e.id} is in no order with chain ends {seq[0].id},{seq[-1].id}")
    return Chain(seq=tuple(seq), path=path)


def brute_force_chain(model: Model, X: Iterable[Event]) -> Chain:
    """Independent oracle: exhaustive search for the ordering of a co-path set.

    Enumerates the permutation tree, pruning a prefix as soon as any
    index-ordered triple fails betweenness (every extension of such a prefix
    keeps the failing triple, so pruning loses nothing).  Exactly two valid
    permutations must exist, mutual reverses; anything else is a model
    inconsistency.
    """
    xs = sorted(set(X), key=lambda e: e.key())
    if len(xs) < 2:
        raise InputError("brute_force_chain needs at least two events")
    if len(xs) > BRUTE_FORCE_GUARD:
        raise InputError(f"brute_force_chain guard exceeded: {len(xs)} > {BRUTE_FORCE_GUARD}")
    path = _common_path(model, xs)
    if len(xs) == 2:
        return Chain(seq=(xs[0], xs[1]), path=path)

    valid: List[Tuple[Event, ...]] = []

    def extend(prefix: List[Event], rest: List[Event]) -> None:
        if not rest:
            valid.append(tuple(prefix))
            return
        for idx, e in enumerate(rest):
            m = len(prefix)
            ok = all(model.betw(prefix[i], prefix[j], e)
                     for i in range(m - 1) for j in range(i + 1, m))
            if ok:
                extend(prefix + [e], rest[:idx] + rest[idx + 1:])

    extend([], xs)
    if len(valid) != 2:
        raise ModelInconsistencyError(
            f"expected exactly 2 orderings of {[e.id for e in xs]}, found {len(valid)}")
    if valid[0] != tuple(reversed(valid[1])):
        raise ModelInconsistencyError("the two orderings are not mutual reverses")
    seq = valid[0] if valid[0][0].key() <= valid[0][-1].key() else valid[1]
    return Chain(seq=seq, path=path)


def reverse_chain(chain: Chain) -> Chain:
    return Chain(seq=tuple(reversed(chain.seq)), path=chain.path)


def chains_equal_up_to_reversal(c1: Chain, c2: Chain) -> bool:
    return c1.seq == c2.seq or c1.seq == tuple(reversed(c2.seq))


def classify_chain(model: Model, X: Iterable[Event]) -> ChainClass:
    """short: a path-connected pair; long: an orderable set of >= 3; else not_chain."""
    xs = sorted(set(X), key=lambda e: e.key())
    if len(xs) < 2:
        return ChainClass("not_chain", reason="fewer than two events")
    try:
        chain = chain_from_set(model, xs)
    except InputError as e:
        return ChainClass("not_chain", reason=str(e))
    return ChainClass("short" if len(xs) == 2 else "long", chain=chain)


def chain_ends(model: Model, X: Iterable[Event]) -> Tuple[Event, Event]:
    """Two events of X with every other member strictly between them.

    Folds events into the current extremes one at a time: the new event is
    either between them, beyond one end, or beyond the other.
    """
    xs = sorted(set(X), key=lambda e: e.key())
    if len(xs) < 3:
        raise InputError("chain_ends needs at least three events")
    path = _common_path(model, xs)
    case = some_betw_case(model, path, xs[0], xs[1], xs[2])
    a, b = {SomeBetwCase.ABC: (xs[0], xs[2]), SomeBetwCase.BCA: (xs[1], xs[0]),
            SomeBetwCase.CAB: (xs[2], xs[1])}[case]
    for x in xs[3:]:
        if model.betw(a, x, b):
            continue
        if model.betw(x, a, b):
            a = x
        elif model.betw(a, b, x):
            b = x
        else:
            raise ModelInconsistencyError(
                f"event {x.id} is in no order with current ends {a.id},{b.id}")
    return a, b


def prolong(model: Model, a: Event, b: Event) -> Optional[Event]:
    """An event c on the path through a,b with betw(a,b,c).

    Analytic models use the deterministic doubling rule c = b + (b - a);
    finite models search the path exhaustively and may come up empty (finite
    carriers violate prolongation at their edges; report, don't crash).
    """
    if a == b:
        raise InputError("prolong requires distinct events")
    path = model.path_through(a, b)
    if path is None:
        raise InputError(f"events {a.id} and {b.id} are not path-connected")
    if model.kind == "analytic":
        (ta, xa), (tb, xb) = a.coords, b.coords
        return ev(tb + (tb - ta), xb + (xb - xa))
    for c in model.path_events(path):
        if model.betw(a, b, c):
            return c
    return None


def distinct_prolong_sequence(model: Model, a: Event, b: Event, k: int) -> Tuple[Event, ...]:
    """k successive prolongations past b, all k+2 events pairwise distinct.

    Each step prolongs from the original a, so parameters double away from it
    and distinctness is strict.
    """
    if model.kind != "analytic":
        raise InputError("distinct_prolong_sequence is defined on analytic models")
    if k < 1:
        raise InputError("k must be at least 1")
    out: List[Event] = []
    current = b
    for _ in range(k):
        current = prolong(model, a, current)
        out.append(current)
    events = (a, b, *out)
    if len(set(events)) != len(events):
        raise ModelInconsistencyError("prolongation produced a repeated event")
    return tuple(out)


def chain4(model: Model, a: Event, b: Event, c: Event, d: Event) -> Chain:
    """Any four distinct co-path events form a chain."""
    if len({a, b, c, d}) != 4:
        raise InputError("chain4 requires four distinct events")
    return chain_from_set(model, (a, b, c, d))


def _lemma_verdict(ok: bool, witness: dict) -> Verdict:
    if ok:
        return Verdict.passed("exact", samples=1)
    return Verdict.failed(witness, samples=1)


def check_lemma1(model: Model, a: Event, b: Event, c: Event, d: Event) -> Verdict:
    """From betw(a,b,c), betw(a,b,d), c != d: either betw(b,c,d) or betw(b,d,c)."""
    if not (model.betw(a, b, c) and model.betw(a, b, d) and c != d):
        raise InputError("lemma 1 preconditions unmet")
    ok = model.betw(b, c, d) or model.betw(b, d, c)
    return _lemma_verdict(ok, {"a": a.id, "b": b.id, "c": c.id, "d": d.id})


def check_lemma2(model: Model, a: Event, b: Event, c: Event, d: Event) -> Verdict:
    """From betw(a,b,c), betw(a,b,d), c != d: either betw(a,c,d) or betw(a,d,c)."""
    if not (model.betw(a, b, c) and model.betw(a, b, d) and c != d):
        raise InputError("lemma 2 preconditions unmet")
    ok = model.betw(a, c, d) or model.betw(a, d, c)
    return _lemma_verdict(ok, {"a": a.id, "b": b.id, "c": c.id, "d": d.id})


def check_lemma3(model: Model, a: Event, b: Event, c: Event, d: Event) -> Verdict:
    """From betw(a,b,c) and betw(a,c,d): betw(b,c,d)."""
    if not (model.betw(a, b, c) and model.betw(a, c, d)):
        raise InputError("lemma 3 preconditions unmet")
    return _lemma_verdict(model.betw(b, c, d),
                          {"a": a.id, "b": b.id, "c": c.id, "d": d.id})
