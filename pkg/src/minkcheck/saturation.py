"""Forward-chaining saturation of betweenness facts.

The fact base holds canonical triples (a triple and its reversal are the same
fact) plus declared inequality pairs.  Saturation closes the triples under
the Horn rules

    [a b c], [b c d]  ->  [a b d]
    [a b c], [a c d]  ->  [b c d]
    [a b d], [b c d]  ->  [a b c]

applied over both orientations of every fact.  Disjunctive consequences are
deliberately not rules here; they are per-instance checkers against a model.
A closure is contradictory when it contains two triples on the same three
events with different middles, or derives a degenerate triple with equal
endpoints.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List, Optional, Set, Tuple

from .core import InputError, canonical_triple

Triple = Tuple[str, str, str]


@dataclass(frozen=True)
class FactBase:
    triples: FrozenSet[Triple]
    distinct: FrozenSet[Tuple[str, str]] = frozenset()
    status: str = "consistent"  # "consistent" | "contradiction"
    contradiction: Optional[dict] = None

    @property
    def is_consistent(self) -> bool:
        return self.status == "consistent"


def fact(a: str, b: str, c: str) -> Triple:
    if len({a, b, c}) != 3:
        raise InputError(f"betweenness fact ({a},{b},{c}) has repeated members")
    return canonical_triple(a, b, c)


def factbase(facts: Iterable[Tuple[str, str, str]],
             distinct: Iterable[Tuple[str, str]] = ()) -> FactBase:
    triples = frozenset(fact(*t) for t in facts)
    pairs = set()
    for (p, q) in distinct:
        if p == q:
            raise InputError(f"distinctness pair ({p},{q}) names one event twice")
        pairs.add((min(p, q), max(p, q)))
    return FactBase(triples=triples, distinct=frozenset(pairs))


def _oriented(triples: Iterable[Triple]) -> List[Triple]:
    out = []
    for (a, b, c) in triples:
        out.append((a, b, c))
        out.append((c, b, a))
    return out


def _derive(t1: Triple, t2: Triple) -> List[Triple]:
    """One-step consequences of an ordered pair of oriented triples."""
    out = []
    a, b, c = t1
    # [a b c], [b c d] -> [a b d]
    if t2[0] == b and t2[1] == c:
        out.append((a, b, t2[2]))
    # [a b c], [a c d] -> [b c d]
    if t2[0] == a and t2[1] == c:
        out.append((b, c, t2[2]))
    # t1 = [a b d], t2 = [b c d] -> [a b c]
    if t2[0] == b and t2[2] == c:
        out.append((a, b, t2[1]))
    return out


def saturate(fb: FactBase) -> FactBase:
    """Least fixed point of the rule set; detects the first contradiction found.

    Saturation is idempotent and monotone in its input facts.
    """
    middles = {}  # frozenset of member ids -> middle element
    closure: Set[Triple] = set()
    conflict: Optional[dict] = None

    def add(tri: Triple, parents: Tuple[Triple, ...] = ()) -> bool:
        nonlocal conflict
        canon = canonical_triple(*tri)
        if canon in closure:
            return False
        closure.add(canon)
        a, b, c = canon
        key = frozenset((a, b, c))
        if a == c or len(key) != 3:
            if conflict is None:
                conflict = {"kind": "degenerate", "triple": list(canon),
                            "derived_from": [list(p) for p in parents]}
            return True
        if key in middles and middles[key] != b:
            if conflict is None:
                other = next(t for t in closure
                             if frozenset(t) == key and t[1] == middles[key])
                conflict = {"kind": "forbidden_reordering",
                            "triples": [list(other), list(canon)]}
        else:
            middles.setdefault(key, b)
        return True

    for t in sorted(fb.triples):
        add(t)

    frontier = sorted(closure)
    while frontier:
        new: Set[Triple] = set()
        oriented_all = _oriented(sorted(closure))
        oriented_frontier = _oriented(frontier)
        for t1 in oriented_frontier:
            for t2 in oriented_all:
                for derived in _derive(t1, t2) + _derive(t2, t1):
                    canon = canonical_triple(*derived)
                    if canon not in closure:
                        new.add((canon, t1, t2))
        frontier = []
        for canon, t1, t2 in sorted(new):
            if add(canon, parents=(t1, t2)):
                frontier.append(canon)

    status = "consistent" if conflict is None else "contradiction"
    return FactBase(triples=frozenset(closure), distinct=fb.distinct,
                    status=status, contradiction=conflict)


def factbase_from_json(text: str) -> FactBase:
    """Parse the fact-base document: {"facts": [["a","b","c"],...], "distinct": [["c","d"],...]}."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON fact base: {e}") from e
    if not isinstance(doc, dict):
        raise InputError("fact base must be a JSON object")
    facts = doc.get("facts", [])
    distinct = doc.get("distinct", [])
    if not isinstance(facts, list) or not all(
            isinstance(t, list) and len(t) == 3 and all(isinstance(e, str) for e in t)
            for t in facts):
        raise InputError('"facts" must be a list of 3-element id lists')
    if not isinstance(distinct, list) or not all(
            isinstance(p, list) and len(p) == 2 and all(isinstance(e, str) for e in p)
            for p in distinct):
        raise InputError('"distinct" must be a list of 2-element id lists')
    return factbase([tuple(t) for t in facts], [tuple(p) for p in distinct])


def factbase_to_json(fb: FactBase) -> str:
    doc = {
        "facts": [list(t) for t in sorted(fb.triples)],
        "distinct": [list(p) for p in sorted(fb.distinct)],
        "status": fb.status,
    }
    if fb.contradiction is not None:
        doc["contradiction"] = fb.contradiction
    return json.dumps(doc, sort_keys=True)
