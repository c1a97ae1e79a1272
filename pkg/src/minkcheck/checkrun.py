"""Shared driver for conditional checks and witness (de)serialization.

A conditional check generates instances satisfying a statement's hypotheses
and asserts its conclusion on each.  Zero conforming instances give an
explicit vacuous pass, never a silent one.  Fail witnesses are encoded so
they can be replayed: decoding the instance and re-running the conclusion
must reproduce the failure.
"""

from __future__ import annotations

import time
from fractions import Fraction
from typing import Callable, Optional

from .chains import Chain
from .core import Budget, Event, InputError, Model, Path, Verdict, ev, line_path
from .generators import stream_instances
from .models import AnalyticModel, FiniteModel, substream
from .rational import format_rational, parse_coords, parse_rational


def encode_value(value):
    if isinstance(value, Event):
        return {"event": value.id}
    if isinstance(value, Path):
        return {"path": value.id}
    if isinstance(value, Chain):
        return {"chain": [e.id for e in value.seq]}
    if isinstance(value, Fraction):
        return {"rational": format_rational(value)}
    if isinstance(value, (tuple, list)):
        return [encode_value(v) for v in value]
    if isinstance(value, dict):
        return {k: encode_value(v) for k, v in sorted(value.items())}
    if value is None or isinstance(value, (str, int, bool)):
        return value
    raise TypeError(f"cannot encode witness value {value!r}")


def encode_instance(instance: dict) -> dict:
    return {k: encode_value(v) for k, v in sorted(instance.items())}


def _decode_event(model: Model, eid: str) -> Event:
    if isinstance(model, FiniteModel):
        return model.event(eid)
    t, x = parse_coords(eid)
    return ev(t, x)


def _decode_path(model: Model, pid: str) -> Path:
    if isinstance(model, FiniteModel):
        for p in model.paths():
            if p.id == pid:
                return p
        raise InputError(f"unknown path id {pid!r}")
    v_part, x0_part = pid.split(",")
    return line_path(parse_rational(v_part.split("=")[1]),
                     parse_rational(x0_part.split("=")[1]))


def decode_value(model: Model, value):
    if isinstance(value, dict):
        if "event" in value and len(value) == 1:
            return _decode_event(model, value["event"])
        if "path" in value and len(value) == 1:
            return _decode_path(model, value["path"])
        if "chain" in value and len(value) == 1:
            events = tuple(_decode_event(model, eid) for eid in value["chain"])
            return Chain(seq=events, path=model.path_through(events[0], events[1]))
        if "rational" in value and len(value) == 1:
            return parse_rational(value["rational"])
        return {k: decode_value(model, v) for k, v in value.items()}
    if isinstance(value, list):
        return tuple(decode_value(model, v) for v in value)
    return value


def decode_instance(model: Model, payload: dict) -> dict:
    return {k: decode_value(model, v) for k, v in payload.items()}


def run_conditional(model: Model, kind: str,
                    holds: Callable[[Model, dict], bool],
                    budget: Budget, label: str) -> Verdict:
    """Drive one conditional check to a verdict.

    Finite models run the full enumeration (exhaustive); analytic models
    draw ``budget.samples`` instances from the substream named by ``label``.
    The first conclusion failure wins and its instance becomes the witness.
    """
    rng = substream(budget.seed, label)
    deadline = time.monotonic() + budget.time_limit
    exhaustive = isinstance(model, FiniteModel)
    n = None if exhaustive else budget.samples
    count = 0
    for instance in stream_instances(model, kind, n, rng):
        count += 1
        if not holds(model, instance):
            return Verdict.failed(encode_instance(instance), samples=count)
        if time.monotonic() > deadline:
            return Verdict.unknown("timeout", samples=count)
    if count == 0:
        return Verdict.passed("vacuous", samples=0)
    return Verdict.passed("exhaustive" if exhaustive else "sampled", samples=count)
