"""Command-line front end.

Exit codes: 0 all pass, 1 any fail, 2 no fail but some unknown,
64 usage error, 65 input-file error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .axioms import AXIOM_IDS
from .chains import chain_from_set
from .core import Budget, InputError, ModelInconsistencyError, ev, line_path
from .harness import (ALL_CHECK_IDS, LEMMA_IDS, THEOREM_IDS, exit_code_for,
                      render_report, run_suite)
from .models import (AnalyticModel, FiniteModel, ModelFormatError,
                     resolve_model, substream)
from .rational import (LiteralError, format_rational, parse_coord_list,
                       parse_coords, parse_rational)
from .regions import segmentation, verify_segmentation
from .saturation import factbase_from_json, factbase_to_json, saturate
from .unreach import unreach_from

EX_USAGE = 64
EX_DATA = 65


class _CliParser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--model", default="builtin:minkowski11",
                   help="builtin:minkowski11, builtin:galilean11, or a finite-model file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--format", choices=("text", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = _CliParser(prog="minkcheck",
                        description="axiom and theorem checkers for 1+1 spacetime models")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-axioms", parents=[], help="run axiom checks")
    _add_common(p)
    p.add_argument("--axiom", action="append", default=None, metavar="ID",
                   help="axiom id (repeatable); default: all")

    p = sub.add_parser("check-theorems", help="run theorem and lemma checks")
    _add_common(p)
    p.add_argument("--theorem", action="append", default=None, metavar="ID",
                   help="theorem or lemma id (repeatable); default: all")

    p = sub.add_parser("chain", help="order a co-path event set into a chain")
    _add_common(p)
    p.add_argument("--events", required=True,
                   help='semicolon-separated "(t,x)" literals (or ids on finite models)')

    p = sub.add_parser("segment", help="segment a path by a chain of events")
    _add_common(p)
    p.add_argument("--events", required=True,
                   help='semicolon-separated "(t,x)" literals (or ids on finite models)')

    p = sub.add_parser("unreach", help="unreachable subset of an analytic path")
    _add_common(p)
    p.add_argument("--path", required=True, metavar="V,X0",
                   help='line parameters "v,x0" with rational components')
    p.add_argument("--event", required=True, metavar="(T,X)",
                   help='source event "(t,x)"')

    p = sub.add_parser("saturate", help="close a betweenness fact base under the order rules")
    _add_common(p)
    p.add_argument("--facts", required=True, metavar="FILE",
                   help="JSON fact-base file")
    return parser


def _parse_events(model, text: str) -> list:
    if isinstance(model, FiniteModel):
        ids = [chunk.strip() for chunk in text.split(";") if chunk.strip()]
        if not ids:
            raise LiteralError("empty event list")
        return [model.event(eid) for eid in ids]
    return [ev(t, x) for (t, x) in parse_coord_list(text)]


def _cmd_check(args, selection: List[str], known: List[str]) -> int:
    for cid in selection:
        if cid not in known:
            raise _UsageError(f"unknown check id {cid!r}")
    model = resolve_model(args.model)
    budget = Budget(samples=args.samples, seed=args.seed)
    report = run_suite(model, selection, budget)
    print(render_report(report, args.format))
    return exit_code_for(report)


def _cmd_chain(args) -> int:
    model = resolve_model(args.model)
    events = _parse_events(model, args.events)
    chain = chain_from_set(model, events)
    if args.format == "json":
        print(json.dumps({"chain": [e.id for e in chain.seq],
                          "path": chain.path.id if chain.path else None},
                         sort_keys=True))
    else:
        print(" ".join(e.id for e in chain.seq))
    return 0


def _cmd_segment(args) -> int:
    model = resolve_model(args.model)
    events = _parse_events(model, args.events)
    chain = chain_from_set(model, events)
    seg = segmentation(model, chain.path, chain)
    rng = substream(args.seed, "cli:segment")
    verdict = verify_segmentation(model, seg, samples=args.samples, rng=rng)
    if args.format == "json":
        print(json.dumps({
            "chain": [e.id for e in chain.seq],
            "segments": [[a.id, b.id] for (a, b) in seg.segments],
            "prolongations": [[seg.p1[0].id, seg.p1[1].id],
                              [seg.p2[0].id, seg.p2[1].id]],
            "verified": verdict.status.value,
            "samples": verdict.samples_used,
        }, sort_keys=True))
    else:
        print(f"chain: {' '.join(e.id for e in chain.seq)}")
        for i, (a, b) in enumerate(seg.segments):
            print(f"segment {i}: ({a.id} .. {b.id})")
        print(f"prolongation beyond {seg.p1[1].id}; prolongation beyond {seg.p2[1].id}")
        print(f"cover check: {verdict.label()} on {verdict.samples_used} events")
    if verdict.is_fail:
        return 1
    return 0 if verdict.is_pass else 2


def _cmd_unreach(args) -> int:
    model = resolve_model(args.model)
    if not isinstance(model, AnalyticModel):
        raise _UsageError("unreach needs an analytic builtin model")
    parts = args.path.split(",")
    if len(parts) != 2:
        raise LiteralError(f'path must be "v,x0", got {args.path!r}')
    path = line_path(parse_rational(parts[0]), parse_rational(parts[1]))
    t, x = parse_coords(args.event)
    u = unreach_from(model, path, ev(t, x))
    lo, hi = u.interval
    convention = "lightlike-separated events count as unreachable (closed interval)"
    if args.format == "json":
        print(json.dumps({
            "path": path.id, "event": u.source.id,
            "interval": [format_rational(lo), format_rational(hi)],
            "convention": convention,
        }, sort_keys=True))
    else:
        print(f"unreachable t-interval on {path.id} from {u.source.id}: "
              f"[{format_rational(lo)}, {format_rational(hi)}]")
        print(f"note: {convention}")
    return 0


def _cmd_saturate(args) -> int:
    try:
        with open(args.facts, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ModelFormatError(f"cannot read fact file {args.facts!r}: {e}") from e
    fb = factbase_from_json(text)
    closed = saturate(fb)
    if args.format == "json":
        print(factbase_to_json(closed))
    else:
        if closed.is_consistent:
            print(f"closure: {len(closed.triples)} facts")
            for t in sorted(closed.triples):
                print(f"  [{t[0]} {t[1]} {t[2]}]")
        else:
            print("contradiction:")
            print(f"  {json.dumps(closed.contradiction, sort_keys=True)}")
    return 0 if closed.is_consistent else 1


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EX_USAGE
    try:
        if args.command == "check-axioms":
            selection = args.axiom if args.axiom else list(AXIOM_IDS)
            return _cmd_check(args, selection, AXIOM_IDS)
        if args.command == "check-theorems":
            selection = args.theorem if args.theorem else THEOREM_IDS + LEMMA_IDS
            return _cmd_check(args, selection, THEOREM_IDS + LEMMA_IDS)
        if args.command == "chain":
            return _cmd_chain(args)
        if args.command == "segment":
            return _cmd_segment(args)
        if args.command == "unreach":
            return _cmd_unreach(args)
        if args.command == "saturate":
            return _cmd_saturate(args)
        raise _UsageError(f"unknown command {args.command!r}")
    except _UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EX_USAGE
    except LiteralError as e:
        print(f"error: {e}", file=sys.stderr)
        return EX_USAGE
    except (ModelFormatError, InputError, ModelInconsistencyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EX_DATA


def main_entry() -> None:
    raise SystemExit(main(sys.argv[1:]))


if __name__ == "__main__":
    main_entry()
