"""Check registry, suite runner, and report rendering.

Every axiom and every in-scope theorem has a registered check.  Checks draw
from per-check seed substreams, so a suite is deterministic for a fixed
(model, selection, seed, budgets) regardless of execution order.  Reports
render to a stable-keyed JSON document (byte-identical across identical
runs) or a plain text table.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import axioms as axioms_mod
from .axioms import AXIOM_IDS, axiom_holds, axiom_instance_kind, check_axiom
from .chains import (Chain, brute_force_chain, chain_from_set, chain4,
                     chains_equal_up_to_reversal, check_lemma1, check_lemma2,
                     check_lemma3, check_local_order, check_total_order,
                     distinct_prolong_sequence, index_injective_check, prolong)
from .checkrun import decode_instance, encode_instance, run_conditional
from .core import (Budget, Event, InputError, Model, ModelInconsistencyError,
                   Verdict, ev)
from .models import AnalyticModel, FiniteModel, substream
from .regions import segment_count, segmentation, thm3_witness, thm7_witness, thm8_check, verify_segmentation
from .unreach import (thm4_bound, thm13_check, thm14_beyond, thm14_bounds,
                      thm14_event, unreach_from)

THEOREM_IDS = [f"thm{i}" for i in range(1, 12)] + ["thm13", "thm14"]
LEMMA_IDS = ["lemma1", "lemma2", "lemma3"]
ALL_CHECK_IDS = AXIOM_IDS + THEOREM_IDS + LEMMA_IDS


# ---------------------------------------------------------------------------
# theorem conclusions, one instance at a time
# ---------------------------------------------------------------------------

def _holds_thm1(model: Model, inst: dict) -> bool:
    a, b, c = inst["a"], inst["b"], inst["c"]
    forbidden = (model.betw(b, c, a) or model.betw(c, a, b)
                 or model.betw(b, a, c) or model.betw(a, c, b))
    return model.betw(c, b, a) and not forbidden


def _holds_thm2(model: Model, inst: dict) -> bool:
    seq = inst["seq"]
    return (check_local_order(model, seq) == check_total_order(model, seq)
            and index_injective_check(seq))


def _holds_thm3(model: Model, inst: dict) -> bool:
    a, b, c, d, e = (inst[k] for k in "abcde")
    f = thm3_witness(model, a, b, c, d, e)
    if f is None:
        return False
    de = model.path_through(d, e)
    ab = model.path_through(a, b)
    return (model.on_path(de, f) and model.on_path(ab, f)
            and model.betw(a, f, b))


def _holds_thm4(model: Model, inst: dict) -> bool:
    Q, b, Qx, Qy = inst["path"], inst["b"], inst["Qx"], inst["Qy"]
    Qz = thm4_bound(model, Q, b, Qx, Qy)
    if Qz is None:
        return False
    u = unreach_from(model, Q, b)
    return (not u.contains(model, Qz)) and model.betw(Qx, Qy, Qz) and Qx != Qz


def _holds_thm5(model: Model, inst: dict) -> bool:
    Q, a = inst["path"], inst["event"]
    if isinstance(model, FiniteModel):
        others = [e for e in model.path_events(Q) if e != a]
        if not others:
            return False
        return any(not model.on_path(Q, c) and c != a
                   and model.path_through(a, c) is not None
                   for c in model.events())
    second = model.event_on(Q, a.coords[0] + 1)
    if second == a:
        return False
    ta, xa = a.coords
    for delta in (Fraction(1, 2), Fraction(1, 3)):
        if delta != Q.v:
            c = ev(ta + 1, xa + delta)
            break
    return (not model.on_path(Q, c)) and model.connectable(a, c)


def _holds_thm6i(model: Model, inst: dict) -> bool:
    a, b = inst["a"], inst["b"]
    c = prolong(model, a, b)
    return c is not None and model.betw(a, b, c)


def _holds_thm7(model: Model, inst: dict) -> bool:
    a, b, c, d, e = (inst[k] for k in "abcde")
    f = thm7_witness(model, a, b, c, d, e)
    if f is None:
        return False
    return model.betw(a, f, b) and model.betw(d, e, f)


def _holds_thm8(model: Model, inst: dict) -> bool:
    return thm8_check(model, inst["a"], inst["b"], inst["c"],
                      inst["ap"], inst["bp"], inst["cp"]).is_pass


def _holds_thm9(model: Model, inst: dict) -> bool:
    events = inst["events"]
    try:
        chain = chain4(model, *events)
    except (InputError, ModelInconsistencyError):
        return False
    return (chain.underlying == frozenset(events)
            and check_total_order(model, chain.seq))


def _holds_thm10(model: Model, inst: dict) -> bool:
    events = inst["events"]
    try:
        built = chain_from_set(model, events)
        oracle = brute_force_chain(model, events)
    except (InputError, ModelInconsistencyError):
        return False
    return chains_equal_up_to_reversal(built, oracle)


def _holds_thm11(model: Model, inst: dict) -> bool:
    seq = inst["seq"]
    chain = Chain(seq=seq, path=inst["path"])
    seg = segmentation(model, inst["path"], chain)
    if not verify_segmentation(model, seg, samples=60).is_pass:
        return False
    counted = segment_count(model, seg)
    if not counted.is_pass:
        return False
    if isinstance(model, FiniteModel):
        return True  # degenerate counts are recorded, not wrong
    return counted.evidence.get("count") == len(seq) - 1


def _holds_thm13(model: Model, inst: dict) -> bool:
    return thm13_check(model, inst["path"], inst["b"], inst["Qx"],
                       inst["Qy"], inst["Qz"]).is_pass


def _holds_thm14i(model: Model, inst: dict) -> bool:
    Q, a, b = inst["path"], inst["a"], inst["b"]
    got = thm14_bounds(model, Q, a, b)
    if got is None:
        return False
    y, z = got
    ua = unreach_from(model, Q, a)
    ub = unreach_from(model, Q, b)
    return ua.between_all(model, y, z) and ub.between_all(model, y, z)


def _holds_thm14ii(model: Model, inst: dict) -> bool:
    Q, a, b, c, d = inst["path"], inst["a"], inst["b"], inst["c"], inst["d"]
    got = thm14_event(model, Q, a, b, c, d)
    if got is None:
        return False
    e, ae, be = got
    return (model.betw(c, d, e)
            and model.on_path(ae, a) and model.on_path(ae, e)
            and model.on_path(be, b) and model.on_path(be, e))


def _holds_thm14iii(model: Model, inst: dict) -> bool:
    Q, R, x, a, b = inst["Q"], inst["R"], inst["x"], inst["a"], inst["b"]
    got = thm14_beyond(model, Q, R, x, a, b)
    if got is None:
        return False
    e, ae, be = got
    ua = unreach_from(model, Q, a)
    return (ua.between_all(model, x, e)
            and model.on_path(ae, a) and model.on_path(ae, e)
            and model.on_path(be, b) and model.on_path(be, e))


def _holds_lemma1(model: Model, inst: dict) -> bool:
    return check_lemma1(model, inst["a"], inst["b"], inst["c"], inst["d"]).is_pass


def _holds_lemma2(model: Model, inst: dict) -> bool:
    return check_lemma2(model, inst["a"], inst["b"], inst["c"], inst["d"]).is_pass


def _holds_lemma3(model: Model, inst: dict) -> bool:
    return check_lemma3(model, inst["a"], inst["b"], inst["c"], inst["d"]).is_pass


def _run_thm6(model: Model, budget: Budget) -> Verdict:
    verdict = run_conditional(model, "pair-on-path", _holds_thm6i, budget, "check:thm6")
    if not verdict.is_pass or isinstance(model, FiniteModel):
        return verdict
    rng = substream(budget.seed, "check:thm6:infinite")
    path = model.sample_path(rng)
    t1, t2 = model.sample_params_distinct(rng, 2)
    seq = distinct_prolong_sequence(model, model.event_on(path, t1),
                                    model.event_on(path, t2), 100)
    return Verdict.passed(verdict.mode, samples=verdict.samples_used,
                          prolonged_distinct=len(seq) + 2)


_THM14_PARTS = (
    ("i", "thm14-config", _holds_thm14i),
    ("ii", "thm14ii-config", _holds_thm14ii),
    ("iii", "thm14iii-config", _holds_thm14iii),
)


def _run_thm14(model: Model, budget: Budget) -> Verdict:
    part_budget = Budget(samples=max(1, budget.samples // 3), seed=budget.seed,
                         time_limit=budget.time_limit)
    total = 0
    modes = []
    for tag, kind, holds in _THM14_PARTS:
        verdict = run_conditional(model, kind, holds, part_budget, f"check:thm14:{tag}")
        if verdict.is_fail:
            witness = dict(verdict.witness or {})
            witness["part"] = tag
            return Verdict.failed(witness, samples=total + verdict.samples_used)
        if verdict.status.value == "unknown":
            return verdict
        total += verdict.samples_used
        modes.append(verdict.mode)
    mode = "vacuous" if all(m == "vacuous" for m in modes) else \
        ("exhaustive" if isinstance(model, FiniteModel) else "sampled")
    return Verdict.passed(mode, samples=total)


@dataclass(frozen=True)
class CheckSpec:
    """A registered check: id, kind, and how to run (and replay) it."""

    id: str
    kind: str  # "axiom" | "theorem" | "lemma"
    run: Callable[[Model, Budget], Verdict]
    instance_kind: Optional[str] = None
    holds: Optional[Callable[[Model, dict], bool]] = None


def _conditional_spec(check_id: str, kind: str, instance_kind: str, holds,
                      cap: Optional[int] = None) -> CheckSpec:
    def run(model: Model, budget: Budget) -> Verdict:
        if cap is not None and budget.samples > cap:
            budget = Budget(samples=cap, seed=budget.seed,
                            time_limit=budget.time_limit)
        return run_conditional(model, instance_kind, holds, budget, f"check:{check_id}")
    return CheckSpec(id=check_id, kind=kind, run=run,
                     instance_kind=instance_kind, holds=holds)


def _axiom_spec(axiom_id: str) -> CheckSpec:
    def run(model: Model, budget: Budget) -> Verdict:
        return check_axiom(model, axiom_id, budget)
    return CheckSpec(id=axiom_id, kind="axiom", run=run,
                     instance_kind=axiom_instance_kind(axiom_id),
                     holds=(lambda model, inst, _id=axiom_id: axiom_holds(_id, model, inst))
                     if axiom_instance_kind(axiom_id) else None)


def _build_registry() -> Dict[str, CheckSpec]:
    registry: Dict[str, CheckSpec] = {}
    for axiom_id in AXIOM_IDS:
        registry[axiom_id] = _axiom_spec(axiom_id)
    # brute-force oracles and per-instance cover verification make the last
    # two expensive; their instance count is capped to stay inside the
    # per-check wall-time budget
    conditionals = [
        ("thm1", "triple-on-path", _holds_thm1, None),
        ("thm2", "chain-seq(3,10)", _holds_thm2, None),
        ("thm3", "triangle+d+e", _holds_thm3, None),
        ("thm4", "unreach-xy", _holds_thm4, None),
        ("thm5", "path-point", _holds_thm5, None),
        ("thm7", "triangle+d+e", _holds_thm7, None),
        ("thm8", "triangle+sides", _holds_thm8, None),
        ("thm9", "co-path-set(4)", _holds_thm9, None),
        ("thm10", "co-path-set(2,7)", _holds_thm10, 200),
        ("thm11", "chain-seq(2,8)", _holds_thm11, 200),
        ("thm13", "unreach-xyz", _holds_thm13, None),
    ]
    for check_id, instance_kind, holds, cap in conditionals:
        registry[check_id] = _conditional_spec(check_id, "theorem", instance_kind,
                                               holds, cap=cap)
    registry["thm6"] = CheckSpec(id="thm6", kind="theorem", run=_run_thm6,
                                 instance_kind="pair-on-path", holds=_holds_thm6i)
    registry["thm14"] = CheckSpec(id="thm14", kind="theorem", run=_run_thm14)
    for lemma_id, holds in (("lemma1", _holds_lemma1), ("lemma2", _holds_lemma2)):
        registry[lemma_id] = _conditional_spec(lemma_id, "lemma", "lemma12-config", holds)
    registry["lemma3"] = _conditional_spec("lemma3", "lemma", "lemma3-config", _holds_lemma3)
    ordered = {cid: registry[cid] for cid in ALL_CHECK_IDS}
    assert set(ordered) == set(ALL_CHECK_IDS), "check registry is incomplete"
    return ordered


REGISTRY: Dict[str, CheckSpec] = _build_registry()


@dataclass(frozen=True)
class CheckResult:
    id: str
    kind: str
    verdict: Verdict
    elapsed: float


@dataclass(frozen=True)
class Report:
    model_name: str
    model_kind: str
    seed: int
    samples: int
    results: Tuple[CheckResult, ...]

    def counts(self) -> Dict[str, int]:
        out = {"pass": 0, "fail": 0, "unknown": 0}
        for r in self.results:
            out[r.verdict.status.value] += 1
        return out

    def verdict_of(self, check_id: str) -> Verdict:
        for r in self.results:
            if r.id == check_id:
                return r.verdict
        raise InputError(f"check {check_id!r} is not in the report")


def run_check(model: Model, check_id: str, budget: Budget) -> CheckResult:
    if check_id not in REGISTRY:
        raise InputError(f"unknown check id {check_id!r}")
    spec = REGISTRY[check_id]
    start = time.monotonic()
    verdict = spec.run(model, budget)
    return CheckResult(id=check_id, kind=spec.kind, verdict=verdict,
                       elapsed=time.monotonic() - start)


def run_suite(model: Model, selection: Optional[Sequence[str]] = None,
              budget: Budget = Budget()) -> Report:
    """Run the selected checks (all of them by default) against one model."""
    if selection is None:
        chosen = list(ALL_CHECK_IDS)
    else:
        chosen = list(selection)
        for cid in chosen:
            if cid not in REGISTRY:
                raise InputError(f"unknown check id {cid!r}")
    results = tuple(run_check(model, cid, budget) for cid in chosen)
    return Report(model_name=model.name, model_kind=model.kind,
                  seed=budget.seed, samples=budget.samples, results=results)


def replay_fail(model: Model, check_id: str, witness: dict, budget: Budget) -> bool:
    """Re-evaluate a fail witness; True when the failure reproduces.

    Conditional checks decode the witness instance and re-run the conclusion
    alone; custom checks re-run deterministically under the same budget.
    """
    spec = REGISTRY.get(check_id)
    if spec is None:
        raise InputError(f"unknown check id {check_id!r}")
    if spec.holds is not None and witness and "note" not in witness:
        payload = {k: v for k, v in witness.items() if k != "part"}
        try:
            instance = decode_instance(model, payload)
            return not spec.holds(model, instance)
        except (InputError, KeyError):
            pass
    return spec.run(model, budget).is_fail


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def report_to_dict(report: Report) -> dict:
    checks = []
    for r in report.results:
        verdict = r.verdict
        checks.append({
            "id": r.id,
            "kind": r.kind,
            "verdict": verdict.status.value,
            "mode": verdict.mode,
            "witness": verdict.witness,
            "reason": verdict.reason,
            "samples": verdict.samples_used,
            "evidence": verdict.evidence,
        })
    return {
        "model": report.model_name,
        "model_kind": report.model_kind,
        "seed": report.seed,
        "samples": report.samples,
        "checks": checks,
        "summary": report.counts(),
    }


def render_report(report: Report, format: str = "text") -> str:
    """Render a report; the json form is stable-keyed and round-trips."""
    if format == "json":
        return json.dumps(report_to_dict(report), sort_keys=True, separators=(",", ":"))
    lines = [f"model: {report.model_name} ({report.model_kind})  "
             f"seed={report.seed} samples={report.samples}"]
    lines.append(f"{'check':<14}{'verdict':<18}{'n':>6}  {'time':>7}  note")
    for r in report.results:
        v = r.verdict
        note = ""
        if v.is_fail and v.witness:
            note = json.dumps(v.witness, sort_keys=True)
        elif v.reason:
            note = v.reason
        if len(note) > 72:
            note = note[:69] + "..."
        lines.append(f"{r.id:<14}{v.label():<18}{v.samples_used:>6}  "
                     f"{r.elapsed:>6.2f}s  {note}")
    counts = report.counts()
    lines.append(f"summary: {counts['pass']} pass, {counts['fail']} fail, "
                 f"{counts['unknown']} unknown")
    return "\n".join(lines)


def exit_code_for(report: Report) -> int:
    counts = report.counts()
    if counts["fail"]:
        return 1
    if counts["unknown"]:
        return 2
    return 0
