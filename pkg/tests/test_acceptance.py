"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Everything runs at desk scale with the default seed; expected values are
exact (rational arithmetic, zero tolerance) except where a criterion itself
asks for sampled evidence.
"""

import json
import random
from fractions import Fraction

import pytest

from minkcheck import (Budget, ev, gen_instances, line_path, replay_fail,
                       run_check, run_suite, substream, unreach_from)
from minkcheck.chains import (brute_force_chain, chain_from_set,
                              chains_equal_up_to_reversal,
                              distinct_prolong_sequence)
from minkcheck.cli import main
from minkcheck.core import canonical_triple
from minkcheck.harness import render_report
from minkcheck.models import Galilean1p1, Minkowski1p1, load_finite_model
from minkcheck.regions import (segment_count, segmentation, thm3_witness,
                               thm7_witness, verify_segmentation)
from minkcheck.saturation import factbase, saturate
from minkcheck.unreach import thm4_bound, thm13_check, thm14_beyond, thm14_bounds, thm14_event

F = Fraction


def report(number, ok, text):
    print(f"ACCEPTANCE {number:>2}: {'PASS' if ok else 'FAIL'} - {text}")
    assert ok, f"criterion {number}: {text}"


def cli_json(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_criterion_1_minkowski_axiom_conformance(capsys):
    code, doc = cli_json(capsys, "check-axioms", "--model", "builtin:minkowski11",
                         "--samples", "500", "--seed", "0", "--format", "json")
    rows = {c["id"]: c for c in doc["checks"]}
    sampled_pass = ["I1", "I2", "I3", "InPathEvent", "O1", "O2", "O3", "O4",
                    "O5", "O6", "I5", "I6", "I7"]
    ok = code == 1
    for axiom_id in sampled_pass:
        row = rows[axiom_id]
        ok = ok and row["verdict"] == "pass" and row["mode"] == "sampled"
    i4 = rows["I4"]
    ok = ok and i4["verdict"] == "fail"
    ok = ok and len(i4["witness"]["quadruple"]) == 4
    ok = ok and "transversal" in i4["witness"]["dependent_witness"]
    ok = ok and rows["S"]["verdict"] == "unknown"
    ok = ok and rows["C"]["verdict"] == "unknown"
    report(1, ok, "minkowski11: 13 axioms pass(sampled), I4 fails with dep3 "
                  "witness quadruple, S and C unknown, exit code 1")


def test_criterion_2_galilean_exclusion(capsys):
    code, doc = cli_json(capsys, "check-axioms", "--model", "builtin:galilean11",
                         "--samples", "500", "--seed", "0", "--format", "json")
    rows = {c["id"]: c for c in doc["checks"]}
    ok = all(rows[a]["verdict"] == "pass"
             for a in ["I1", "I2", "I3", "O1", "O2", "O3", "O4", "O5"])
    i5 = rows["I5"]
    ok = ok and i5["verdict"] == "fail"
    gal = Galilean1p1()
    from minkcheck.checkrun import decode_instance
    inst = decode_instance(gal, i5["witness"])
    u = unreach_from(gal, inst["path"], inst["b"])
    ok = ok and u.member_count_le(1)
    report(2, ok, "galilean11: I1-I3 and O1-O5 pass, I5 fails with a "
                  "|Q(b,0)| <= 1 witness")


def test_criterion_3_forbidden_reorderings():
    mink = Minkowski1p1()
    violations = 0
    instances = gen_instances(mink, "triple-on-path", n=1000, seed=0)
    for inst in instances:
        a, b, c = inst["a"], inst["b"], inst["c"]
        good = (mink.betw(c, b, a)
                and not mink.betw(b, c, a) and not mink.betw(c, a, b)
                and not mink.betw(b, a, c) and not mink.betw(a, c, b))
        violations += 0 if good else 1
    ok = len(instances) == 1000 and violations == 0
    report(3, ok, f"1000 sampled betweenness triples: {violations} forbidden "
                  "reorderings (zero tolerated)")


def test_criterion_4_local_total_equivalence():
    mink = Minkowski1p1()
    result = run_check(mink, "thm2", Budget(samples=200, seed=0))
    ok = result.verdict.is_pass and result.verdict.samples_used == 200
    report(4, ok, "200 random chains of length 3-10: adjacent-only ordering "
                  "equals total ordering exactly")


def test_criterion_5_collinearity_witnesses():
    mink = Minkowski1p1()
    bad = 0
    instances = gen_instances(mink, "triangle+d+e", n=100, seed=0)
    for inst in instances:
        a, b, c, d, e = (inst[k] for k in "abcde")
        f = thm7_witness(mink, a, b, c, d, e)
        if f is None:
            bad += 1
            continue
        de = mink.path_through(d, e)
        ab = mink.path_through(a, b)
        if not (mink.on_path(de, f) and mink.on_path(ab, f)
                and mink.betw(a, f, b) and mink.betw(d, e, f)):
            bad += 1
    worked = thm3_witness(mink, ev(0, 0), ev(4, 1), ev(2, F(-1, 2)),
                          ev(0, -2), ev(F(9, 5), F(-9, 20)))
    ok = len(instances) == 100 and bad == 0 and worked.coords == (F(36, 11), F(9, 11))
    report(5, ok, "100 triangle configurations: witness f on both lines with "
                  "both orderings; worked example gives f = (36/11, 9/11)")


def test_criterion_6_chain_oracle_equivalence():
    mink = Minkowski1p1()
    total = 0
    mismatches = 0
    for size in range(2, 8):
        for inst in gen_instances(mink, f"co-path-set({size})", n=20, seed=size):
            total += 1
            built = chain_from_set(mink, inst["events"])
            oracle = brute_force_chain(mink, inst["events"])
            if not chains_equal_up_to_reversal(built, oracle):
                mismatches += 1
    ok = total == 120 and mismatches == 0
    report(6, ok, f"{total} random co-path sets of size 2-7: incremental "
                  "chain equals the brute-force oracle up to reversal")


def test_criterion_7_segmentation():
    mink = Minkowski1p1()
    rng = substream(0, "acceptance:thm11")
    ok = True
    for n in range(2, 9):
        path = mink.sample_path(rng)
        params = mink.sample_params_distinct(rng, n)
        chain = chain_from_set(mink, [mink.event_on(path, t) for t in params])
        seg = segmentation(mink, path, chain)
        verdict = verify_segmentation(mink, seg, samples=1000,
                                      rng=substream(0, f"acceptance:verify:{n}"))
        counted = segment_count(mink, seg)
        ok = ok and verdict.is_pass and verdict.samples_used >= 1000
        ok = ok and counted.evidence["count"] == n - 1
    report(7, ok, "chains of N=2..8: disjoint exact cover over 1000 sampled "
                  "events each, and N-1 distinct segments on the dense model")


def test_criterion_8_unreachable_bound_and_connectedness():
    mink = Minkowski1p1()
    bad = 0
    for inst in gen_instances(mink, "unreach-xy", n=200, seed=0):
        Q, b, Qx, Qy = inst["path"], inst["b"], inst["Qx"], inst["Qy"]
        Qz = thm4_bound(mink, Q, b, Qx, Qy)
        u = unreach_from(mink, Q, b)
        if Qz is None or u.contains(mink, Qz) or not mink.betw(Qx, Qy, Qz) or Qx == Qz:
            bad += 1
    for inst in gen_instances(mink, "unreach-xyz", n=200, seed=0):
        verdict = thm13_check(mink, inst["path"], inst["b"], inst["Qx"],
                              inst["Qy"], inst["Qz"])
        if not verdict.is_pass:
            bad += 1
    gap = load_finite_model(json.dumps({
        "events": ["q1", "q2", "q3", "b"],
        "paths": [["q1", "q2", "q3"], ["b", "q2"]],
        "betweenness": [["q1", "q2", "q3"]]}), "gap")
    result = run_check(gap, "thm13", Budget(samples=10, seed=0))
    fixture_ok = result.verdict.is_fail and replay_fail(
        gap, "thm13", result.verdict.witness, Budget(samples=10, seed=0))
    ok = bad == 0 and fixture_ok
    report(8, ok, "200 bound configs and 200 connectedness configs pass; the "
                  "reachable-gap counter-model fails with a replayable witness")


def test_criterion_9_second_existence_theorem():
    mink = Minkowski1p1()
    rng = substream(0, "acceptance:thm14")
    bad = 0
    for inst in gen_instances(mink, "thm14-config", n=50, seed=0):
        Q, a, b = inst["path"], inst["a"], inst["b"]
        y, z = thm14_bounds(mink, Q, a, b)
        for u in (unreach_from(mink, Q, a), unreach_from(mink, Q, b)):
            if not u.between_all(mink, y, z):
                bad += 1
            for member in u.sample_members(mink, rng, 50):
                if not mink.betw(y, member, z):
                    bad += 1
    for inst in gen_instances(mink, "thm14ii-config", n=50, seed=0):
        got = thm14_event(mink, inst["path"], inst["a"], inst["b"],
                          inst["c"], inst["d"])
        if got is None:
            bad += 1
            continue
        e, ae, be = got
        if not (mink.betw(inst["c"], inst["d"], e)
                and mink.on_path(ae, inst["a"]) and mink.on_path(ae, e)
                and mink.on_path(be, inst["b"]) and mink.on_path(be, e)):
            bad += 1
    for inst in gen_instances(mink, "thm14iii-config", n=50, seed=0):
        got = thm14_beyond(mink, inst["Q"], inst["R"], inst["x"],
                           inst["a"], inst["b"])
        if got is None:
            bad += 1
            continue
        e, ae, be = got
        ua = unreach_from(mink, inst["Q"], inst["a"])
        if not ua.between_all(mink, inst["x"], e):
            bad += 1
            continue
        for member in ua.sample_members(mink, rng, 100):
            if not mink.betw(inst["x"], member, e):
                bad += 1
                break
        if not (mink.on_path(ae, inst["a"]) and mink.on_path(be, inst["b"])):
            bad += 1
    ok = bad == 0
    report(9, ok, "50 configurations per part: bounds and beyond-events "
                  "satisfy set betweenness on sampled members, with paths")


def test_criterion_10_prolongation_evidence():
    mink = Minkowski1p1()
    rng = substream(0, "acceptance:thm6")
    path = mink.sample_path(rng)
    t1, t2 = mink.sample_params_distinct(rng, 2)
    a, b = mink.event_on(path, t1), mink.event_on(path, t2)
    seq = distinct_prolong_sequence(mink, a, b, 100)
    events = {a, b, *seq}
    ok = len(seq) == 100 and len(events) == 102
    report(10, ok, "100 iterated prolongations from a seeded pair produce "
                   "102 pairwise-distinct events")


def test_criterion_11_saturation_engine():
    closed = saturate(factbase([("a", "b", "c"), ("b", "c", "d")]))
    ok = canonical_triple("a", "b", "d") in closed.triples
    ok = ok and canonical_triple("a", "c", "d") in closed.triples
    contradiction = saturate(factbase([("a", "b", "c"), ("b", "a", "c")]))
    ok = ok and contradiction.status == "contradiction"
    rng = random.Random(0)
    for _ in range(50):
        points = [f"e{i}" for i in range(rng.randint(4, 7))]
        rng.shuffle(points)
        facts = set()
        for _ in range(rng.randint(1, 6)):
            i, j, k = sorted(rng.sample(range(len(points)), 3))
            facts.add((points[i], points[j], points[k]))
        once = saturate(factbase(sorted(facts)))
        twice = saturate(factbase(sorted(once.triples)))
        ok = ok and once.triples == twice.triples
    report(11, ok, "closure contains [a b d] and [a c d]; forbidden "
                   "reordering is a contradiction; idempotent on 50 random bases")


def test_criterion_12_finite_model_pipeline(capsys):
    singleton = load_finite_model('{"events": ["a"], "paths": [], "betweenness": []}',
                                  "singleton")
    three = load_finite_model(json.dumps({
        "events": ["a", "b", "c"], "paths": [["a", "b", "c"]],
        "betweenness": [["a", "b", "c"]]}), "three")
    budget = Budget(samples=50, seed=0)
    ok = True
    for model in (singleton, three):
        r1 = run_suite(model, None, budget)
        r2 = run_suite(model, None, budget)
        ok = ok and r1.verdict_of("I4").is_fail
        ok = ok and all(row.verdict.mode in ("exhaustive", "vacuous")
                        for row in r1.results
                        if row.id in ("I1", "I2", "I3", "O1", "O5"))
        ok = ok and render_report(r1, "json") == render_report(r2, "json")
    report(12, ok, "singleton and 3-event models load, check exhaustively, "
                   "report the dimension-axiom failure, and render "
                   "byte-identical reports")
