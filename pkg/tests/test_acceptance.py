"""Acceptance criteria 1-9, one test each.

Each test records a one-line verdict in RESULTS; conftest prints them in
the terminal summary, and running this file directly prints them too.
"""

import json
import math
import statistics
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from latticework import (
    GF,
    QQ,
    BilatticedSpace,
    GroupShape,
    LatticeBasis,
    SlopeVector,
    bb_side,
    bl_type,
    borel_unipotent_report,
    compact_mod_center,
    dominance_leq,
    is_basic_for_shape,
    is_good,
    parse_scalar,
    standard_lattice,
    tate_anchor,
)
from latticework import matrix as mx
from latticework.harness import TrialConfig, random_borel, run_suite

RESULTS = {}


def record(number, ok, line):
    RESULTS[number] = (ok, line)
    print(f"{'PASS' if ok else 'FAIL'} criterion {number}: {line}")
    assert ok, line


def summary(report):
    return f"{report.suite}[{report.field}] {report.trials} trials, {len(report.failures)} failures, {report.elapsed:.2f} s"


def test_criterion_1_worked_example():
    P = parse_scalar
    bs = BilatticedSpace(standard_lattice(2), LatticeBasis([[P("1"), P("t^-1")], [P("0"), P("1")]]))

    def compute():
        return bl_type(bs), bb_side(bs, 2).graded_dims()

    mu, graded = compute()
    dims = [graded.get(j, 0) for j in (1, 0, -1)]
    for _ in range(50):
        compute()
    samples = []
    for _ in range(500):
        start = time.perf_counter()
        compute()
        samples.append(time.perf_counter() - start)
    median_ms = statistics.median(samples) * 1e3
    ok = mu == (1, -1) and dims == [1, 0, 1] and median_ms < 1.0
    record(1, ok, f"type {list(mu)}, BB2 graded dims {dims} in degrees [1, 0, -1], median {median_ms:.3f} ms")


def test_criterion_2_cartan_agreement():
    reports = [
        run_suite("cartan_oracle", TrialConfig(trials=1000, dim_max=5, field=field)) for field in (QQ, GF(5))
    ]
    total = sum(r.elapsed for r in reports)
    ok = all(r.passed for r in reports) and total < 30
    record(2, ok, "; ".join(summary(r) for r in reports) + f"; total {total:.2f} s")


def test_criterion_3_bb_rees_roundtrips():
    flags = run_suite("bb_rees_roundtrip", TrialConfig(trials=500))
    minuscule = run_suite("minuscule_bijection", TrialConfig(trials=500))
    total = flags.elapsed + minuscule.elapsed
    ok = flags.passed and minuscule.passed and total < 60
    record(3, ok, f"{summary(flags)}; {summary(minuscule)}; {minuscule.notes[0]}")


def test_criterion_4_type_inversion():
    rep = run_suite("type_inversion", TrialConfig(trials=500))
    record(4, rep.passed, summary(rep))


def test_criterion_5_extension_dominance():
    rep = run_suite("extension_dominance", TrialConfig(trials=1000, dim_max=4))
    ok = rep.passed and rep.elapsed < 120
    record(5, ok, summary(rep) + " (dominance and exterior-power ord chain)")


def test_criterion_6_goodness_equivalence():
    cfg = TrialConfig(trials=1000)
    shape = GroupShape.borel(3)
    disagreements = not_strict = bad = 0
    for index in range(cfg.trials):
        u, mu, b = random_borel(cfg.rng("acceptance_gl3_borel", index), QQ, 3, cfg.window)
        by_type = is_good(b, shape)
        by_conditions = borel_unipotent_report(u, mu)
        if by_type.is_good != by_conditions.verdict or not by_conditions.cross_check_agrees:
            disagreements += 1
        if not by_type.is_good:
            bad += 1
            if by_type.strict_dominance_witness is None or not dominance_leq(by_type.levi_type, by_type.full_type):
                not_strict += 1
    P = parse_scalar
    g = [[P("1"), P("t^-1")], [P("0"), P("1")]]
    unipotent_bad = not is_good(g, GroupShape.borel(2)).is_good
    shifted = mx.mul(mx.diagonal_t(QQ, (1, 0)), g)
    shifted_good = is_good(shifted, GroupShape.borel(2)).is_good
    ok = disagreements == 0 and not_strict == 0 and unipotent_bad and shifted_good and 0 < bad < cfg.trials
    record(
        6,
        ok,
        f"1000 GL3 Borel draws, {bad} not good, {disagreements} disagreements, {not_strict} non-strict; "
        f"1 + t^-1 E12 good={not unipotent_bad}, t^(1,0)(1 + t^-1 E12) good={shifted_good}",
    )


def test_criterion_7_mazur_kottwitz():
    rep = run_suite("mazur_min", TrialConfig())
    levi = is_basic_for_shape((1, 0), GroupShape.borel(2), levi_only=True)
    borel = is_basic_for_shape((1, 0), GroupShape.borel(2))
    gcd_ok = all(
        compact_mod_center(SlopeVector([Fraction(a, n)] * n)) == (math.gcd(a, n) == 1)
        for n in range(1, 7)
        for a in range(-3 * n, 3 * n + 1)
    )
    ok = rep.passed and levi and not borel and gcd_ok
    record(
        7,
        ok,
        f"{summary(rep)}; diag(1,0) basic for Levi={levi}, for Borel={borel}; compact-mod-center matches gcd for n<=6: {gcd_ok}",
    )


def test_criterion_8_tate_anchors():
    rep = run_suite("tate_anchors", TrialConfig())
    start = time.perf_counter()
    duality = all(tate_anchor(-k) == tate_anchor(k).dual() for k in range(-5, 6))
    elapsed = rep.elapsed + time.perf_counter() - start
    ok = rep.passed and duality and elapsed < 1
    record(8, ok, f"{summary(rep)}; duality anchor(-k) = dual(anchor(k)): {duality}; {elapsed * 1e3:.1f} ms")


def test_criterion_9_verify_all_and_replay(tmp_path):
    start = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "latticework", "verify", "--all"], capture_output=True, text=True, check=False
    )
    elapsed = time.perf_counter() - start
    body = json.loads(proc.stdout)
    failures = sum(len(s["failures"]) for s in body["suites"])

    # A failure forced by a broken comparator must replay from its serialized input.
    forced = run_suite("extension_dominance", TrialConfig(trials=3), comparator=lambda e, g: False)
    path = tmp_path / "failures.json"
    path.write_text(json.dumps(forced.to_json()))
    replay = subprocess.run(
        [sys.executable, "-m", "latticework", "verify", "--replay", str(path)],
        capture_output=True,
        text=True,
        check=False,
    )
    replayed = json.loads(replay.stdout)["replayed"]
    reproduced = len(replayed) == 3 and all(
        r["got"] == f["got"] for r, f in zip(replayed, forced.to_json()["failures"])
    )
    ok = proc.returncode == 0 and failures == 0 and elapsed < 600 and reproduced
    record(
        9,
        ok,
        f"verify --all: {len(body['suites'])} suites, {failures} failures, exit {proc.returncode}, {elapsed:.1f} s; "
        f"{len(replayed)} serialized failures replayed identically: {reproduced}",
    )


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
