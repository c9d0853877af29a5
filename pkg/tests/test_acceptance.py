"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line."""

import io
import json
import pathlib
import random
import time

import pytest

from biquad.calculus import (
    d_on_forms,
    derive_forced_twists,
    differential,
    kernel_of_d,
    left_multiply_form,
    monomials_up_to,
    partial_closed_form,
    verify_integral_identity,
    volume_data,
)
from biquad.catalog import DEFAULT_ENTRIES, catalog_get
from biquad.cli import run_command
from biquad.formats import parse_presentation_file
from biquad.freealg import LEFTMOST, RIGHTMOST, NormalPoly, apply_endo, normalize_word
from biquad.presentation import check_pbw3_closed, check_pbw_by_overlaps, same_presentation
from biquad.smoothness import NOT_SMOOTH, SMOOTH, UNDETERMINED, analyze, theorem31_conditions, verify_witness

from helpers import random_instances

MALFORMED = sorted((pathlib.Path(__file__).parent / "data" / "malformed").glob("*.alg"))

EXPECTED = {
    **{name: SMOOTH for name in (
        "polynomial-1", "polynomial-2", "polynomial-3", "polynomial-4", "quantum-plane", "weyl-1", "weyl-2",
        "u-n2", "multiplicative-weyl-3", "shift-ops-1-1", "difference-ops-1-1", "cyclic-quantum-weyl-3")},
    **{name: NOT_SMOOTH for name in (
        "q-heisenberg-1", "uq-so3", "aw3", "dispin", "u-sl2", "u-so3", "wq-sl2")},
}

# shared between criteria 3 and 6
RANDOM = random_instances(1600, seed=2024)


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok
    return emit


def test_criterion_1_verdict_table(report):
    t0 = time.perf_counter()
    got = {name: analyze(catalog_get(name)).status for name in EXPECTED}
    elapsed = time.perf_counter() - t0
    wrong = {name: (EXPECTED[name], s) for name, s in got.items() if s != EXPECTED[name]}
    ok = not wrong and elapsed < 10
    detail = f"{len(EXPECTED) - len(wrong)}/{len(EXPECTED)} verdicts match in {elapsed:.1f}s"
    if wrong:
        detail += "; mismatches (expected, got): " + ", ".join(f"{k} {v}" for k, v in sorted(wrong.items()))
    assert report(1, ok, detail), detail


def test_criterion_2_quantum_weyl_gap(report):
    v = analyze(catalog_get("quantum-weyl"))
    named = [c for c in v.failed_conditions if c.label == "b(q-1) - a_i a_j"]
    ok = v.status == UNDETERMINED and bool(named)
    detail = f"status {v.status}; failed: " + ", ".join(f"{c.label} = {c.lhs.render()}" for c in v.failed_conditions)
    assert report(2, ok, detail), detail


def test_criterion_3_pbw_equivalence(report):
    t0 = time.perf_counter()
    disagree = 0
    consistent = 0
    for pres in RANDOM:
        by_overlaps = check_pbw_by_overlaps(pres).consistent
        closed = all(c.holds for c in check_pbw3_closed(pres))
        consistent += by_overlaps
        disagree += by_overlaps != closed
    elapsed = time.perf_counter() - t0
    ok = disagree == 0 and consistent >= 200 and elapsed < 60
    detail = f"{len(RANDOM) - disagree}/{len(RANDOM)} agree ({consistent} consistent) in {elapsed:.1f}s"
    assert report(3, ok, detail), detail


def _calculus_suite(pres, rng):
    tw = derive_forced_twists(pres)
    n = pres.n
    failures = []
    for m in monomials_up_to(n, 4):
        if n > 1 and not d_on_forms(differential(NormalPoly.monomial(m), pres, tw), pres, tw).is_zero():
            failures.append(f"dd {m}")
    for m in monomials_up_to(n, 5):
        da = differential(NormalPoly.monomial(m), pres, tw)
        for k in range(1, n + 1):
            if partial_closed_form(k, m, pres, tw) != da.coeff((k,)):
                failures.append(f"partial {k} {m}")
    if kernel_of_d(pres, tw, 5) != [NormalPoly.constant(1, n)]:
        failures.append("kernel")
    vol = volume_data(pres, tw)
    low = monomials_up_to(n, 3)
    for _ in range(20):
        a = NormalPoly({rng.choice(low): rng.randint(-3, 3) or 1 for _ in range(3)})
        if left_multiply_form(a, vol.omega, pres, tw) != vol.omega.right_multiply(apply_endo(vol.nu_omega, a, pres), pres):
            failures.append("volume")
    for j in range(n + 1):
        if not verify_integral_identity(j, pres, tw):
            failures.append(f"integral {j}")
    return failures


def test_criterion_4_calculus_suite(report):
    t0 = time.perf_counter()
    rng = random.Random(4)
    compliant = []
    bad = {}
    for name in DEFAULT_ENTRIES:
        pres = catalog_get(name)
        if pres.n > 4 or not all(c.holds for c in theorem31_conditions(pres)):
            continue
        compliant.append(name)
        failures = _calculus_suite(pres, rng)
        if failures:
            bad[name] = failures[:3]
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 120
    detail = f"{len(compliant) - len(bad)}/{len(compliant)} compliant entries pass in {elapsed:.1f}s"
    if bad:
        detail += f"; failures {bad}"
    assert report(4, ok, detail), detail


def test_criterion_5_strategy_independence(report):
    rng = random.Random(5)
    entries = [name for name in DEFAULT_ENTRIES if check_pbw_by_overlaps(catalog_get(name)).consistent]
    mismatches = []
    for name in entries:
        pres = catalog_get(name)
        for _ in range(500):
            w = tuple(rng.randint(1, pres.n) for _ in range(rng.randint(0, 6)))
            if normalize_word(w, pres, LEFTMOST) != normalize_word(w, pres, RIGHTMOST):
                mismatches.append((name, w))
    golden = normalize_word((2, 1, 1), catalog_get("weyl-1")).render()
    ok = not mismatches and golden == "x1^2 x2 - 2 x1"
    detail = f"{len(entries)} entries x 500 words, {len(mismatches)} mismatches; weyl x2 x1^2 -> {golden}"
    assert report(5, ok, detail), detail


def test_criterion_6_witness_cross_check(report):
    compliant = 0
    counterexamples = 0
    for pres in RANDOM:
        if not check_pbw_by_overlaps(pres).consistent:
            continue
        if not all(c.holds for c in theorem31_conditions(pres)):
            continue
        compliant += 1
        if not verify_witness(pres, derive_forced_twists(pres)).passed:
            counterexamples += 1
    ok = counterexamples == 0 and compliant > 0
    detail = f"{compliant} condition-compliant instances, {counterexamples} witness failures"
    assert report(6, ok, detail), detail


def _run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def test_criterion_7_cli_contract(report):
    problems = []
    for name in DEFAULT_ENTRIES:
        code, text, _ = _run(["catalog", name])
        if code != 0 or not same_presentation(parse_presentation_file(text), catalog_get(name)):
            problems.append(f"roundtrip {name}")
        runs = []
        for _ in range(2):
            code, out, _ = _run(["analyze", name, "--format", "json"])
            payload = json.loads(out)
            payload.pop("timings")
            runs.append(json.dumps(payload))
        if runs[0] != runs[1]:
            problems.append(f"determinism {name}")
    for path in MALFORMED:
        code, _, err = _run(["analyze", str(path)])
        if code != 2 or "line " not in err:
            problems.append(f"malformed {path.name}")
    ok = not problems and len(MALFORMED) == 20
    detail = f"{len(DEFAULT_ENTRIES)} catalog entries, {len(MALFORMED)} malformed files, problems: {problems or 'none'}"
    assert report(7, ok, detail), detail
