"""The nine acceptance criteria, one test each.

Every test records a PASS/FAIL line (printed immediately and again in the
terminal summary) before asserting.
"""

import json
import subprocess
import sys
import time

import pytest

from conftest import ACCEPTANCE
from length_semigroups import (SemigroupSpec, Variant, closure, enumerate_naive,
                               enumerate_semigroup, is_regular_semigroup, is_witness, make,
                               predicted_regular, search_witness, strictness_witness)
from length_semigroups.structure import class_lemma_violations, pair_lemma_violations
from length_semigroups.verify import GENERATORS
from length_semigroups.witnesses import (counterexample, has_counterexample,
                                         witness_star_large, witness_star_small)

P, R = Variant.PRESERVING, Variant.REFLECTING
CELLS_7 = [(n, l) for n in range(2, 8) for l in range(1, n)]


def record(k, ok, detail):
    ACCEPTANCE[k] = (ok, detail)
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def test_criterion_1_dichotomy():
    t0 = time.perf_counter()
    mismatches = []
    for n, l in CELLS_7:
        report = is_regular_semigroup(enumerate_semigroup(SemigroupSpec(n, l, P)))
        if report.regular != predicted_regular(n, l):
            mismatches.append((n, l))
    dt = time.perf_counter() - t0
    record(1, not mismatches and dt < 120,
           f"{len(CELLS_7)} cells, {len(mismatches)} mismatches {mismatches}, {dt:.1f}s")


def test_criterion_2_star_constructive():
    total = failures = 0
    for n, l in CELLS_7:
        S = enumerate_semigroup(SemigroupSpec(n, l, R))
        build = witness_star_large if 2 * l > n else witness_star_small
        for a in S:
            total += 1
            try:
                b = build(a, l)
            except ValueError:
                failures += 1
                continue
            if b not in S or not is_witness(a, b):
                failures += 1
    record(2, failures == 0, f"{total} elements of T*_n(l), n <= 7, {failures} without a "
                             f"constructive witness")


def test_criterion_3_small_listings():
    t2 = {a.images for a in enumerate_semigroup(SemigroupSpec(2, 1, P))}
    t3 = {a.images for a in enumerate_semigroup(SemigroupSpec(3, 1, P))}
    listed = {(1, 2, 3), (3, 2, 1), (2, 1, 2), (2, 3, 2), (1, 2, 1), (3, 2, 3)}
    ok = t2 == {(1, 2), (2, 1)} and t3 == listed
    record(3, ok, f"|T_2(1)| = {len(t2)}, |T_3(1)| = {len(t3)}, exact set equality {ok}")


def test_criterion_4_generators():
    details, ok = [], True
    for n, gens in sorted(GENERATORS.items()):
        sub = closure(make(n, g) for g in gens)
        same = sub == enumerate_semigroup(SemigroupSpec(n, 1, P))
        regular = is_regular_semigroup(sub).regular
        ok = ok and same and regular
        details.append(f"n={n}: {len(sub)} {'=' if same else '!='} T_n(1), regular={regular}")
    record(4, ok, "; ".join(details))


def test_criterion_5_equality_locus():
    equal_at, bad = [], []
    for n, l in CELLS_7:
        plain = enumerate_semigroup(SemigroupSpec(n, l, P))
        star = enumerate_semigroup(SemigroupSpec(n, l, R))
        if plain == star:
            equal_at.append((n, l))
        else:
            w = strictness_witness(n, l)
            if not (w in plain and w not in star):
                bad.append((n, l))
    ok = equal_at == [(2, 1), (3, 1)] and not bad
    record(5, ok, f"equal at {equal_at}; strictness witness failures {bad}")


def test_criterion_6_counterexamples(request):
    max_n = 8 if request.config.getoption("--large") else 7
    cells = [(n, l) for n in range(2, max_n + 1) for l in range(1, n) if has_counterexample(n, l)]
    bad = []
    for n, l in cells:
        S = enumerate_semigroup(SemigroupSpec(n, l, P))
        c = counterexample(n, l)
        res = search_witness(c, S)
        if not (c in S and res.witness is None and res.excluded == len(S)):
            bad.append((n, l))
    record(6, not bad, f"{len(cells)} cells up to n={max_n}, each counterexample a member with "
                       f"all carrier elements excluded; failures {bad}")


def test_criterion_7_lemma_suite():
    checked = violations = 0
    for n, l in CELLS_7:
        for a in enumerate_semigroup(SemigroupSpec(n, l, R)):
            if 2 * l <= n:
                checked += 1
                violations += len(class_lemma_violations(a, l))
            if 2 * l >= n:
                checked += 1
                violations += bool(pair_lemma_violations(a, l))
    record(7, violations == 0, f"{checked} element checks, {violations} violations")


def test_criterion_8_oracle_equivalence():
    cells = [(n, l, v) for n in range(2, 7) for l in range(1, n) for v in (P, R)]
    bad = [(n, l, v.value) for n, l, v in cells
           if enumerate_semigroup(SemigroupSpec(n, l, v)) != enumerate_naive(SemigroupSpec(n, l, v))]
    record(8, not bad, f"{len(cells)} (n, l, variant) cells up to n=6, mismatches {bad}")


def test_criterion_9_determinism(tmp_path):
    outputs = []
    for workers in ("1", "1", "4"):
        proc = subprocess.run(
            [sys.executable, "-m", "length_semigroups", "verify", "--max-n", "7",
             "--format", "json", "--workers", workers],
            capture_output=True, check=False)
        outputs.append((proc.returncode, proc.stdout))
    codes = [c for c, _ in outputs]
    same = len({out for _, out in outputs}) == 1
    statuses = {r["status"] for r in json.loads(outputs[0][1])}
    ok = same and codes == [0, 0, 0]
    record(9, ok, f"3 runs (workers 1, 1, 4): byte-identical={same}, exit codes {codes}, "
                  f"statuses {sorted(statuses)}, {len(outputs[0][1])} bytes")
