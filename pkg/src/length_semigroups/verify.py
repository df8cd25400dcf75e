"""Replay every finite claim about T_n(l) and T*_n(l) against exhaustive
enumeration for 2 <= n <= max_n.

Each claim yields one ClaimResult.  A claim whose parameter range does not
meet 2..max_n is reported as "not-applicable" rather than dropped.
"""

from __future__ import annotations

import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from .algebra import closure, is_regular_semigroup, is_witness, search_witness
from .structure import (SemigroupSpec, Variant, class_lemma_violations,
                        enumerate_semigroup, pair_lemma_violations,
                        preserves_length, reflects_length)
from .transform import CapacityError, compose, format_text, make
from .witnesses import (counterexample, has_counterexample, strictness_witness,
                        witness_half, witness_star)

log = logging.getLogger(__name__)

DEFAULT_MAX_N = 7
LARGE_MAX_N = 8

# generating sets for T_n(1), n = 2..5
GENERATORS = {
    2: [[2, 1]],
    3: [[2, 1, 2], [3, 2, 1]],
    4: [[2, 3, 2, 1], [3, 4, 3, 2], [4, 3, 2, 1]],
    5: [[2, 3, 4, 5, 4], [3, 2, 1, 2, 3], [4, 3, 2, 1, 2], [5, 4, 3, 2, 1]],
}

# regular in T_n(l) (here a = aaa) but outside T*_n(l)
NON_STAR_REGULAR = [
    (5, 3, [1, 1, 3, 4, 4]),
    (6, 2, [1, 1, 3, 3, 5, 5]),
]

LEMMA_KEYS = "abcdefgh"


def predicted_regular(n: int, l: int) -> bool:
    if l == n - 1:
        return True
    if l == 1:
        return n <= 5
    return n % 2 == 0 and 2 * l == n


@dataclass
class ClaimResult:
    claim: str
    statement: str
    cells: list[str] = field(default_factory=list)
    evidence: dict = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def status(self) -> str:
        if not self.cells:
            return "not-applicable"
        return "fail" if self.failures else "pass"

    def to_dict(self, timings: bool = False) -> dict:
        out = {
            "claim": self.claim,
            "statement": self.statement,
            "status": self.status,
            "cells": self.cells,
            "evidence": self.evidence,
            "failures": self.failures,
        }
        if timings:
            out["elapsed"] = round(self.elapsed, 3)
        return out


def _cells(max_n, cond=lambda n, l: True):
    return [(n, l) for n in range(2, max_n + 1) for l in range(1, n) if cond(n, l)]


def _key(n, l):
    return f"{n},{l}"


def _plain(n, l):
    return enumerate_semigroup(SemigroupSpec(n, l, Variant.PRESERVING))


def _star(n, l):
    return enumerate_semigroup(SemigroupSpec(n, l, Variant.REFLECTING))


# -- claims -----------------------------------------------------------------------

def claim_never_full(max_n):
    res = ClaimResult("never-full", "T_n(l) is a proper subsemigroup of T_n")
    for n, l in _cells(max_n):
        const = make(n, [1] * n)
        size = len(_plain(n, l))
        res.cells.append(_key(n, l))
        res.evidence[_key(n, l)] = {"size": size, "full_size": n ** n}
        if preserves_length(const, l) or size >= n ** n:
            res.failures.append(f"n={n}, l={l}: constant map accepted or T_n(l) = T_n")
    return [res]


def claim_equality_locus(max_n):
    res = ClaimResult("equality-locus",
                      "T_n(l) = T*_n(l) exactly when n = 2 or (n, l) = (3, 1); otherwise "
                      "a constructed element separates them")
    for n, l in _cells(max_n):
        plain, star = _plain(n, l), _star(n, l)
        equal = plain == star
        expect = n == 2 or (n, l) == (3, 1)
        ev = {"plain": len(plain), "star": len(star), "equal": equal}
        ok = equal == expect and star.issubset(plain)
        if not expect:
            w = strictness_witness(n, l)
            ev["separator"] = format_text(w)
            ok = ok and w in plain and w not in star
        res.cells.append(_key(n, l))
        res.evidence[_key(n, l)] = ev
        if not ok:
            res.failures.append(f"n={n}, l={l}: {ev}")
    return [res]


def claim_generators(max_n):
    res = ClaimResult("generators",
                      "the listed generating sets give T_n(1) for n = 2..5, each regular")
    for n, gens in GENERATORS.items():
        if n > max_n:
            continue
        sub = closure(make(n, g) for g in gens)
        report = is_regular_semigroup(sub)
        same = sub == _plain(n, 1)
        res.cells.append(_key(n, 1))
        res.evidence[_key(n, 1)] = {"generators": [" ".join(map(str, g)) for g in gens],
                                    "closure_size": len(sub), "equals_T_n(1)": same,
                                    "regular": report.regular}
        if not (same and report.regular):
            res.failures.append(f"n={n}: closure size {len(sub)}, regular={report.regular}")
    return [res]


def _dichotomy(max_n, claim, statement, cond):
    res = ClaimResult(claim, statement)
    for n, l in _cells(max_n, cond):
        report = is_regular_semigroup(_plain(n, l), SemigroupSpec(n, l).name)
        expect = predicted_regular(n, l)
        ev = {"size": report.size, "regular": report.regular, "predicted": expect,
              "irregular_count": len(report.irregular)}
        if report.irregular:
            ev["first_irregular"] = format_text(report.irregular[0])
        if has_counterexample(n, l):
            c = counterexample(n, l)
            ev["counterexample"] = format_text(c)
            ev["counterexample_irregular"] = c in report.irregular
        res.cells.append(_key(n, l))
        res.evidence[_key(n, l)] = ev
        if report.regular != expect:
            res.failures.append(f"n={n}, l={l}: regular={report.regular}, predicted {expect}")
    return res


def claim_dichotomy(max_n):
    return [
        _dichotomy(max_n, "regular-l1", "T_n(1) is regular iff n <= 5",
                   lambda n, l: l == 1),
        _dichotomy(max_n, "regular-mid",
                   "for 2 <= l <= n-2, T_n(l) is regular iff n is even and l = n/2",
                   lambda n, l: 2 <= l <= n - 2),
        _dichotomy(max_n, "regular-top", "T_n(n-1) is regular", lambda n, l: l == n - 1),
    ]


def claim_half_witness(max_n):
    res = ClaimResult("half-witness",
                      "every element of T_n(n/2) gets a constructed witness in T_n(n/2)")
    for n, l in _cells(max_n, lambda n, l: 2 * l == n):
        plain = _plain(n, l)
        bad = [a for a in plain if not _ok_witness(a, witness_half(a, l), plain)]
        res.cells.append(_key(n, l))
        res.evidence[_key(n, l)] = {"size": len(plain), "validated": len(plain) - len(bad)}
        res.failures += [f"n={n}, l={l}: {a}" for a in bad[:5]]
    return [res]


def _ok_witness(a, b, carrier):
    return b in carrier and is_witness(a, b)


def _counterexamples(max_n, claim, statement, cond):
    res = ClaimResult(claim, statement)
    for n, l in _cells(max_n, cond):
        plain = _plain(n, l)
        c = counterexample(n, l)
        found = search_witness(c, plain)
        member = c in plain
        exhausted = found.witness is None and found.excluded == len(plain)
        res.cells.append(_key(n, l))
        res.evidence[_key(n, l)] = {"element": format_text(c), "member": member,
                                    "carrier": len(plain), "excluded": found.excluded,
                                    "search_nodes": found.nodes}
        if not (member and exhausted):
            res.failures.append(f"n={n}, l={l}: {c} member={member}, witness={found.witness}")
    return res


def claim_counterexamples(max_n):
    return [
        _counterexamples(max_n, "nonregular-l1",
                         "for n >= 6 the constructed element of T_n(1) is not regular",
                         lambda n, l: l == 1 and n >= 6),
        _counterexamples(max_n, "nonregular-odd",
                         "for odd n >= 5 and 2 <= l <= n-2 the constructed element is not regular",
                         lambda n, l: n % 2 == 1 and n >= 5 and 2 <= l <= n - 2),
        _counterexamples(max_n, "nonregular-even",
                         "for even n >= 6, l != n/2, 2 <= l <= n-2 the constructed element "
                         "is not regular",
                         lambda n, l: n % 2 == 0 and n >= 6 and 2 <= l <= n - 2 and 2 * l != n),
    ]


def _star_regular(max_n, claim, statement, cond):
    res = ClaimResult(claim, statement)
    for n, l in _cells(max_n, cond):
        star = _star(n, l)
        report = is_regular_semigroup(star, SemigroupSpec(n, l, Variant.REFLECTING).name)
        bad = [a for a in star if not _ok_witness(a, witness_star(a, l), star)]
        res.cells.append(_key(n, l))
        res.evidence[_key(n, l)] = {"size": len(star), "constructive": len(star) - len(bad),
                                    "oracle_regular": report.regular}
        if bad or not report.regular:
            res.failures.append(f"n={n}, l={l}: {len(bad)} constructive failures, "
                                f"oracle regular={report.regular}")
    return res


def claim_star_regular(max_n):
    return [
        _star_regular(max_n, "star-regular-large",
                      "for 2l > n, T*_n(l) is regular with the pair-inverting witness",
                      lambda n, l: 2 * l > n),
        _star_regular(max_n, "star-regular-small",
                      "for 2l <= n, T*_n(l) is regular with the class-based witness",
                      lambda n, l: 2 * l <= n),
    ]


LEMMA_STATEMENTS = {
    "a": "x < y and xa = ya imply y = x + 2l",
    "b": "each class A_i lands inside a single class",
    "c": "distinct classes have disjoint images",
    "d": "a class with m_i >= 3 maps to a step-l progression, increasing or decreasing",
    "e": "a class with m_i >= 3 maps injectively",
    "f": "classes of multiplicities m_i < m_j (m_j >= 3) do not meet under a",
    "g": "classes of each multiplicity >= 3 are permuted among themselves",
    "h": "missed points are ends of multiplicity-2 classes whose middle point is hit",
}


def claim_star_lemmas(max_n):
    results = {k: ClaimResult(f"star-lemma-{k}", f"for 2l <= n, every element of T*_n(l): "
                              f"{LEMMA_STATEMENTS[k]}") for k in LEMMA_KEYS}
    pair = ClaimResult("star-pair-structure",
                       "for 2l >= n, every element of T*_n(l) maps the middle into itself and "
                       "partner pairs onto disjoint partner pairs")
    for n, l in _cells(max_n):
        star = _star(n, l)
        if 2 * l <= n:
            counts = dict.fromkeys(LEMMA_KEYS, 0)
            for a in star:
                for k, msgs in class_lemma_violations(a, l).items():
                    counts[k] += 1
                    if counts[k] <= 3:
                        results[k].failures.append(f"n={n}, l={l}, {a}: {msgs[0]}")
            for k in LEMMA_KEYS:
                results[k].cells.append(_key(n, l))
                results[k].evidence[_key(n, l)] = {"elements": len(star), "violations": counts[k]}
        if 2 * l >= n:
            bad = 0
            for a in star:
                msgs = pair_lemma_violations(a, l)
                if msgs:
                    bad += 1
                    if bad <= 3:
                        pair.failures.append(f"n={n}, l={l}, {a}: {msgs[0]}")
            pair.cells.append(_key(n, l))
            pair.evidence[_key(n, l)] = {"elements": len(star), "violations": bad}
    return [*results.values(), pair]


def claim_not_largest(max_n):
    res = ClaimResult("not-largest",
                      "some regular elements of T_n(l) lie outside T*_n(l)")
    for n, l, images in NON_STAR_REGULAR:
        if n > max_n:
            continue
        a = make(n, images)
        cube = compose(compose(a, a), a)
        member = preserves_length(a, l)
        outside = not reflects_length(a, l)
        res.cells.append(_key(n, l))
        res.evidence[_key(n, l)] = {"element": format_text(a), "member": member,
                                    "a=aaa": cube == a, "outside_star": outside}
        if not (member and cube == a and outside):
            res.failures.append(f"n={n}, l={l}: {a}")
    return [res]


CLAIM_JOBS: list[Callable[[int], list[ClaimResult]]] = [
    claim_never_full,
    claim_equality_locus,
    claim_generators,
    claim_dichotomy,
    claim_half_witness,
    claim_counterexamples,
    claim_star_regular,
    claim_star_lemmas,
    claim_not_largest,
]

CLAIM_IDS = sorted([
    "never-full", "equality-locus", "generators", "regular-l1", "regular-mid",
    "regular-top", "half-witness", "nonregular-l1", "nonregular-odd", "nonregular-even",
    "star-regular-large", "star-regular-small", "star-pair-structure", "not-largest",
    *(f"star-lemma-{k}" for k in LEMMA_KEYS),
])


def _run_job(args):
    job, max_n = args
    t0 = time.perf_counter()
    out = job(max_n)
    dt = time.perf_counter() - t0
    for r in out:
        r.elapsed = dt / len(out)
    return out


def verify_all(max_n: int = DEFAULT_MAX_N, workers: int = 1,
               allow_large: bool = False) -> list[ClaimResult]:
    if max_n < 2:
        raise ValueError(f"max_n must be >= 2, got {max_n}")
    if max_n > LARGE_MAX_N:
        raise CapacityError(f"verify supports max_n <= {LARGE_MAX_N}")
    if max_n > DEFAULT_MAX_N:
        if not allow_large:
            raise CapacityError(f"max_n={max_n} needs the large flag (runs for minutes, "
                                f"several GB of memory)")
        log.warning("max_n=%d: T_8(7) alone has 524288 elements; expect a long run", max_n)
    jobs = [(job, max_n) for job in CLAIM_JOBS]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_job, jobs))
    else:
        parts = [_run_job(j) for j in jobs]
    results = [r for part in parts for r in part]
    return sorted(results, key=lambda r: r.claim)


def all_pass(results: list[ClaimResult]) -> bool:
    return all(r.status != "fail" for r in results)


def report_json(results: list[ClaimResult], timings: bool = False) -> str:
    return json.dumps([r.to_dict(timings) for r in results], indent=2, sort_keys=True)


def report_table(results: list[ClaimResult], evidence: bool = False) -> str:
    width = max(len(r.claim) for r in results)
    lines = [f"{'claim':<{width}}  {'status':<14}  {'cells':>5}  statement"]
    for r in results:
        lines.append(f"{r.claim:<{width}}  {r.status:<14}  {len(r.cells):>5}  {r.statement}")
        lines.extend(f"{'':<{width}}    ! {f}" for f in r.failures)
        if evidence:
            for cell, ev in r.evidence.items():
                items = ", ".join(f"{k}={v}" for k, v in sorted(ev.items()))
                lines.append(f"{'':<{width}}    {cell}: {items}")
    return "\n".join(lines)
