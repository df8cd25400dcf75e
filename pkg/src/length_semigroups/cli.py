"""Command-line driver.

    python -m length_semigroups <command> [options]

Exit status: 0 on success, 1 when ``verify`` finds a failing claim, 2 for
usage errors or rejected input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import verify as verify_mod
from .algebra import closure, is_regular_semigroup, is_witness, search_witness
from .structure import (SemigroupSpec, Variant, decompose, enumerate_semigroup,
                        length_violation, reflection_violation)
from .transform import format_text, parse_text, read_elements, write_elements
from .witnesses import counterexample, witness_half, witness_star


@dataclass
class CliConfig:
    command: str
    n: int | None = None
    l: int | None = None
    variant: str = "plain"
    element: str | None = None
    gens: str | None = None
    out: str | None = None
    format: str = "text"
    cache: str | None = None
    workers: int = 1
    max_n: int = verify_mod.DEFAULT_MAX_N
    large: bool = False
    report: str | None = None
    timings: bool = False

    def spec(self) -> SemigroupSpec:
        return SemigroupSpec(self.n, self.l, Variant.parse(self.variant))

    def parse_element(self):
        return parse_text(self.element, n=self.n)


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="length-semigroups",
                                     description="Transformations preserving a length l.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, n=True, l=True, variants=None, l_required=True):
        if n:
            p.add_argument("--n", type=int, required=True)
        if l:
            p.add_argument("--l", type=int, required=l_required)
        if variants:
            p.add_argument("--variant", choices=variants, default="plain")
        p.add_argument("--format", choices=["text", "json"], default="text")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--cache", metavar="DIR")
        return p

    p = common(sub.add_parser("enumerate", help="list the elements of a semigroup"),
               variants=["plain", "star", "full"])
    p.add_argument("--out", metavar="FILE")

    p = common(sub.add_parser("member", help="membership test"), variants=["plain", "star"])
    p.add_argument("--element", required=True)

    p = common(sub.add_parser("regular", help="regularity of an element or the semigroup"),
               variants=["plain", "star"])
    p.add_argument("--element")

    p = common(sub.add_parser("witness", help="constructed b with aba = a"),
               variants=["plain", "star"])
    p.add_argument("--element", required=True)

    common(sub.add_parser("counterexample", help="non-regular element of T_n(l)"),
           l_required=False)

    p = common(sub.add_parser("closure", help="subsemigroup generated by a file of maps"), l=False)
    p.add_argument("--gens", required=True, metavar="FILE")

    common(sub.add_parser("decompose", help="pairs/middle or residue classes of X_n"))

    p = common(sub.add_parser("verify", help="replay all claims up to max-n"), n=False, l=False)
    p.add_argument("--max-n", type=int, default=verify_mod.DEFAULT_MAX_N)
    p.add_argument("--large", action="store_true",
                   help=f"allow max-n = {verify_mod.LARGE_MAX_N} (slow, memory hungry)")
    p.add_argument("--report", metavar="FILE", help="write the JSON report here")
    p.add_argument("--timings", action="store_true", help="include elapsed times in JSON")
    return parser


# -- commands: each returns (payload, text, exit code) --------------------------------

def _violation(a, pair):
    x, y = pair
    return {"points": [x, y], "images": [a(x), a(y)]}


def cmd_enumerate(cfg):
    spec = cfg.spec()
    elems = enumerate_semigroup(spec, workers=cfg.workers, cache_dir=cfg.cache)
    if cfg.out:
        write_elements(cfg.out, elems, header=[spec.name, f"size {len(elems)}"])
    payload = {"spec": spec.name, "size": len(elems)}
    lines = []
    if not cfg.out:
        payload["elements"] = [format_text(a) for a in elems]
        lines += payload["elements"]
    else:
        payload["written"] = cfg.out
        lines.append(f"written: {cfg.out}")
    lines.append(f"size: {len(elems)}")
    return payload, "\n".join(lines), 0


def cmd_member(cfg):
    spec = cfg.spec()
    a = cfg.parse_element()
    pair = length_violation(a, spec.l)
    if pair is None and spec.variant is Variant.REFLECTING:
        pair = reflection_violation(a, spec.l)
    payload = {"spec": spec.name, "element": format_text(a), "member": pair is None}
    text = "true" if pair is None else "false"
    if pair is not None:
        v = payload["violated_pair"] = _violation(a, pair)
        (x, y), (u, w) = v["points"], v["images"]
        text += f"\nviolated pair: {x}a={u}, {y}a={w}"
    return payload, text, 0


def cmd_regular(cfg):
    spec = cfg.spec()
    elems = enumerate_semigroup(spec, workers=cfg.workers, cache_dir=cfg.cache)
    if cfg.element:
        a = cfg.parse_element()
        if a not in elems:
            raise UsageError(f"{a} is not in {spec.name}")
        found = search_witness(a, elems, workers=cfg.workers)
        payload = {"spec": spec.name, "element": format_text(a),
                   "regular": found.witness is not None,
                   "witness": None if found.witness is None else format_text(found.witness),
                   "stats": {"search_nodes": found.nodes, "excluded": found.excluded,
                             "size": len(elems)}}
        text = f"{'regular' if found.witness else 'not regular'} in {spec.name}"
        if found.witness:
            text += f"\nwitness: {found.witness}"
        else:
            text += f"\nall {found.excluded} of {len(elems)} candidates excluded"
        return payload, text, 0
    report = is_regular_semigroup(elems, spec.name, workers=cfg.workers)
    payload = report.to_dict()
    lines = [f"{spec.name}: size {report.size}, "
             f"{'regular' if report.regular else 'not regular'}"]
    if report.irregular:
        lines.append(f"irregular elements ({len(report.irregular)}):")
        lines += [f"  {a}" for a in report.irregular]
    if report.witnesses:
        lines.append(f"witnesses ({len(report.witnesses)}):")
        lines += [f"  {a}  ->  {b}" for a, b in sorted(report.witnesses.items())]
    lines.append("stats: " + ", ".join(f"{k}={v}" for k, v in report.stats.items()))
    return payload, "\n".join(lines), 0


def cmd_witness(cfg):
    spec = cfg.spec()
    a = cfg.parse_element()
    if not spec.contains(a):
        raise UsageError(f"{a} is not in {spec.name}")
    trace: list[str] = []
    n, l = spec.n, spec.l
    if spec.variant is Variant.REFLECTING:
        beta = witness_star(a, l, trace)
        method = "constructive"
    elif 2 * l == n:
        beta = witness_half(a, l, trace)
        method = "constructive"
    else:
        trace.append(f"no construction for {spec.name}; exhaustive search")
        beta = search_witness(a, enumerate_semigroup(spec, cache_dir=cfg.cache),
                              workers=cfg.workers).witness
        method = "oracle-found" if beta is not None else "none"
    payload = {"spec": spec.name, "element": format_text(a), "method": method,
               "witness": None if beta is None else format_text(beta),
               "verified": beta is not None and is_witness(a, beta), "trace": trace}
    lines = [f"method: {method}",
             f"witness: {beta if beta is not None else 'none (element is not regular)'}"]
    if beta is not None:
        lines.append(f"verified aba = a: {str(payload['verified']).lower()}")
    lines += [f"  {t}" for t in trace]
    return payload, "\n".join(lines), 0


def cmd_counterexample(cfg):
    l = cfg.l if cfg.l is not None else 1
    SemigroupSpec(cfg.n, l)
    trace: list[str] = []
    c = counterexample(cfg.n, l, trace)
    payload = {"spec": SemigroupSpec(cfg.n, l).name, "element": format_text(c), "trace": trace}
    return payload, "\n".join([format_text(c)] + [f"  {t}" for t in trace]), 0


def cmd_closure(cfg):
    gens = read_elements(cfg.gens)
    if not gens:
        raise UsageError(f"{cfg.gens} contains no generators")
    if any(g.n != cfg.n for g in gens):
        raise UsageError(f"generators in {cfg.gens} are not all on X_{cfg.n}")
    sub = closure(gens)
    payload = {"size": len(sub), "elements": [format_text(a) for a in sub]}
    return payload, "\n".join(payload["elements"] + [f"size: {len(sub)}"]), 0


def cmd_decompose(cfg):
    SemigroupSpec(cfg.n, cfg.l)
    dec = decompose(cfg.n, cfg.l)
    if dec.regime == "pairs":
        payload = {"regime": "pairs", "pairs": [list(p) for p in dec.pairs],
                   "middle": list(dec.middle)}
        lines = ["regime: pairs",
                 "pairs: " + " ".join(f"{{{x},{y}}}" for x, y in dec.pairs),
                 "middle: " + (" ".join(map(str, dec.middle)) or "(empty)")]
    else:
        payload = {"regime": "classes", "classes": [list(c) for c in dec.classes],
                   "multiplicities": list(dec.multiplicities)}
        lines = ["regime: classes"] + [
            f"A_{i}: {' '.join(map(str, c))}  (m_{i}={m})"
            for i, (c, m) in enumerate(zip(dec.classes, dec.multiplicities), 1)]
    return payload, "\n".join(lines), 0


def cmd_verify(cfg):
    results = verify_mod.verify_all(cfg.max_n, workers=cfg.workers, allow_large=cfg.large)
    doc = verify_mod.report_json(results, timings=cfg.timings)
    if cfg.report:
        Path(cfg.report).write_text(doc + "\n")
    code = 0 if verify_mod.all_pass(results) else 1
    return json.loads(doc), verify_mod.report_table(results, evidence=True), code


COMMANDS = {
    "enumerate": cmd_enumerate,
    "member": cmd_member,
    "regular": cmd_regular,
    "witness": cmd_witness,
    "counterexample": cmd_counterexample,
    "closure": cmd_closure,
    "decompose": cmd_decompose,
    "verify": cmd_verify,
}


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = CliConfig(**{k: v for k, v in vars(ns).items() if k in CliConfig.__dataclass_fields__})
    if cfg.workers < 1:
        print("error: --workers must be >= 1", file=stderr)
        return 2
    try:
        payload, text, code = COMMANDS[cfg.command](cfg)
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    if cfg.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True), file=stdout)
    else:
        print(text, file=stdout)
    return code


def main() -> None:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    sys.exit(run())
