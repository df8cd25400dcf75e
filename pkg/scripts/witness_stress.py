"""Run the constructive witnesses over every element of T*_n(l) (and T_n(n/2))
and count elements where the construction fails to give aba = a.

    python scripts/witness_stress.py --max-n 8
"""

import argparse
from dataclasses import dataclass

from length_semigroups import (SemigroupSpec, Variant, enumerate_semigroup, is_witness,
                               witness_half)
from length_semigroups.witnesses import witness_star


@dataclass
class StressConfig:
    max_n: int = 7
    workers: int = 1


def main(cfg: StressConfig) -> int:
    failures = 0
    for n in range(2, cfg.max_n + 1):
        for l in range(1, n):
            star = enumerate_semigroup(SemigroupSpec(n, l, Variant.REFLECTING), workers=cfg.workers)
            bad = sum(1 for a in star
                      if not (is_witness(a, b := witness_star(a, l)) and b in star))
            line = f"T*_{n}({l}): {len(star)} elements, {bad} failures"
            if 2 * l == n:
                plain = enumerate_semigroup(SemigroupSpec(n, l), workers=cfg.workers)
                bad_half = sum(1 for a in plain
                               if not (is_witness(a, b := witness_half(a, l)) and b in plain))
                line += f"; T_{n}({l}): {len(plain)} elements, {bad_half} failures"
                bad += bad_half
            failures += bad
            print(line)
    print(f"total failures: {failures}")
    return int(failures > 0)


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-n", type=int, default=StressConfig.max_n)
    p.add_argument("--workers", type=int, default=StressConfig.workers)
    args = p.parse_args()
    raise SystemExit(main(StressConfig(args.max_n, args.workers)))
