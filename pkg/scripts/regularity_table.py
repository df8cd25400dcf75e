"""Print the regularity table of T_n(l) and T*_n(l) for 2 <= n <= max_n.

    python scripts/regularity_table.py --max-n 7
"""

import argparse
import time
from dataclasses import dataclass

from length_semigroups import (SemigroupSpec, Variant, enumerate_semigroup,
                               is_regular_semigroup, predicted_regular)


@dataclass
class TableConfig:
    max_n: int = 7
    workers: int = 1


def main(cfg: TableConfig) -> int:
    print(f"{'n':>2} {'l':>2} {'|T_n(l)|':>9} {'regular':>8} {'predicted':>9} "
          f"{'|T*_n(l)|':>9} {'star reg':>8} {'secs':>6}")
    mismatches = 0
    for n in range(2, cfg.max_n + 1):
        for l in range(1, n):
            t0 = time.perf_counter()
            plain = enumerate_semigroup(SemigroupSpec(n, l, Variant.PRESERVING), workers=cfg.workers)
            star = enumerate_semigroup(SemigroupSpec(n, l, Variant.REFLECTING), workers=cfg.workers)
            reg = is_regular_semigroup(plain, workers=cfg.workers).regular
            star_reg = is_regular_semigroup(star, workers=cfg.workers).regular
            pred = predicted_regular(n, l)
            mismatches += reg != pred
            print(f"{n:>2} {l:>2} {len(plain):>9} {str(reg):>8} {str(pred):>9} "
                  f"{len(star):>9} {str(star_reg):>8} {time.perf_counter() - t0:>6.2f}")
    print(f"mismatches against the predicted dichotomy: {mismatches}")
    return int(mismatches > 0)


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-n", type=int, default=TableConfig.max_n)
    p.add_argument("--workers", type=int, default=TableConfig.workers)
    args = p.parse_args()
    raise SystemExit(main(TableConfig(args.max_n, args.workers)))
