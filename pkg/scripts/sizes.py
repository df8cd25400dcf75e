"""Sizes of T_n(l) by the walk-count formula, checked against enumeration
where that is cheap enough.

    python scripts/sizes.py --max-n 10 --enumerate-up-to 7
"""

import argparse
from dataclasses import dataclass

from length_semigroups import SemigroupSpec, Variant, enumerate_semigroup
from length_semigroups.structure import count_preserving


@dataclass
class SizesConfig:
    max_n: int = 10
    enumerate_up_to: int = 7


def main(cfg: SizesConfig) -> int:
    bad = 0
    for n in range(2, cfg.max_n + 1):
        row = []
        for l in range(1, n):
            count = count_preserving(n, l)
            cell = str(count)
            if n <= cfg.enumerate_up_to:
                plain = len(enumerate_semigroup(SemigroupSpec(n, l, Variant.PRESERVING)))
                star = len(enumerate_semigroup(SemigroupSpec(n, l, Variant.REFLECTING)))
                bad += plain != count
                cell += f"/{star}"
            row.append(cell)
        print(f"n={n:>2}: " + "  ".join(row))
    if cfg.enumerate_up_to >= 2:
        print("(cells up to the enumeration bound read |T_n(l)|/|T*_n(l)|)")
    print(f"count/enumeration disagreements: {bad}")
    return int(bad > 0)


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-n", type=int, default=SizesConfig.max_n)
    p.add_argument("--enumerate-up-to", type=int, default=SizesConfig.enumerate_up_to)
    args = p.parse_args()
    raise SystemExit(main(SizesConfig(args.max_n, args.enumerate_up_to)))
