"""Reduce random window cases and tally which rules fire.

    python scripts/reduction_census.py --d 25 40 --count 500
"""
import argparse
from collections import Counter
from dataclasses import dataclass, field
from math import comb

import numpy as np

from fatpoints.reduction import RuleBook, in_window, reduce, satisfies_target
from fatpoints.scheme import FatPointConfig


@dataclass
class Config:
    degrees: list[int] = field(default_factory=lambda: [25, 40])
    count: int = 200
    seed: int = 0


def sample(d: int, rng: np.random.Generator) -> FatPointConfig:
    N = comb(d + 3, 3)
    while True:
        w = int(rng.integers(0, N // 35 + 1))
        x = int(rng.integers(0, (N - 35 * w) // 20 + 1))
        y = int(rng.integers(0, (N - 35 * w - 20 * x) // 10 + 1))
        z = max(0, -(-(N - 3 - 35 * w - 20 * x - 10 * y) // 4))
        c = FatPointConfig.wxyz(d, w, x, y, z)
        if c.num_points and in_window(c):
            return c


def run(cfg: Config) -> None:
    book = RuleBook()
    rng = np.random.default_rng(cfg.seed)
    for d in cfg.degrees:
        fired, outcomes = Counter(), Counter()
        for _ in range(cfg.count):
            trace = reduce(sample(d, rng), book)
            fired.update(s.rule.rule_id.split("(")[0] for s in trace.steps)
            if trace.exit:
                outcomes[trace.exit] += 1
            else:
                outcomes["in-target" if satisfies_target(trace.final, trace.target) else "OUTSIDE"] += 1
        print(f"d={d}: {dict(outcomes)}  rule uses {dict(sorted(fired.items()))}")
    print(f"{len(book.certificates)} distinct rules verified")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d", type=int, nargs="+", default=[25, 40])
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    run(Config(a.d, a.count, a.seed))
