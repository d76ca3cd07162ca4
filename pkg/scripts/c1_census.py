"""Count counterexamples to the c1 inequality per t and per (e, f, g, h).

    python scripts/c1_census.py --tmax 20
"""
import argparse
from collections import Counter

from fatpoints.audit import BETA_QUADRUPLES, c1_counterexamples


def census(tmax: int) -> None:
    print("t,quadruple,witnesses")
    for t in range(tmax + 1):
        counts = Counter(c.quadruple for c in c1_counterexamples(t))
        for q in BETA_QUADRUPLES:
            if counts[q]:
                print(f"{t},{'/'.join(map(str, q))},{counts[q]}")
        if not counts:
            print(f"{t},-,0")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--tmax", type=int, default=20)
    census(ap.parse_args().tmax)
