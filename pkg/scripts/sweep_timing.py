"""Run full sweeps over a range of degrees and report case counts and timings.

Degrees above 12 in the 11-21 window, and anything in the larger windows,
take from minutes to many hours each.

    python scripts/sweep_timing.py --range 11-21 --degrees 11 12
"""
import argparse
import time
from dataclasses import dataclass, field
from pathlib import Path

from fatpoints.certificate import CertificateLog
from fatpoints.checker import SWEEPS, CheckPolicy, run_cases


@dataclass
class Config:
    window: str = "11-21"
    degrees: list[int] = field(default_factory=lambda: [11, 12])
    outdir: Path = Path("results")
    jobs: int = 1


def run(cfg: Config) -> int:
    cfg.outdir.mkdir(parents=True, exist_ok=True)
    cases_fn, _ = SWEEPS[cfg.window]
    total_special = 0
    print("d,cases,special,seconds")
    for d in cfg.degrees:
        cases = cases_fn(d)
        t0 = time.perf_counter()
        with CertificateLog(cfg.outdir / f"sweep_{cfg.window}_d{d}.jsonl") as log:
            results = run_cases(cases, CheckPolicy(), cfg.jobs, log)
        special = sum(v.special for v, _ in results)
        total_special += special
        print(f"{d},{len(cases)},{special},{time.perf_counter() - t0:.1f}", flush=True)
    return total_special


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--range", dest="window", choices=sorted(SWEEPS), default="11-21")
    ap.add_argument("--degrees", type=int, nargs="+", default=[11, 12])
    ap.add_argument("--outdir", type=Path, default=Path("results"))
    ap.add_argument("--jobs", type=int, default=1)
    a = ap.parse_args()
    raise SystemExit(1 if run(Config(a.window, a.degrees, a.outdir, a.jobs)) else 0)
