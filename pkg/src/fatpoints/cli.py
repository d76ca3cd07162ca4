"""Command line entry point: ``fatpoints <command> ...``.

Exit status: 0 when nothing unexpected turned up, 1 when an unexpected special
case (or a failed check or certificate) was found, 2 on usage or runtime errors.
"""
from __future__ import annotations

import argparse
import logging
import sys
from contextlib import nullcontext

from . import __version__
from .audit import run_audit
from .certificate import CertificateLog, load_certificates
from .checker import (SWEEPS, CheckPolicy, check_exact, exception_cases, exception_rows,
                      run_cases, verify_certificate)
from .gfrank import DEFAULT_PRIME
from .reduction import RuleBook, RuleRejected, reduce
from .scheme import FatPointConfig
from .tables import COLUMNS, known_exceptions

OK, UNEXPECTED, ERROR = 0, 1, 2


def _policy(args) -> CheckPolicy:
    return CheckPolicy(prime=args.prime, retries=args.retries, seed=args.seed,
                       force_oracle=args.oracle)


def _config(tokens: list[str]) -> FatPointConfig:
    return FatPointConfig.parse(" ".join(tokens))


def _log(args):
    return CertificateLog(args.out) if args.out else nullcontext(None)


def _is_expected(c: FatPointConfig) -> bool:
    if c.d not in (9, 10) or any(m not in (5, 4, 3, 2) for m, _ in c.spec):
        return False
    return c.counts_wxyz in known_exceptions(c.d)


def cmd_exact(args) -> int:
    c = _config(args.config)
    verdict, cert = check_exact(c, _policy(args))
    print(f"{c}: length={verdict.length} N={verdict.series_size} rank={verdict.rank} "
          f"dim={verdict.dim} vdim={verdict.vdim} {'SPECIAL' if verdict.special else 'non-special'}")
    if cert.oracle:
        print(f"exact rank {cert.oracle['rank']} ({cert.oracle['backend']})")
    with _log(args) as log:
        if log is not None:
            log.append(cert)
    return UNEXPECTED if verdict.special and not _is_expected(c) else OK


def cmd_sweep(args) -> int:
    cases_fn, _ = SWEEPS[args.range]
    cases = cases_fn(args.d)
    print(f"sweep {args.range} d={args.d}: {len(cases)} cases", file=sys.stderr)
    with _log(args) as log:
        results = run_cases(cases, _policy(args), args.jobs, log)
    specials = [cert for v, cert in results if v.special]
    for cert in specials:
        print(f"SPECIAL {cert.config} rank={cert.rank} dim={cert.dim}")
    print(f"{len(cases)} cases, {len(specials)} special")
    return UNEXPECTED if specials else OK


def cmd_exceptions(args) -> int:
    with _log(args) as log:
        results = run_cases(exception_cases(args.d), _policy(args), args.jobs, log)
    rows = exception_rows(results)
    print(",".join(COLUMNS))
    for row in rows:
        print(row.csv())
    found = {row.as_tuple()[:4] for row in rows}
    unexpected = found - known_exceptions(args.d)
    missing = known_exceptions(args.d) - found
    for key in sorted(unexpected):
        print(f"unexpected special case {key}", file=sys.stderr)
    for key in sorted(missing):
        print(f"published exception {key} not reproduced", file=sys.stderr)
    return UNEXPECTED if unexpected else OK


def cmd_reduce(args) -> int:
    c = _config(args.config)
    book = RuleBook(_policy(args))
    trace = reduce(c, book)
    print(f"start  {trace.start}")
    for line in trace.lines():
        print(line)
    print(f"final  {trace.final}")
    if args.check:
        verdict, cert = check_exact(trace.final, _policy(args))
        print(f"final rank={verdict.rank} {'SPECIAL' if verdict.special else 'non-special'}")
        if verdict.special:
            return UNEXPECTED
    return OK


def cmd_audit(args) -> int:
    lines = run_audit()
    for line in lines:
        print(line)
    return OK if all(line.ok for line in lines) else UNEXPECTED


def cmd_verify(args) -> int:
    status = OK
    counts: dict[str, int] = {}
    for path in args.files:
        for cert in load_certificates(path):
            outcome = verify_certificate(cert)
            counts[outcome] = counts.get(outcome, 0) + 1
            if outcome != "match":
                status = UNEXPECTED
                print(f"{outcome}: {cert.config}")
    print(" ".join(f"{k}={v}" for k, v in sorted(counts.items())) or "no records")
    return status


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    common.add_argument("--seed", type=int, default=0, help="base seed")
    common.add_argument("--retries", type=int, default=3, help="attempts per case")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--oracle", action="store_true", help="always confirm special cases over Q")
    common.add_argument("--out", help="certificate file (appended to; existing records are reused)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="fatpoints", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("exact", parents=[common], help="check one configuration")
    s.add_argument("config", nargs="+", help='e.g. "d=10 5^9"')
    s.set_defaults(func=cmd_exact)

    s = sub.add_parser("sweep", parents=[common], help="check every case of a degree window")
    s.add_argument("--range", required=True, choices=sorted(SWEEPS))
    s.add_argument("--d", type=int, required=True)
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("exceptions", parents=[common], help="list special cases in degree 9 or 10 as CSV")
    s.add_argument("--d", type=int, required=True, choices=(9, 10))
    s.set_defaults(func=cmd_exceptions)

    s = sub.add_parser("reduce", parents=[common], help="print a reduction trace")
    s.add_argument("config", nargs="+")
    s.add_argument("--check", action="store_true", help="rank-check the final configuration too")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("audit", help="run the arithmetic checks")
    s.set_defaults(func=cmd_audit)

    s = sub.add_parser("verify", help="replay certificate files")
    s.add_argument("files", nargs="+")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else ERROR
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ValueError, RuleRejected, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
