"""The per-case rank check, its retry policy, and the case sweeps.

A case is reported special only when every attempt (fresh pseudorandom points
each time) falls short of the expected rank.  One attempt reaching the
expected rank settles non-speciality by semicontinuity.  For small degrees a
special verdict is additionally re-derived over Q on the integer lift of the
same points, which rules out an unlucky prime.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from math import ceil, comb
from multiprocessing import Pool
from typing import Callable, Iterable, Iterator

from .certificate import Attempt, Certificate, CertificateLog
from .gfrank import DEFAULT_PRIME, PrimeField, exact_backend_for, rank as rank_fp, rank_exact
from .interpolation import GENERATOR_ID, build_integer_matrix, build_matrix, derive_seed
from .scheme import FatPointConfig, PostulationVerdict, classify, delta_bound

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckPolicy:
    prime: int = DEFAULT_PRIME
    retries: int = 3  # total attempts allowed before a case is declared special
    seed: int = 0
    oracle_max_degree: int = 10
    force_oracle: bool = False

    def __post_init__(self):
        if self.retries < 1:
            raise ValueError("retries must be >= 1")
        PrimeField(self.prime)


def _attempt_rank(c: FatPointConfig, prime: int, seed: int):
    em = build_matrix(c, prime, seed)
    return em, rank_fp(em.matrix, PrimeField(prime))


def check_exact(c: FatPointConfig, policy: CheckPolicy | None = None) -> tuple[PostulationVerdict, Certificate]:
    policy = policy or CheckPolicy()
    if policy.prime <= c.d:
        raise ValueError(f"prime {policy.prime} must exceed the degree {c.d}")
    t0 = time.perf_counter()
    key = c.text()
    expected = min(c.length, c.series_size)
    attempts: list[Attempt] = []
    best = None
    for k in range(policy.retries):
        seed = derive_seed(policy.seed, key, k)
        em, r = _attempt_rank(c, policy.prime, seed)
        attempts.append(Attempt(seed, r))
        if best is None or r > best[1]:
            best = (em, r)
        if r == expected:
            break
    em, r = best
    verdict = classify(r, c)
    oracle = None
    if verdict.special and (policy.force_oracle or c.d <= policy.oracle_max_degree):
        ints = build_integer_matrix(c, em.points)
        backend = exact_backend_for(len(ints), c.series_size)
        exact = rank_exact(ints, backend)
        oracle = {"rank": exact, "backend": backend, "seed": em.seed, "confirmed": exact == r}
        if exact != r:
            log.warning("%s: F_%d rank %d below exact rank %d (unlucky prime)", key, policy.prime, r, exact)
            verdict = classify(exact, c)
    cert = Certificate(
        config=key,
        prime=policy.prime,
        base_seed=policy.seed,
        attempts=attempts,
        length=verdict.length,
        N=verdict.series_size,
        rank=verdict.rank,
        special=verdict.special,
        dim=verdict.dim,
        vdim=verdict.vdim,
        seconds=round(time.perf_counter() - t0, 6),
        oracle=oracle,
        failures=[i for i, a in enumerate(attempts) if a.rank < verdict.rank],
    )
    return verdict, cert


def verdict_from_certificate(cert: Certificate) -> PostulationVerdict:
    return classify(cert.rank, FatPointConfig.parse(cert.config))


MATCH, MISMATCH, UNVERIFIABLE = "match", "mismatch", "unverifiable"


def _major(version: str) -> str:
    return version.split(".")[0]


def verify_certificate(cert: Certificate) -> str:
    """Replay a record: ``"match"``, ``"mismatch"`` or ``"unverifiable"``."""
    from . import __version__

    if cert.generator != GENERATOR_ID or _major(cert.tool_version) != _major(__version__):
        return UNVERIFIABLE
    try:
        c = FatPointConfig.parse(cert.config)
        PrimeField(cert.prime)
    except ValueError:
        return UNVERIFIABLE
    if not cert.attempts:
        return MISMATCH
    best = None
    for k, att in enumerate(cert.attempts):
        if att.seed != derive_seed(cert.base_seed, cert.config, k):
            return MISMATCH
        em, r = _attempt_rank(c, cert.prime, att.seed)
        if r != att.rank:
            return MISMATCH
        if best is None or r > best[1]:
            best = (em, r)
    em, r = best
    if cert.oracle is not None:
        if cert.oracle.get("seed") != em.seed:
            return MISMATCH
        exact = rank_exact(build_integer_matrix(c, em.points))
        if exact != cert.oracle.get("rank"):
            return MISMATCH
        r = exact
    try:
        v = classify(r, c)
    except ValueError:
        return MISMATCH
    recorded = (cert.rank, cert.special, cert.dim, cert.vdim, cert.length, cert.N)
    if recorded != (v.rank, v.special, v.dim, v.vdim, v.length, v.series_size):
        return MISMATCH
    return MATCH


# -- running many cases -------------------------------------------------------

def _run_one(args):
    c, policy = args
    return check_exact(c, policy)


def run_cases(cases: Iterable[FatPointConfig], policy: CheckPolicy | None = None, jobs: int = 1,
              log_file: CertificateLog | None = None,
              on_result: Callable[[PostulationVerdict, Certificate], None] | None = None,
              ) -> list[tuple[PostulationVerdict, Certificate]]:
    """Check every case; results come back in input order regardless of ``jobs``.

    Cases already present in ``log_file`` (same config, prime and base seed) are
    not recomputed, which makes interrupted sweeps resumable.
    """
    policy = policy or CheckPolicy()
    cases = list(cases)
    results: list = [None] * len(cases)
    todo = []
    for i, c in enumerate(cases):
        old = log_file.lookup(c.text(), policy.prime, policy.seed) if log_file else None
        if old is not None:
            results[i] = (verdict_from_certificate(old), old)
        else:
            todo.append(i)

    def finish(i, res):
        results[i] = res
        if log_file is not None:
            log_file.append(res[1])
        if on_result is not None:
            on_result(*res)

    if jobs > 1 and len(todo) > 1:
        with Pool(jobs) as pool:
            it = pool.imap(_run_one, [(cases[i], policy) for i in todo], chunksize=4)
            for i, res in zip(todo, it):
                finish(i, res)
    else:
        for i in todo:
            finish(i, check_exact(cases[i], policy))
    return results


# -- case generators ----------------------------------------------------------

def _window_delta(w: int, x: int, y: int, z: int) -> int:
    # a case made only of 10- or 13-points gets the widest slack
    if w == x == y == z == 0:
        return 13
    return delta_bound(w, x, y, z)


def cases_11_21(d: int) -> list[FatPointConfig]:
    """Cases of the 11 <= d <= 21 sweep, in the loop order z, y, x, w.

    As in the original driver the slack is 13 for every z = 0 case and 1 once
    z > 0, and w starts at 1.
    """
    if not 11 <= d <= 21:
        raise ValueError("d must lie in 11..21")
    N = comb(d + 3, 3)
    out = []
    for z in range(0, 5):
        D = 13 if z == 0 else 1
        for y in range(0, ceil(N / 10) + 1):
            for x in range(0, ceil(N / 20) + 1):
                for w in range(1, ceil(N / 35) + 1):
                    L = 35 * w + 20 * x + 10 * y + 4 * z
                    if N - 3 <= L <= N + D:
                        out.append(FatPointConfig.wxyz(d, w, x, y, z))
    return out


def _big_point_cases(d: int, big_len: int, big_mult: int, xy_bound: int,
                     w_ok: Callable[[int, int], bool]) -> list[FatPointConfig]:
    N = comb(d + 3, 3)
    out = []
    for z in range(0, 5):
        for y in range(0, xy_bound + 1):
            for x in range(0, (xy_bound - y) // 2 + 1):
                for w in range(0, (N + 13) // 35 + 1):
                    if not w_ok(w, x):
                        continue
                    D = _window_delta(w, x, y, z)
                    base = 35 * w + 20 * x + 10 * y + 4 * z
                    if base > N + D:
                        break
                    for k in range(0, (N + D - base) // big_len + 1):
                        if N - 3 <= base + big_len * k <= N + D:
                            out.append(FatPointConfig(d, ((big_mult, k), (5, w), (4, x), (3, y), (2, z))))
    return out


def cases_22_37(d: int) -> list[FatPointConfig]:
    """(q, w, x, y, z) with z <= 4, 2x + y <= 21, (w <= 3 or x <= 3), q 10-points."""
    if not 21 <= d <= 37:
        raise ValueError("d must lie in 21..37")
    return _big_point_cases(d, 220, 10, 21, lambda w, x: w <= 3 or x <= 3)


def cases_38_52(d: int) -> list[FatPointConfig]:
    """(r, w, x, y, z) with z <= 4, 2x + y <= 41, w <= 12, r 13-points."""
    if d < 38:
        raise ValueError("d must be >= 38")
    return _big_point_cases(d, 455, 13, 41, lambda w, x: w <= 12)


def _specials(results):
    return [(v, c) for v, c in results if v.special]


def sweep_11_21(d: int, policy: CheckPolicy | None = None, jobs: int = 1, log_file=None):
    return _specials(run_cases(cases_11_21(d), policy, jobs, log_file))


def sweep_22_37(d: int, policy: CheckPolicy | None = None, jobs: int = 1, log_file=None):
    return _specials(run_cases(cases_22_37(d), policy, jobs, log_file))


def sweep_38_52(d: int, policy: CheckPolicy | None = None, jobs: int = 1, log_file=None):
    if d > 52:
        raise ValueError("d must lie in 38..52")
    return _specials(run_cases(cases_38_52(d), policy, jobs, log_file))


SWEEPS = {"11-21": (cases_11_21, sweep_11_21), "22-37": (cases_22_37, sweep_22_37),
          "38-52": (cases_38_52, sweep_38_52)}


# -- exceptions in degrees 9 and 10 -------------------------------------------

@dataclass(frozen=True, order=True)
class ExceptionRow:
    w: int
    x: int
    y: int
    z: int
    capped_length: int
    e: int
    r: int
    dim: int

    def as_tuple(self) -> tuple[int, ...]:
        return (self.w, self.x, self.y, self.z, self.capped_length, self.e, self.r, self.dim)

    def csv(self) -> str:
        return ",".join(str(v) for v in self.as_tuple())


def _wxyz_upto(L_max: int) -> Iterator[tuple[int, int, int, int, int]]:
    for z in range(0, L_max // 4 + 1):
        for y in range(0, (L_max - 4 * z) // 10 + 1):
            for x in range(0, (L_max - 4 * z - 10 * y) // 20 + 1):
                for w in range(0, (L_max - 4 * z - 10 * y - 20 * x) // 35 + 1):
                    yield w, x, y, z, 35 * w + 20 * x + 10 * y + 4 * z


def exception_cases(d: int) -> list[FatPointConfig]:
    """Every case examined when classifying exceptions in degree 9 or 10.

    d = 10: w >= 1 with 283 <= deg <= 320, plus w in {7, 8} with deg <= 320.
    d = 9:  w >= 1 with 217 <= deg <= 254, plus 1 <= w <= 6 with deg <= 216.
    """
    N = comb(d + 3, 3)
    if d == 10:
        extra = lambda w, L: w in (7, 8)
    elif d == 9:
        extra = lambda w, L: 1 <= w <= 6 and L <= N - 4
    else:
        raise ValueError("exception scans exist for d = 9 and d = 10 only")
    out = []
    for w, x, y, z, L in _wxyz_upto(N + 34):
        if (w >= 1 and N - 3 <= L <= N + 34) or extra(w, L):
            out.append(FatPointConfig.wxyz(d, w, x, y, z))
    return out


def exception_row(v: PostulationVerdict, c: FatPointConfig) -> ExceptionRow:
    w, x, y, z = c.counts_wxyz
    return ExceptionRow(w, x, y, z, v.capped_length, v.expected_dim, v.rank, v.dim)


def exception_rows(results: Iterable[tuple[PostulationVerdict, Certificate]]) -> list[ExceptionRow]:
    """Special cases among ``results``, sorted by (w, x, y, z) descending."""
    rows = [exception_row(v, FatPointConfig.parse(c.config)) for v, c in results if v.special]
    return sorted(rows, reverse=True)


def scan_exceptions(d: int, policy: CheckPolicy | None = None, jobs: int = 1,
                    log_file: CertificateLog | None = None) -> list[ExceptionRow]:
    return exception_rows(run_cases(exception_cases(d), policy, jobs, log_file))
