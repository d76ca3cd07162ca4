"""Evaluation matrices of fat point schemes.

Columns are the degree-d monomials in x_0..x_n, listed in graded reverse
lexicographic order (x_0 > x_1 > ... > x_n): ``x0^d`` first, ``xn^d`` last.
An m-point at P contributes one row per multi-index alpha with |alpha| = m-1,
namely the coefficients of the homogeneous derivative d^alpha f evaluated at P:

    row[beta] = prod_i fall(beta_i, alpha_i) * P^(beta - alpha)

with ``fall(b, a) = b (b-1) ... (b-a+1)``.  For p > d these rows span the same
space as the affine derivatives of order <= m-1 in any chart around P, by
Euler's identity; :func:`affine_condition_rows` builds the latter for testing.

Points come from a PCG64 stream seeded through numpy's ``SeedSequence``.
Bounded integers are drawn by rejection from ``random_raw`` so the stream only
depends on the bit generator, which numpy keeps stable across releases.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import IO, Sequence

import numpy as np

from .gfrank import PrimeField, rank as _rank
from .scheme import FatPointConfig, point_length, series_size

GENERATOR_ID = "pcg64-seedseq-rejection/1"
MONOMIAL_ORDER = "grevlex"
MAX_RESAMPLES = 1000


class SamplingError(RuntimeError):
    """Could not draw pairwise distinct points (only plausible for tiny primes)."""


def multi_indices(nvars: int, weight: int) -> list[tuple[int, ...]]:
    """All exponent vectors of the given weight in ``nvars`` variables, grevlex-descending."""
    if weight < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(nvars), weight):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    # grevlex: a > b iff the last nonzero entry of a - b is negative
    out.sort(key=lambda e: e[::-1])
    return out


def monomials(n: int, d: int) -> list[tuple[int, ...]]:
    if d < 0:
        raise ValueError("degree must be non-negative")
    return multi_indices(n + 1, d)


def derive_seed(base_seed: int, key: str, attempt: int = 0) -> int:
    """64-bit per-case seed from the base seed, a case key and an attempt index."""
    h = hashlib.sha256(f"{int(base_seed)}|{key}|{int(attempt)}".encode()).digest()
    return int.from_bytes(h[:8], "little")


class PointStream:
    """Deterministic source of field elements for one seed."""

    def __init__(self, seed: int):
        self.seed = int(seed)
        self._bits = np.random.PCG64(np.random.SeedSequence(self.seed))

    def below(self, bound: int) -> int:
        limit = (2**64 // bound) * bound
        while True:
            v = int(self._bits.random_raw())
            if v < limit:
                return v % bound


def sample_points(count: int, p: int, seed: int, n: int = 3) -> list[tuple[int, ...]]:
    """``count`` pairwise distinct points of the affine chart x_n = 1 over F_p."""
    stream = PointStream(seed)
    seen: set[tuple[int, ...]] = set()
    points = []
    draws = 0
    while len(points) < count:
        pt = tuple(stream.below(p) for _ in range(n)) + (1,)
        draws += 1
        if pt in seen:
            if draws - len(points) > MAX_RESAMPLES:
                raise SamplingError(f"could not draw {count} distinct points over F_{p}")
            continue
        seen.add(pt)
        points.append(pt)
    return points


@lru_cache(maxsize=None)
def _plan(n: int, m: int, d: int):
    """Exponent bookkeeping shared by every m-point in degree d.

    Returns (alphas, coef, diffs): integer falling-factorial coefficients
    (K x N, Python ints; zero where beta < alpha somewhere) and the clipped
    exponent differences beta - alpha (K x N x (n+1)).
    """
    cols = np.array(monomials(n, d), dtype=np.int64).reshape(-1, n + 1)
    alphas = np.array(multi_indices(n + 1, m - 1), dtype=np.int64).reshape(-1, n + 1)
    fall = np.zeros((d + 1, m), dtype=object)
    for b in range(d + 1):
        v = 1
        for a in range(m):
            fall[b, a] = v
            v *= b - a
    coef = np.ones((len(alphas), len(cols)), dtype=object)
    for i in range(n + 1):
        coef = coef * fall[cols[None, :, i], alphas[:, None, i]]
    diffs = np.clip(cols[None, :, :] - alphas[:, None, :], 0, None)
    return alphas, coef, diffs


@lru_cache(maxsize=None)
def _plan_mod(n: int, m: int, d: int, p: int):
    alphas, coef, diffs = _plan(n, m, d)
    return (np.array([[int(v) % p for v in row] for row in coef], dtype=np.int64).reshape(coef.shape),
            diffs)


def _check_pre(m: int, d: int, p: int | None) -> None:
    if m < 1:
        raise ValueError("multiplicity must be >= 1")
    if d < m - 1:
        raise ValueError(f"degree {d} below m-1 = {m - 1}")
    if p is not None and p <= d:
        raise ValueError(f"prime {p} must exceed the degree {d}")


def condition_rows(P: Sequence[int], m: int, d: int, p: int) -> np.ndarray:
    """Vanishing conditions of an m-point at P on degree-d forms, over F_p."""
    _check_pre(m, d, p)
    n = len(P) - 1
    coef, diffs = _plan_mod(n, m, d, p)
    vals = coef.copy()
    for i, c in enumerate(P):
        pw = np.ones(d + 1, dtype=np.int64)
        for k in range(1, d + 1):
            pw[k] = pw[k - 1] * (int(c) % p) % p
        vals = vals * pw[diffs[:, :, i]] % p
    return vals


def integer_condition_rows(P: Sequence[int], m: int, d: int) -> list[list[int]]:
    """Same rows as :func:`condition_rows` computed exactly over Z."""
    _check_pre(m, d, None)
    n = len(P) - 1
    _, coef, diffs = _plan(n, m, d)
    vals = coef.copy()
    for i, c in enumerate(P):
        pw = np.array([int(c) ** k for k in range(d + 1)], dtype=object)
        vals = vals * pw[diffs[:, :, i]]
    return vals.tolist()


def affine_condition_rows(P: Sequence[int], m: int, d: int, p: int) -> np.ndarray:
    """Affine variant: all derivatives of order <= m-1 in the chart x_k = P_k.

    ``k`` is the last coordinate with P_k != 0; derivatives are taken in the
    remaining n variables.  Same row count as :func:`condition_rows`.
    """
    _check_pre(m, d, p)
    n = len(P) - 1
    k = max(i for i, c in enumerate(P) if c % p)
    others = [i for i in range(n + 1) if i != k]
    cols = monomials(n, d)
    rows = []
    for order in range(m):
        for gamma in multi_indices(n, order):
            row = []
            for beta in cols:
                v = pow(int(P[k]), beta[k], p)
                for g, i in zip(gamma, others):
                    b = beta[i]
                    if b < g:
                        v = 0
                        break
                    for t in range(g):
                        v = v * (b - t) % p
                    v = v * pow(int(P[i]), b - g, p) % p
                row.append(v)
            rows.append(row)
    return np.array(rows, dtype=np.int64).reshape(len(rows), len(cols))


@dataclass
class EvaluationMatrix:
    matrix: np.ndarray
    config: FatPointConfig
    prime: int
    seed: int
    points: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    def rank(self) -> int:
        return _rank(self.matrix, PrimeField(self.prime))

    def integer_matrix(self) -> list[list[int]]:
        """The matrix recomputed over Z at the same points lifted to [0, p)."""
        return build_integer_matrix(self.config, self.points)


def build_matrix(c: FatPointConfig, prime: int, seed: int, affine: bool = False) -> EvaluationMatrix:
    """Stack the condition rows of every point of ``c`` at freshly sampled points."""
    PrimeField(prime)
    mults = c.multiplicities
    for m in set(mults):
        _check_pre(m, c.d, prime)
    points = sample_points(len(mults), prime, seed, c.n)
    N = series_size(c.n, c.d)
    rowfn = affine_condition_rows if affine else condition_rows
    blocks = [rowfn(P, m, c.d, prime) for P, m in zip(points, mults)]
    if blocks:
        mat = np.vstack(blocks)
    else:
        mat = np.zeros((0, N), dtype=np.int64)
    assert mat.shape == (sum(point_length(c.n, m) for m in mults), N)
    return EvaluationMatrix(mat, c, prime, seed, points)


def build_integer_matrix(c: FatPointConfig, points: Sequence[Sequence[int]]) -> list[list[int]]:
    rows: list[list[int]] = []
    for P, m in zip(points, c.multiplicities):
        rows.extend(integer_condition_rows(P, m, c.d))
    return rows


def write_dump(matrix: np.ndarray, p: int, stream: IO[str]) -> None:
    """Audit dump: header ``rows cols p`` then one matrix row per line."""
    rows, cols = matrix.shape
    stream.write(f"{rows} {cols} {p}\n")
    for row in matrix:
        stream.write(" ".join(str(int(v)) for v in row) + "\n")


def read_dump(stream: IO[str]) -> tuple[np.ndarray, int]:
    header = stream.readline().split()
    if len(header) != 3:
        raise ValueError("dump header must be 'rows cols p'")
    rows, cols, p = map(int, header)
    values = [int(v) for line in stream for v in line.split()]
    if len(values) != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, found {len(values)}")
    return np.array(values, dtype=np.int64).reshape(rows, cols), p
