"""Dense rank over a prime field, plus an exact rank oracle over the rationals.

The prime-field engine is plain row reduction on an ``int64`` numpy array.
Because every multiplier and pivot row is reduced mod ``p`` before use, each
elimination step adds at most ``p**2`` to the magnitude of a trailing entry,
so the trailing block can go unreduced for ``2**62 // p**2`` steps.  For the
default prime 31991 that is far more steps than any matrix has columns.

The exact oracle works on integer (or ``Fraction``) rows.  Small matrices go
through a hand-written Bareiss elimination; large ones may be delegated to
FLINT's ``fmpz_mat.rank`` when python-flint is importable.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

try:  # optional accelerator for the exact oracle
    import flint as _flint
except ImportError:  # pragma: no cover - exercised only without python-flint
    _flint = None

DEFAULT_PRIME = 31991

# Bareiss is fine up to roughly this many entries; beyond it "auto" prefers FLINT.
_BAREISS_AUTO_LIMIT = 6000


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field F_p.  ``p`` must be prime and below 2**31 (int64 products)."""

    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.p >= 2**31:
            raise ValueError("prime must be below 2**31")

    def reduce(self, values) -> np.ndarray:
        return np.mod(np.asarray(values, dtype=np.int64), self.p)

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, -1, self.p)


def as_dense(rows, field: PrimeField) -> np.ndarray:
    """Reduced 2-D int64 copy of ``rows`` (array or nested sequence of ints)."""
    if isinstance(rows, np.ndarray) and rows.dtype != object:
        a = np.mod(rows.astype(np.int64), field.p)
    else:
        rows = [list(r) for r in rows]
        width = len(rows[0]) if rows else 0
        a = np.array([[int(v) % field.p for v in r] for r in rows], dtype=np.int64).reshape(len(rows), width)
    if a.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    return a


def rank(m, field: PrimeField | None = None) -> int:
    """Rank of ``m`` over F_p.

    Row reduction with the first nonzero entry of each column as pivot.  The
    caller's matrix is never modified.
    """
    field = field or PrimeField()
    p = field.p
    a = as_dense(m, field)
    rows, cols = a.shape
    if rows == 0 or cols == 0:
        return 0
    if rows < cols:
        # fewer pivot searches and a narrower trailing block on the transpose
        a = np.ascontiguousarray(a.T)
        rows, cols = cols, rows

    budget = (2**62) // (p * p)
    since_reduce = 0
    r = 0
    for c in range(cols):
        if r == rows:
            break
        col = a[r:, c] % p
        a[r:, c] = col
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        pivot_inv = pow(int(a[r, c]), -1, p)
        prow = (a[r, c + 1:] % p) * pivot_inv % p
        mult = a[r + 1:, c]  # already reduced above
        if since_reduce >= budget - 1:
            a[r + 1:, c + 1:] %= p
            since_reduce = 0
        a[r + 1:, c + 1:] -= np.outer(mult, prow)
        since_reduce += 1
        r += 1
    return r


# -- exact oracle -----------------------------------------------------------

def _integer_rows(m: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in m:
        row = list(row)
        if any(isinstance(v, Fraction) for v in row):
            den = lcm(*(Fraction(v).denominator for v in row)) if row else 1
            out.append([int(Fraction(v) * den) for v in row])
        else:
            out.append([int(v) for v in row])
    return out


def bareiss_rank(m: Sequence[Sequence]) -> int:
    """Exact rank by fraction-free (Bareiss) elimination.

    Rows may hold ints or Fractions; each row is scaled to integers first,
    which does not change the rank.
    """
    a = _integer_rows(m)
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    prev = 1
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        prow = a[r]
        pv = prow[c]
        tail = range(c + 1, ncols)
        for i in range(r + 1, nrows):
            row = a[i]
            f = row[c]
            if f:
                a[i] = [0] * (c + 1) + [(pv * row[j] - f * prow[j]) // prev for j in tail]
            else:
                a[i] = [0] * (c + 1) + [pv * row[j] // prev for j in tail]
        prev = pv
        r += 1
        if r == nrows:
            break
    return r


def rank_exact(m: Sequence[Sequence], backend: str = "auto") -> int:
    """Exact rank over Q.

    ``backend`` is ``"bareiss"``, ``"flint"`` or ``"auto"`` (Bareiss for small
    inputs, FLINT when available for large ones).
    """
    rows = _integer_rows(m)
    if backend not in ("auto", "bareiss", "flint"):
        raise ValueError(f"unknown backend {backend!r}")
    if not rows or not rows[0]:
        return 0
    size = len(rows) * len(rows[0])
    if backend == "flint" or (backend == "auto" and _flint is not None and size > _BAREISS_AUTO_LIMIT):
        if _flint is None:
            raise RuntimeError("python-flint is not installed")
        return int(_flint.fmpz_mat(rows).rank())
    return bareiss_rank(rows)


def exact_backend_for(rows: int, cols: int) -> str:
    """Name of the backend ``rank_exact(..., "auto")`` would pick."""
    if _flint is not None and rows * cols > _BAREISS_AUTO_LIMIT:
        return "flint"
    return "bareiss"
