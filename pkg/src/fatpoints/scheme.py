"""Fat point configurations, their lengths and postulation verdicts."""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb
from typing import Mapping


def point_length(n: int, m: int) -> int:
    """Length of an m-fat point in P^n: binom(n+m-1, n)."""
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    return comb(n + m - 1, n)


def series_size(n: int, d: int) -> int:
    """Number of degree-d forms in n+1 variables: binom(n+d, n)."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    return comb(n + d, n)


def delta_bound(w: int, x: int, y: int, z: int) -> int:
    """Upper slack of the length window, keyed on the smallest multiplicity present.

    13 when only 5-points occur, 8 when 4-points are the smallest, 4 for
    3-points and 1 as soon as there is a double point.
    """
    if min(w, x, y, z) < 0:
        raise ValueError("counts must be non-negative")
    if z > 0:
        return 1
    if y > 0:
        return 4
    if x > 0:
        return 8
    if w > 0:
        return 13
    raise ValueError("delta_bound needs at least one point")


_TOKEN = re.compile(r"^(\d+)(?:\^(\d+))?$")


@dataclass(frozen=True)
class FatPointConfig:
    """A general union of fat points and the degree of the forms tested.

    ``spec`` holds ``(multiplicity, count)`` pairs; it is normalised to
    descending multiplicity with zero counts dropped.
    """

    d: int
    spec: tuple[tuple[int, int], ...] = ()
    n: int = 3

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ambient dimension must be >= 1")
        if self.d < 0:
            raise ValueError("degree must be non-negative")
        pairs = [(int(m), int(k)) for m, k in self.spec]
        mults = [m for m, _ in pairs]
        if len(set(mults)) != len(mults):
            raise ValueError(f"repeated multiplicity in {pairs}")
        for m, k in pairs:
            if m < 1 or k < 0:
                raise ValueError(f"bad (multiplicity, count) pair {(m, k)}")
        norm = tuple(sorted(((m, k) for m, k in pairs if k > 0), reverse=True))
        object.__setattr__(self, "spec", norm)

    @classmethod
    def from_counts(cls, d: int, counts: Mapping[int, int], n: int = 3) -> "FatPointConfig":
        return cls(d, tuple(counts.items()), n)

    @classmethod
    def wxyz(cls, d: int, w: int = 0, x: int = 0, y: int = 0, z: int = 0,
             q: int = 0, r: int = 0) -> "FatPointConfig":
        """w 5-points, x 4-points, y 3-points, z 2-points, q 10-points, r 13-points."""
        return cls(d, ((13, r), (10, q), (5, w), (4, x), (3, y), (2, z)))

    @classmethod
    def parse(cls, text: str) -> "FatPointConfig":
        """Parse the canonical form, e.g. ``"d=10 n=3 5^9 4^1"``.

        A bare multiplicity ``m`` means one m-point; ``n`` defaults to 3.
        """
        d = None
        n = 3
        counts: dict[int, int] = {}
        for tok in text.split():
            if tok.startswith("d="):
                d = int(tok[2:])
            elif tok.startswith("n="):
                n = int(tok[2:])
            else:
                mt = _TOKEN.match(tok)
                if not mt:
                    raise ValueError(f"cannot parse token {tok!r} in {text!r}")
                m = int(mt.group(1))
                counts[m] = counts.get(m, 0) + int(mt.group(2) or 1)
        if d is None:
            raise ValueError(f"missing d= in {text!r}")
        return cls.from_counts(d, counts, n)

    def text(self) -> str:
        parts = [f"d={self.d}", f"n={self.n}"] + [f"{m}^{k}" for m, k in self.spec]
        return " ".join(parts)

    __str__ = text

    def count(self, m: int) -> int:
        return dict(self.spec).get(m, 0)

    @property
    def counts_wxyz(self) -> tuple[int, int, int, int]:
        return (self.count(5), self.count(4), self.count(3), self.count(2))

    @property
    def multiplicities(self) -> list[int]:
        """One entry per point, descending."""
        return [m for m, k in self.spec for _ in range(k)]

    @property
    def num_points(self) -> int:
        return sum(k for _, k in self.spec)

    @property
    def length(self) -> int:
        return sum(k * point_length(self.n, m) for m, k in self.spec)

    @property
    def series_size(self) -> int:
        return series_size(self.n, self.d)

    @property
    def vdim(self) -> int:
        return virtual_dimension(self)

    def with_point(self, m: int, count: int = 1) -> "FatPointConfig":
        counts = dict(self.spec)
        counts[m] = counts.get(m, 0) + count
        return FatPointConfig.from_counts(self.d, counts, self.n)

    def with_degree(self, d: int) -> "FatPointConfig":
        return FatPointConfig(d, self.spec, self.n)


def virtual_dimension(c: FatPointConfig) -> int:
    return c.series_size - c.length - 1


@dataclass(frozen=True)
class PostulationVerdict:
    length: int
    series_size: int
    expected_rank: int
    rank: int
    special: bool
    dim: int
    vdim: int

    @property
    def expected_dim(self) -> int:
        """max(vdim, -1); the ``e`` column of the exception tables."""
        return max(self.vdim, -1)

    @property
    def capped_length(self) -> int:
        return min(self.length, self.series_size)


def classify(rank: int, c: FatPointConfig) -> PostulationVerdict:
    N = c.series_size
    length = c.length
    expected = min(length, N)
    if rank < 0 or rank > expected:
        raise ValueError(f"rank {rank} exceeds min(length, N) = {expected} for {c}")
    return PostulationVerdict(
        length=length,
        series_size=N,
        expected_rank=expected,
        rank=rank,
        special=rank != expected,
        dim=N - 1 - rank,
        vdim=N - length - 1,
    )
