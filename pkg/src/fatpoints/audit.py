"""Integer checks of the arithmetic facts behind the high-degree argument.

Nothing here touches a matrix: the differential Horace layer table, the
decomposition of the plane defect beta into (e, f, g, h), and two inequality
inequalities are checked by exact enumeration.  Fractions only appear in the closed
form bound of :func:`x13_degree_bound`.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator

from .scheme import point_length

TRIANGULAR = (1, 3, 6, 10, 15)


@dataclass(frozen=True)
class LayerSequence:
    m: int
    trace: int
    residual: tuple[int, ...]

    def __post_init__(self):
        for v in (self.trace, *self.residual):
            if v not in TRIANGULAR:
                raise ValueError(f"layer length {v} is not in {TRIANGULAR}")

    @property
    def lengths(self) -> tuple[int, ...]:
        return (self.trace, *self.residual)

    @property
    def total(self) -> int:
        return sum(self.lengths)

    @property
    def trace_multiplicity(self) -> int:
        return TRIANGULAR.index(self.trace) + 1


def layer_sequences(m: int) -> list[LayerSequence]:
    """Splittings of an m-point against a plane: trace of multiplicity j < m,
    residual layers of multiplicities m, m-1, ..., 1 with j left out."""
    if not 2 <= m <= 5:
        raise ValueError("layer sequences are tabulated for 2 <= m <= 5")
    out = []
    for j in range(1, m):
        rest = [TRIANGULAR[k - 1] for k in range(m, 0, -1) if k != j]
        out.append(LayerSequence(m, TRIANGULAR[j - 1], tuple(rest)))
    return out


def all_layer_sequences() -> list[LayerSequence]:
    return [s for m in range(2, 6) for s in layer_sequences(m)]


BETA_QUADRUPLES = (
    (0, 0, 0, 0), (0, 0, 0, 1), (0, 0, 0, 2), (0, 0, 1, 0), (0, 0, 1, 1),
    (0, 0, 1, 2), (0, 1, 0, 0), (0, 1, 0, 1), (0, 1, 0, 2), (0, 1, 1, 0),
    (1, 0, 0, 0), (1, 0, 0, 1), (1, 0, 0, 2), (1, 0, 1, 0), (1, 0, 1, 1),
)


@dataclass(frozen=True, order=True)
class BetaQuadruple:
    e: int
    f: int
    g: int
    h: int

    def __post_init__(self):
        if self.as_tuple() not in BETA_QUADRUPLES:
            raise ValueError(f"{self.as_tuple()} is not an admissible quadruple")

    @property
    def value(self) -> int:
        return 10 * self.e + 6 * self.f + 3 * self.g + self.h

    @property
    def weight(self) -> int:
        return self.e + self.f + self.g + self.h

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.e, self.f, self.g, self.h)


def decompose_beta(beta: int) -> BetaQuadruple:
    if not 0 <= beta <= 14:
        raise ValueError(f"beta must lie in 0..14, got {beta}")
    hits = [q for q in BETA_QUADRUPLES if 10 * q[0] + 6 * q[1] + 3 * q[2] + q[3] == beta]
    if len(hits) != 1:
        raise AssertionError(f"beta {beta} has {len(hits)} admissible quadruples")
    return BetaQuadruple(*hits[0])


# ------------------------------------------------------------ c1 inequality

def c1_hypothesis(t, a, b, c, u, v, e, f, g, h) -> bool:
    return 15 * a + 10 * b + 6 * c + 3 * u + v + 10 * e + 6 * f + 3 * g + h <= comb(t + 2, 2)


def c1_conclusion(t, a, b, c, u, v, e, f, g, h) -> bool:
    return 10 * a + 6 * b + 3 * c + u + 15 * (e + f + g + h) <= comb(t + 1, 2)


def check_c1(t, a, b, c, u, v, e, f, g, h) -> bool:
    """True unless the tuple satisfies the hypothesis and violates the conclusion."""
    if (e, f, g, h) not in BETA_QUADRUPLES:
        raise ValueError(f"{(e, f, g, h)} is not an admissible quadruple")
    return not c1_hypothesis(t, a, b, c, u, v, e, f, g, h) or c1_conclusion(t, a, b, c, u, v, e, f, g, h)


@dataclass(frozen=True)
class C1Counterexample:
    t: int
    abcuv: tuple[int, int, int, int, int]
    quadruple: tuple[int, int, int, int]


def c1_counterexamples(t: int, quadruples=BETA_QUADRUPLES) -> Iterator[C1Counterexample]:
    """Exhaustive search, reduced by monotonicity.

    For fixed (a, b, c) the conclusion only gets harder as u grows, and v
    only appears in the hypothesis, so it suffices to try v = 0 and the
    largest u the hypothesis allows.  Every hypothesis-satisfying tuple is
    dominated by one of those, hence a counterexample exists iff one of the
    yielded witnesses exists.
    """
    for q in quadruples:
        e, f, g, h = q
        budget = comb(t + 2, 2) - (10 * e + 6 * f + 3 * g + h)
        cap = comb(t + 1, 2) - 15 * (e + f + g + h)
        if budget < 0:
            continue
        for a in range(budget // 15 + 1):
            ra = budget - 15 * a
            for b in range(ra // 10 + 1):
                rb = ra - 10 * b
                for c in range(rb // 6 + 1):
                    u = (rb - 6 * c) // 3
                    if 10 * a + 6 * b + 3 * c + u > cap:
                        yield C1Counterexample(t, (a, b, c, u, 0), q)


def c1_counterexamples_bruteforce(t: int, quadruples=BETA_QUADRUPLES) -> Iterator[C1Counterexample]:
    """Every tuple, no shortcuts.  Only practical for small t."""
    top = comb(t + 2, 2)
    for q in quadruples:
        for a in range(top // 15 + 1):
            for b in range(top // 10 + 1):
                for c in range(top // 6 + 1):
                    for u in range(top // 3 + 1):
                        for v in range(top + 1):
                            if not check_c1(t, a, b, c, u, v, *q):
                                yield C1Counterexample(t, (a, b, c, u, v), q)


def c1_first_counterexample(t: int, quadruples=BETA_QUADRUPLES) -> C1Counterexample | None:
    return next(c1_counterexamples(t, quadruples), None)


def c1_stratum(max_weight: int | None = None, zero: bool = False) -> tuple:
    if zero:
        return ((0, 0, 0, 0),)
    return tuple(q for q in BETA_QUADRUPLES if max_weight is None or sum(q) <= max_weight)


# ---------------------------------------------------- aritmetico inequality

class Verdict(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    NOT_APPLICABLE = "not-applicable"


def check_aritmetico(d: int, w: int, x: int, y: int, z: int) -> Verdict:
    """Few quintuple points: w <= floor((2x+y)/42) - 1 forces 35w <= binom(d+3,3)/12."""
    if min(w, x, y, z) < 0:
        raise ValueError("counts must be non-negative")
    N = comb(d + 3, 3)
    if 35 * w + 20 * x + 10 * y + 4 * z > N + 13:
        return Verdict.NOT_APPLICABLE
    alpha = (2 * x + y) // 42
    if w > alpha - 1:
        return Verdict.NOT_APPLICABLE
    return Verdict.HOLDS if 420 * w <= N else Verdict.FAILS


# ------------------------------------------------------- X_13 degree bound

def x13_degree_bound(d: int) -> Fraction:
    return Fraction(3, 2) * (comb(16, 3) + 13 - Fraction(11, 240) * comb(d + 3, 3)
                             + Fraction(3, 20) + 2 * (d - 13))


def x13_bound_checks(degrees=(38, 53)) -> list[tuple[str, bool, Fraction]]:
    out = []
    for d in degrees:
        b = x13_degree_bound(d)
        out.append((f"X13 bound at d={d} <= binom(16,3)", b <= comb(16, 3), b))
        out.append((f"X13 bound at d={d} <= binom(12,3)", b <= comb(12, 3), b))
    return out


# ----------------------------------------------------------------- report

@dataclass
class AuditLine:
    name: str
    ok: bool
    detail: str = ""

    def __str__(self) -> str:
        tail = f"  ({self.detail})" if self.detail else ""
        return f"{'PASS' if self.ok else 'FAIL'}  {self.name}{tail}"


def run_audit(c1_degrees=(18, 19, 20)) -> list[AuditLine]:
    lines = []
    rows = all_layer_sequences()
    bad = [r for r in rows if r.total != point_length(3, r.m)]
    lines.append(AuditLine("layer table sums", len(rows) == 10 and not bad, f"{len(rows)} rows"))

    values = sorted(decompose_beta(b).value for b in range(15))
    lines.append(AuditLine("beta decomposition is a bijection onto 0..14", values == list(range(15))))

    for t in c1_degrees:
        cex = c1_first_counterexample(t)
        lines.append(AuditLine(f"c1 at t={t}", cex is None, "" if cex is None else str(cex)))
    cex = c1_first_counterexample(15, c1_stratum(max_weight=2))
    lines.append(AuditLine("c1 at t=15, e+f+g+h <= 2", cex is None, "" if cex is None else str(cex)))
    bad_t = [t for t in range(4, 11) if c1_first_counterexample(t, c1_stratum(zero=True))]
    lines.append(AuditLine("c1 at t=4..10, e=f=g=h=0", not bad_t, f"failing t: {bad_t}" if bad_t else ""))

    for name, ok, value in x13_bound_checks():
        lines.append(AuditLine(name, ok, f"bound = {value}"))
    return lines
