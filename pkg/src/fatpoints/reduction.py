"""Trading groups of fat points for one bigger point.

If L_3(k; m_1..m_s) is non-special with virtual dimension -1, then in any
degree d the points m_1..m_s may be replaced by a single (k+1)-point without
changing whether the whole system is special.  The consumed points have total
length binom(k+3, 3), which is exactly the length of a (k+1)-point, so the
total length never moves.

Only rules whose kernel system has been checked (see :class:`RuleBook`) may be
applied.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .certificate import Certificate
from .checker import CheckPolicy, _window_delta, check_exact
from .scheme import FatPointConfig, point_length, series_size


class RuleRejected(ValueError):
    """A kernel system is special or does not have virtual dimension -1."""


@dataclass(frozen=True)
class ReductionRule:
    rule_id: str
    k: int
    consumed: tuple[tuple[int, int], ...]

    @property
    def kernel(self) -> FatPointConfig:
        return FatPointConfig(self.k, self.consumed)

    @property
    def produced(self) -> int:
        return self.k + 1

    @property
    def consumed_length(self) -> int:
        return sum(c * point_length(3, m) for m, c in self.consumed)

    @property
    def produced_length(self) -> int:
        return point_length(3, self.produced)

    @property
    def balanced(self) -> bool:
        return self.consumed_length == series_size(3, self.k)

    def describe(self) -> str:
        return f"{self.rule_id} {' '.join(f'{m}^{c}' for m, c in self.kernel.spec)} → {self.produced}^1"


def rule_r1() -> ReductionRule:
    return ReductionRule("R1", 3, ((2, 5),))


def rule_r2(a: int, b: int) -> ReductionRule:
    return ReductionRule(f"R2({a},{b})", 9, ((4, a), (3, b)))


def rule_r3() -> ReductionRule:
    return ReductionRule("R3", 9, ((5, 4), (4, 4)))


def rule_r4(a: int, b: int, c: int) -> ReductionRule:
    return ReductionRule(f"R4({a},{b},{c})", 12, ((5, a), (4, b), (3, c)))


def builtin_rules() -> list[ReductionRule]:
    rules = [rule_r1()]
    rules += [rule_r2(a, 22 - 2 * a) for a in range(0, 12)]
    rules.append(rule_r3())
    for a in range(0, 14):
        for b in range(0, (91 - 7 * a) // 4 + 1):
            rest = 91 - 7 * a - 4 * b
            if rest >= 0 and rest % 2 == 0:
                rules.append(rule_r4(a, b, rest // 2))
    return rules


def verify_rule(rule: ReductionRule, policy: CheckPolicy | None = None) -> Certificate:
    """Check the kernel system; raise :class:`RuleRejected` unless usable."""
    kernel = rule.kernel
    if kernel.vdim != -1:
        raise RuleRejected(f"{rule.rule_id}: kernel {kernel} has vdim {kernel.vdim}, not -1")
    verdict, cert = check_exact(kernel, policy)
    if verdict.special:
        raise RuleRejected(f"{rule.rule_id}: kernel {kernel} is special (rank {verdict.rank})")
    return cert


class RuleBook:
    """Verification cache: a rule is checked the first time it is needed."""

    def __init__(self, policy: CheckPolicy | None = None):
        self.policy = policy or CheckPolicy()
        self.certificates: dict[str, Certificate] = {}
        self.rejected: dict[str, str] = {}

    def require(self, rule: ReductionRule) -> Certificate:
        if rule.rule_id in self.rejected:
            raise RuleRejected(self.rejected[rule.rule_id])
        cert = self.certificates.get(rule.rule_id)
        if cert is None:
            try:
                cert = verify_rule(rule, self.policy)
            except RuleRejected as exc:
                self.rejected[rule.rule_id] = str(exc)
                raise
            self.certificates[rule.rule_id] = cert
        return cert

    def reject(self, rule_id: str, reason: str = "marked unusable") -> None:
        self.rejected[rule_id] = reason
        self.certificates.pop(rule_id, None)


@dataclass
class Step:
    rule: ReductionRule
    before: FatPointConfig
    after: FatPointConfig

    def line(self) -> str:
        return self.rule.describe()


@dataclass
class ReductionTrace:
    start: FatPointConfig
    target: str
    steps: list[Step] = field(default_factory=list)
    exit: str | None = None

    @property
    def final(self) -> FatPointConfig:
        return self.steps[-1].after if self.steps else self.start

    def lines(self) -> list[str]:
        out = [s.line() for s in self.steps]
        if self.exit:
            out.append(f"exit {self.exit}")
        return out


FEW_QUINTUPLE_EXIT = "few-quintuple-points"


def target_for(d: int) -> str:
    if 11 <= d <= 21:
        return "11-21"
    if 22 <= d <= 37:
        return "22-37"
    if d >= 38:
        return "38-52"
    raise ValueError(f"no reduction target for d = {d}")


def window_delta(c: FatPointConfig) -> int:
    return _window_delta(*c.counts_wxyz)


def in_window(c: FatPointConfig, delta: int | None = None) -> bool:
    N = comb(c.d + 3, 3)
    delta = window_delta(c) if delta is None else delta
    return N - 3 <= c.length <= N + delta


def satisfies_target(c: FatPointConfig, target: str) -> bool:
    """Membership in the case region of the sweep named by ``target``."""
    w, x, y, z = c.counts_wxyz
    allowed = {5, 4, 3, 2} | ({10} if target == "22-37" else {13} if target == "38-52" else set())
    if any(m not in allowed for m, _ in c.spec):
        return False
    if z > 4 or not in_window(c):
        return False
    if target == "11-21":
        return True
    if target == "22-37":
        return 2 * x + y <= 21 and (w <= 3 or x <= 3)
    if target == "38-52":
        return 2 * x + y <= 41 and w <= 12
    raise ValueError(f"unknown target {target!r}")


def _apply(trace: ReductionTrace, book: RuleBook, rule: ReductionRule) -> None:
    book.require(rule)
    before = trace.final
    counts = dict(before.spec)
    for m, k in rule.consumed:
        if counts.get(m, 0) < k:
            raise ValueError(f"{rule.rule_id} needs {k} {m}-points, {before} has {counts.get(m, 0)}")
        counts[m] = counts.get(m, 0) - k
    counts[rule.produced] = counts.get(rule.produced, 0) + 1
    after = FatPointConfig.from_counts(before.d, counts, before.n)
    assert after.length == before.length
    trace.steps.append(Step(rule, before, after))


def reduce(c: FatPointConfig, book: RuleBook, target: str | None = None) -> ReductionTrace:
    """Rewrite a window case into the case region of its degree's sweep."""
    if c.n != 3 or any(m not in (5, 4, 3, 2) for m, _ in c.spec):
        raise ValueError("reduce expects a union of 5-, 4-, 3- and 2-points in P^3")
    if not c.spec:
        raise ValueError("empty configuration")
    if not in_window(c):
        raise ValueError(f"{c} is outside the length window")
    target = target or target_for(c.d)
    trace = ReductionTrace(c, target)

    while trace.final.count(2) >= 5:
        _apply(trace, book, rule_r1())

    if target == "22-37":
        while True:
            w, x, y, z = trace.final.counts_wxyz
            if 2 * x + y < 22:
                break
            a = min(x, 11)
            _apply(trace, book, rule_r2(a, 22 - 2 * a))
        while True:
            w, x, y, z = trace.final.counts_wxyz
            if w < 4 or x < 4:
                break
            _apply(trace, book, rule_r3())
    elif target == "38-52":
        w, x, y, z = trace.final.counts_wxyz
        alpha = (2 * x + y) // 42
        if w <= alpha - 1:
            trace.exit = FEW_QUINTUPLE_EXIT
            return trace
        for _ in range(alpha):
            w, x, y, z = trace.final.counts_wxyz
            a = min(x, 21)
            _apply(trace, book, rule_r4(1, a, 42 - 2 * a))
        while trace.final.count(5) >= 13:
            _apply(trace, book, rule_r4(13, 0, 0))
    elif target != "11-21":
        raise ValueError(f"unknown target {target!r}")
    return trace
