"""Exit criteria.  Slow: the two exception scans and the certificate replay
take several minutes each on one core.

Run with ``pytest tests/test_acceptance.py`` (or ``python tests/test_acceptance.py``);
the terminal summary prints one PASS/FAIL line per criterion.
"""
import dataclasses
import io
from contextlib import redirect_stdout
from math import comb

import numpy as np
import pytest

from fatpoints.audit import (Verdict, all_layer_sequences, c1_first_counterexample, c1_stratum,
                             check_aritmetico, decompose_beta)
from fatpoints.certificate import load_certificates
from fatpoints.checker import CheckPolicy, check_exact, sweep_11_21, verify_certificate
from fatpoints.cli import main
from fatpoints.gfrank import rank, rank_exact
from fatpoints.interpolation import build_matrix, condition_rows
from fatpoints.reduction import (RuleBook, builtin_rules, in_window, reduce, satisfies_target,
                                 verify_rule)
from fatpoints.scheme import FatPointConfig, point_length
from fatpoints.tables import COLUMNS, DEGREE_9, DEGREE_10, MISPRINTED

P = 31991


def _scan(d, tmp_path_factory):
    out = tmp_path_factory.mktemp(f"d{d}") / "certs.jsonl"
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(["exceptions", "--d", str(d), "--out", str(out)])
    lines = buf.getvalue().splitlines()
    assert lines[0] == ",".join(COLUMNS)
    rows = [tuple(int(v) for v in line.split(",")) for line in lines[1:]]
    return code, rows, out


@pytest.fixture(scope="session")
def scan10(tmp_path_factory):
    return _scan(10, tmp_path_factory)


@pytest.fixture(scope="session")
def scan9(tmp_path_factory):
    return _scan(9, tmp_path_factory)


@pytest.fixture(scope="session")
def verified_book():
    book = RuleBook(CheckPolicy())
    for rule in builtin_rules():
        book.require(rule)
    return book


# -- 1 -------------------------------------------------------------------------

@pytest.mark.acceptance("AC1")
def test_degree_10_table(scan10):
    code, rows, _ = scan10
    assert code == 0
    assert len(rows) == 9
    assert sorted(rows) == sorted(DEGREE_10)
    by_key = {r[:4]: r for r in rows}
    assert by_key[(9, 0, 0, 0)][6:] == (285, 0)
    assert by_key[(7, 2, 0, 0)][6:] == (280, 5)


@pytest.mark.acceptance("AC1")
def test_degree_10_specials_confirmed_over_q(scan10):
    _, _, path = scan10
    specials = [c for c in load_certificates(path) if c.special]
    assert len(specials) == 9
    assert all(c.oracle and c.oracle["confirmed"] for c in specials)


# -- 2 -------------------------------------------------------------------------

@pytest.mark.acceptance("AC2")
def test_degree_9_table(scan9):
    code, rows, _ = scan9
    assert code == 0
    assert len(rows) == 25
    got = {r[:4]: r for r in rows}
    assert set(got) == {r[:4] for r in DEGREE_9}
    for printed in DEGREE_9:
        key = printed[:4]
        if key in MISPRINTED[9]:
            continue
        assert got[key] == printed
    assert got[(6, 0, 0, 0)][5:] == (9, 206, 13)
    assert got[(5, 1, 0, 0)][5:] == (24, 194, 25)


@pytest.mark.acceptance("AC2")
def test_degree_9_misprinted_row(scan9):
    # the published e and d entries of this row contradict its own deg and r
    _, rows, _ = scan9
    printed = next(r for r in DEGREE_9 if r[:4] == (5, 1, 1, 0))
    row = next(r for r in rows if r[:4] == (5, 1, 1, 0))
    N = comb(12, 3)
    assert row[4] == printed[4] == 205 and row[6] == printed[6] == 204
    assert row[5] == N - 1 - printed[4] == 14
    assert row[7] == N - 1 - printed[6] == 15


# -- 3 -------------------------------------------------------------------------

def _kernel_families():
    r2 = [r for r in builtin_rules() if r.rule_id.startswith("R2")]
    r4 = [r for r in builtin_rules() if r.rule_id.startswith("R4")]
    expected_r4 = {(a, b, (91 - 7 * a - 4 * b) // 2) for a in range(14) for b in range(23)
                   if 91 - 7 * a - 4 * b >= 0 and (91 - 7 * a - 4 * b) % 2 == 0}
    return r2, r4, expected_r4


@pytest.mark.acceptance("AC3")
def test_kernel_families_complete():
    r2, r4, expected_r4 = _kernel_families()
    assert {(dict(r.consumed)[4], dict(r.consumed)[3]) for r in r2} == {(a, 22 - 2 * a) for a in range(12)}
    assert {tuple(dict(r.consumed)[m] for m in (5, 4, 3)) for r in r4} == expected_r4


@pytest.mark.acceptance("AC3")
def test_kernels_non_special_with_vdim_minus_one(verified_book):
    for rule in builtin_rules():
        cert = verified_book.certificates[rule.rule_id]
        assert cert.vdim == -1 and not cert.special and cert.rank == cert.N, rule.rule_id


# -- 4 -------------------------------------------------------------------------

@pytest.mark.acceptance("AC4")
@pytest.mark.parametrize("d", [11, 12])
def test_no_special_case_11_21(d):
    assert sweep_11_21(d, CheckPolicy()) == []


# -- 5 -------------------------------------------------------------------------

def _random_small_configs(count, seed, max_degree=6, max_length=60):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        d = int(rng.integers(1, max_degree + 1))
        k = int(rng.integers(1, 7))
        mults = rng.integers(1, min(d + 1, 5) + 1, size=k)
        counts = {}
        for m in mults.tolist():
            counts[m] = counts.get(m, 0) + 1
        c = FatPointConfig.from_counts(d, counts)
        if c.length <= max_length:
            out.append(c)
    return out


@pytest.mark.acceptance("AC5")
def test_fp_rank_equals_exact_rank():
    configs = _random_small_configs(60, 2024)
    assert len(configs) >= 50
    disagreements = []
    for i, c in enumerate(configs):
        em = build_matrix(c, P, 1000 + i)
        if em.rank() != rank_exact(em.integer_matrix(), "bareiss"):
            disagreements.append(c.text())
    assert disagreements == []


# -- 6 -------------------------------------------------------------------------

@pytest.mark.acceptance("AC6")
def test_layer_sum_identity():
    rows = all_layer_sequences()
    assert len(rows) == 10
    assert all(r.total == point_length(3, r.m) for r in rows)


@pytest.mark.acceptance("AC6")
def test_beta_decomposition_bijective():
    quads = [decompose_beta(b) for b in range(15)]
    assert len({q.as_tuple() for q in quads}) == 15
    assert [q.value for q in quads] == list(range(15))


@pytest.mark.acceptance("AC6")
def test_condition_row_counts():
    for m in range(1, 14):
        assert point_length(3, m) == comb(m + 2, 3)
        assert condition_rows((5, 7, 11, 1), m, m + 1, P).shape[0] == comb(m + 2, 3)


@pytest.mark.acceptance("AC6")
def test_homogeneous_and_affine_ranks_agree():
    for i, c in enumerate(_random_small_configs(20, 77)):
        hom = build_matrix(c, P, i)
        aff = build_matrix(c, P, i, affine=True)
        assert rank(hom.matrix) == rank(aff.matrix), c.text()


# -- 7 -------------------------------------------------------------------------

@pytest.mark.acceptance("AC7")
def test_c1_no_counterexample_at_18():
    assert c1_first_counterexample(18) is None


@pytest.mark.acceptance("AC7")
def test_c1_zero_stratum_from_4_to_10():
    zero = c1_stratum(zero=True)
    assert all(c1_first_counterexample(t, zero) is None for t in range(4, 11))


@pytest.mark.acceptance("AC7")
def test_c1_zero_stratum_counterexample_at_3():
    # Expected to fail: the zero stratum has no counterexample for any t >= 0.
    assert c1_first_counterexample(3, c1_stratum(zero=True)) is not None


@pytest.mark.acceptance("AC7")
def test_aritmetico_on_random_tuples():
    rng = np.random.default_rng(60)
    seen = 0
    while seen < 1000:
        d = int(rng.integers(1, 61))
        N = comb(d + 3, 3)
        x = int(rng.integers(0, (N + 13) // 20 + 1))
        y = int(rng.integers(0, (N + 13 - 20 * x) // 10 + 1))
        alpha = (2 * x + y) // 42
        if alpha < 1:
            continue
        w = int(rng.integers(0, alpha))
        room = N + 13 - 35 * w - 20 * x - 10 * y
        if room < 0:
            continue
        z = int(rng.integers(0, room // 4 + 1))
        assert check_aritmetico(d, w, x, y, z) is Verdict.HOLDS, (d, w, x, y, z)
        seen += 1


# -- 8 -------------------------------------------------------------------------

def _random_window_configs(d, count, seed):
    rng = np.random.default_rng(seed)
    N = comb(d + 3, 3)
    out = []
    while len(out) < count:
        w = int(rng.integers(0, N // 35 + 1))
        x = int(rng.integers(0, (N - 35 * w) // 20 + 1))
        y = int(rng.integers(0, (N - 35 * w - 20 * x) // 10 + 1))
        base = 35 * w + 20 * x + 10 * y
        z = max(0, -(-(N - 3 - base) // 4))
        c = FatPointConfig.wxyz(d, w, x, y, z)
        if c.num_points and in_window(c):
            out.append(c)
    return out


@pytest.mark.acceptance("AC8")
@pytest.mark.parametrize("d", [25, 40])
def test_reduction_on_window_cases(d, verified_book):
    exits = 0
    for c in _random_window_configs(d, 200, d):
        trace = reduce(c, verified_book)
        for step in trace.steps:
            assert step.before.length == step.after.length == c.length
        if trace.exit:
            exits += 1
            assert d >= 38 and check_aritmetico(d, *trace.final.counts_wxyz) is Verdict.HOLDS
        else:
            assert satisfies_target(trace.final, "22-37" if d <= 37 else "38-52"), trace.final
    assert not verified_book.rejected


@pytest.mark.acceptance("AC8")
def test_every_builtin_rule_verifies():
    for rule in builtin_rules():
        assert not verify_rule(rule).special


# -- 9 -------------------------------------------------------------------------

@pytest.mark.acceptance("AC9")
def test_certificates_replay_on_degree_10_scan(scan10):
    _, _, path = scan10
    certs = load_certificates(path)
    assert len(certs) == 6213
    outcomes = [verify_certificate(c) for c in certs]
    assert outcomes.count("match") == len(certs)


@pytest.mark.acceptance("AC9")
def test_tampered_rank_detected(scan10):
    _, _, path = scan10
    cert = next(c for c in load_certificates(path) if c.config == "d=10 n=3 5^8 3^1")
    assert verify_certificate(cert) == "match"
    assert verify_certificate(dataclasses.replace(cert, rank=cert.rank + 1)) == "mismatch"


def test_check_exact_matches_cli_rows(scan10):
    # cross-check one row against a direct call
    v, _ = check_exact(FatPointConfig.wxyz(10, 8, 0, 0, 1))
    _, rows, _ = scan10
    assert (8, 0, 0, 1, v.capped_length, v.expected_dim, v.rank, v.dim) in rows


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
