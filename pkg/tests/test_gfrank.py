from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fatpoints import gfrank
from fatpoints.gfrank import PrimeField, bareiss_rank, is_prime, rank, rank_exact

flint_only = pytest.mark.skipif(gfrank._flint is None, reason="python-flint not installed")


def test_is_prime_small():
    primes = [n for n in range(60) if is_prime(n)]
    assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
    assert is_prime(31991)


def test_field_validation():
    with pytest.raises(ValueError):
        PrimeField(31992)
    with pytest.raises(ValueError):
        PrimeField(2147483659)  # prime, but too big for int64 products
    assert PrimeField(7).inv(3) == 5
    with pytest.raises(ZeroDivisionError):
        PrimeField(7).inv(14)


def test_rank_identity_and_zero():
    assert rank(np.eye(7, dtype=np.int64)) == 7
    assert rank(np.zeros((4, 9), dtype=np.int64)) == 0
    assert rank(np.zeros((0, 3), dtype=np.int64)) == 0


def test_rank_depends_on_characteristic():
    m = [[2, 1], [1, 2]]  # det 3
    assert rank(m, PrimeField(3)) == 1
    assert rank(m, PrimeField(5)) == 2
    assert rank_exact(m) == 2


def test_rank_leaves_input_untouched():
    m = np.arange(12, dtype=np.int64).reshape(3, 4)
    before = m.copy()
    rank(m)
    assert (m == before).all()


def test_low_rank_product():
    rng = np.random.default_rng(5)
    a = rng.integers(0, 31991, (40, 6))
    b = rng.integers(0, 31991, (6, 50))
    m = (a @ b) % 31991
    assert rank(m) == 6
    assert rank(m.T) == 6


def test_lazy_reduction_budget_with_small_prime():
    # p = 2**31 - 1 makes the lazy-reduction budget tiny, exercising the flush path
    p = 2147483647
    rng = np.random.default_rng(1)
    m = rng.integers(0, p, (30, 30))
    assert rank(m, PrimeField(p)) == 30
    m[:, 5] = (2 * m[:, 3] + 7 * m[:, 1]) % p
    assert rank(m, PrimeField(p)) == 29


def test_bareiss_accepts_fractions():
    m = [[Fraction(1, 2), Fraction(1, 3)], [3, 2]]
    assert bareiss_rank(m) == 1
    assert bareiss_rank([[Fraction(1, 2), 1], [0, Fraction(5, 7)]]) == 2


small_int_matrix = st.integers(1, 7).flatmap(
    lambda r: st.integers(1, 7).flatmap(
        lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r)))


@given(small_int_matrix)
@settings(max_examples=200, deadline=None)
def test_bareiss_matches_float_rank_on_small_ints(m):
    assert bareiss_rank(m) == np.linalg.matrix_rank(np.array(m, dtype=float))


@given(small_int_matrix)
@settings(max_examples=200, deadline=None)
def test_fp_rank_never_exceeds_exact(m):
    assert rank(m) <= bareiss_rank(m)
    # entries are tiny, so every minor is far below p and the ranks agree
    assert rank(m) == bareiss_rank(m)


@flint_only
@given(small_int_matrix)
@settings(max_examples=100, deadline=None)
def test_flint_matches_bareiss(m):
    assert rank_exact(m, "flint") == rank_exact(m, "bareiss")


def test_backend_choice():
    assert gfrank.exact_backend_for(10, 10) == "bareiss"
    expected = "flint" if gfrank._flint is not None else "bareiss"
    assert gfrank.exact_backend_for(300, 300) == expected
    with pytest.raises(ValueError):
        rank_exact([[1]], "sympy")
