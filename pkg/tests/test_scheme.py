from math import comb

import pytest
from hypothesis import given, strategies as st

from fatpoints.scheme import (FatPointConfig, classify, delta_bound, point_length, series_size,
                              virtual_dimension)


def test_point_lengths_in_p3():
    assert [point_length(3, m) for m in range(1, 6)] == [1, 4, 10, 20, 35]
    assert point_length(3, 10) == 220
    assert point_length(3, 13) == 455
    assert point_length(2, 4) == 10


def test_series_size():
    assert series_size(3, 10) == 286
    assert series_size(3, 9) == 220
    assert series_size(3, 0) == 1
    with pytest.raises(ValueError):
        series_size(3, -1)


def test_delta_bound():
    assert delta_bound(9, 0, 0, 0) == 13
    assert delta_bound(9, 1, 0, 0) == 8
    assert delta_bound(0, 1, 2, 0) == 4
    assert delta_bound(0, 0, 0, 1) == 1
    with pytest.raises(ValueError):
        delta_bound(0, 0, 0, 0)


def test_config_normalisation():
    c = FatPointConfig(10, ((4, 1), (5, 9), (3, 0)))
    assert c.spec == ((5, 9), (4, 1))
    assert c.text() == "d=10 n=3 5^9 4^1"
    assert c.counts_wxyz == (9, 1, 0, 0)
    assert c.length == 335
    assert c.vdim == 286 - 335 - 1
    with pytest.raises(ValueError):
        FatPointConfig(10, ((5, 1), (5, 2)))


def test_parse_round_trip():
    c = FatPointConfig.parse("d=9 5^6 3 2^2")
    assert c == FatPointConfig.wxyz(9, 6, 0, 1, 2)
    assert FatPointConfig.parse(c.text()) == c
    with pytest.raises(ValueError):
        FatPointConfig.parse("5^9")
    with pytest.raises(ValueError):
        FatPointConfig.parse("d=9 5**2")


@given(st.integers(0, 20), st.dictionaries(st.integers(1, 13), st.integers(0, 30), max_size=5))
def test_parse_inverts_text(d, counts):
    c = FatPointConfig.from_counts(d, counts)
    assert FatPointConfig.parse(c.text()) == c
    assert c.length == sum(k * point_length(3, m) for m, k in counts.items())
    assert len(c.multiplicities) == c.num_points


def test_derived_configs():
    c = FatPointConfig.wxyz(10, 8)
    assert c.with_point(2).counts_wxyz == (8, 0, 0, 1)
    assert c.with_point(5, 2).count(5) == 10
    assert c.with_degree(9).d == 9


def test_classify():
    c = FatPointConfig.wxyz(10, 9)
    v = classify(285, c)
    assert v.special and v.dim == 0 and v.expected_dim == -1 and v.capped_length == 286
    assert not classify(286, c).special
    with pytest.raises(ValueError):
        classify(287, c)
    assert virtual_dimension(c) == -30


@given(st.integers(1, 12), st.integers(0, 40))
def test_classify_identities(d, w):
    c = FatPointConfig.wxyz(d, w)
    expected = min(c.length, comb(d + 3, 3))
    v = classify(expected, c)
    assert not v.special
    assert v.dim == max(v.vdim, -1)
