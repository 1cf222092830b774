import math

import pytest
from hypothesis import given, settings, strategies as st

from commdet.errors import ParameterError, WindowError
from commdet.multiindex import (
    GradedBasis, Grading, count_up_to, enumerate_slice, mfactorial, shifted, slice_dim, total_degree, unit,
)

from oracles import multi_indices


def test_slice_order_is_descending_lex():
    assert enumerate_slice(2, None, 2) == [(2, 0), (1, 1), (0, 2)]


def test_weighted_slice_dims():
    # grading (1, 2): floor(g/2) + 1 labels per slice
    for g in range(12):
        assert slice_dim(2, (1, 2), g) == g // 2 + 1


def test_helpers():
    assert unit(1, 3) == (0, 1, 0)
    assert shifted((1, 2), 0) == (2, 2)
    assert total_degree((3, 4)) == 7
    assert mfactorial((2, 3)) == 12


def test_grading_validation():
    with pytest.raises(ParameterError):
        Grading((1, 0))
    with pytest.raises(ParameterError):
        GradedBasis(2, 3, grading=(1, 1, 1))


def test_index_of_outside_window():
    B = GradedBasis(2, 3)
    with pytest.raises(WindowError):
        B.index_of((4, 0))
    with pytest.raises(WindowError):
        B.index_of((0, 0), component=1)


def test_fiber_and_member():
    B = GradedBasis(1, 3, fiber=4)
    assert B.dims() == [4, 4, 4, 4]
    assert B.index_of((2,), component=3) == (2, 3)
    anti = GradedBasis(2, 4, member=lambda n: n[0] > n[1], label="anti")
    assert anti.labels(3) == ((3, 0), (2, 1))
    assert anti == GradedBasis(2, 4, member=lambda n: n[0] > n[1], label="anti")


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(0, 7), st.lists(st.integers(1, 3), min_size=4, max_size=4))
def test_counts_match_brute_force(d, N, w):
    weights = tuple(w[:d])
    B = GradedBasis(d, N, weights)
    assert B.total_dim() == count_up_to(d, weights, N) == len(multi_indices(d, N, weights))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(0, 10))
def test_standard_slice_is_binomial(d, k):
    assert len(enumerate_slice(d, None, k)) == math.comb(k + d - 1, d - 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(0, 6))
def test_index_of_roundtrip(d, N):
    B = GradedBasis(d, N)
    for k in range(N + 1):
        for p, a in enumerate(B.labels(k)):
            assert B.index_of(a) == (k, p)
            assert B.degree(a) == k
