"""Row generation engines, shifted rows, and cross-check identities."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import stirval.stirling_core as stirling_mod
from stirval.errors import DomainError, ResourceLimitError
from stirval.stirling_core import (
    ShiftedRow,
    StirlingRow,
    convolution_rhs,
    lemma21_rhs,
    row_product_tree,
    row_recurrence,
    shifted_row_expand,
    shifted_value_sum,
    special_value,
    stirling,
)

ROW_4 = (0, 6, 11, 6, 1)
ROW_5 = (0, 24, 50, 35, 10, 1)
ROW_8 = (0, 5040, 13068, 13132, 6769, 1960, 322, 28, 1)


class TestEngines:
    def test_base_rows(self):
        for engine in (row_recurrence, row_product_tree):
            assert engine(0).coeffs == (1,)
            assert engine(1).coeffs == (0, 1)
            assert engine(4).coeffs == ROW_4
            assert engine(8).coeffs == ROW_8

    def test_engine_tags(self):
        assert row_recurrence(3).engine == "recurrence"
        assert row_product_tree(3).engine == "product_tree"
        assert isinstance(row_recurrence(3), StirlingRow)

    def test_rejects_negative(self):
        with pytest.raises(DomainError):
            row_recurrence(-1)
        with pytest.raises(DomainError):
            row_product_tree(-2)

    def test_row_cap(self, monkeypatch):
        monkeypatch.setattr(stirling_mod, "ROW_CAP", 16)
        with pytest.raises(ResourceLimitError):
            row_recurrence(17)
        with pytest.raises(ResourceLimitError):
            row_product_tree(17)
        assert row_product_tree(16).n == 16

    @settings(deadline=None, max_examples=40)
    @given(st.integers(min_value=0, max_value=128))
    def test_engines_agree(self, n):
        assert row_recurrence(n).coeffs == row_product_tree(n).coeffs

    @settings(deadline=None, max_examples=30)
    @given(st.integers(min_value=2, max_value=100))
    def test_row_invariants(self, n):
        row = row_product_tree(n).coeffs
        assert len(row) == n + 1
        assert row[0] == 0
        assert row[n] == 1
        assert row[1] == math.factorial(n - 1)
        assert row[n - 1] == n * (n - 1) // 2
        assert sum(row) == math.factorial(n)
        # alternating evaluation is the falling factorial at 1: zero for n >= 2
        assert sum(c * (-1) ** k for k, c in enumerate(row)) == 0


class TestStirlingAccessor:
    def test_values(self):
        assert stirling(8, 5) == 1960
        assert stirling(4, 2) == 11
        assert stirling(0, 0) == 1

    def test_out_of_range_is_zero(self):
        assert stirling(5, 7) == 0
        assert stirling(5, -1) == 0
        assert stirling(0, 1) == 0

    def test_rejects_negative_n(self):
        with pytest.raises(DomainError):
            stirling(-1, 0)


class TestShiftedRows:
    def test_examples(self):
        assert shifted_row_expand(4, 4).coeffs == (840, 638, 179, 22, 1)
        assert shifted_row_expand(2, 2).coeffs == (6, 5, 1)
        assert shifted_row_expand(0, 5).coeffs == row_product_tree(5).coeffs

    def test_metadata(self):
        row = shifted_row_expand(3, 2)
        assert isinstance(row, ShiftedRow)
        assert row.m == 3 and row.n == 2
        assert len(row.coeffs) == 3

    def test_empty_product(self):
        assert shifted_row_expand(7, 0).coeffs == (1,)

    def test_rejects_bad_args(self):
        with pytest.raises(DomainError):
            shifted_row_expand(-1, 3)
        with pytest.raises(DomainError):
            shifted_row_expand(2, -1)

    @settings(deadline=None, max_examples=30)
    @given(st.integers(min_value=1, max_value=40), st.integers(min_value=0, max_value=40))
    def test_constant_term_and_congruence(self, m, n):
        row = shifted_row_expand(m, n).coeffs
        # constant term is the rising factorial of m itself
        assert row[0] == math.factorial(m + n - 1) // math.factorial(m - 1)
        plain = row_product_tree(n).coeffs
        for k in range(n + 1):
            assert (row[k] - plain[k]) % m == 0

    @settings(deadline=None, max_examples=20)
    @given(st.integers(min_value=0, max_value=30), st.integers(min_value=0, max_value=30))
    def test_matches_sum_route(self, m, n):
        row = shifted_row_expand(m, n).coeffs
        for k in range(n + 1):
            assert row[k] == shifted_value_sum(m, n, k)


class TestShiftedValueSum:
    def test_examples(self):
        assert shifted_value_sum(2, 2, 1) == 5
        assert shifted_value_sum(4, 4, 0) == 840
        assert shifted_value_sum(3, 4, 4) == 1

    def test_out_of_range_k_is_empty_sum(self):
        assert shifted_value_sum(2, 3, 5) == 0

    def test_rejects_bad_args(self):
        with pytest.raises(DomainError):
            shifted_value_sum(-1, 2, 1)
        with pytest.raises(DomainError):
            shifted_value_sum(2, -1, 0)
        with pytest.raises(DomainError):
            shifted_value_sum(2, 3, -1)


class TestConvolution:
    def test_examples(self):
        assert convolution_rhs(2, 2, 2) == 11
        assert convolution_rhs(4, 4, 1) == 5040
        assert convolution_rhs(0, 5, 3) == 35

    @settings(deadline=None, max_examples=25)
    @given(
        st.integers(min_value=0, max_value=24),
        st.integers(min_value=0, max_value=24),
    )
    def test_reconstructs_combined_row(self, m, n):
        combined = row_product_tree(m + n).coeffs
        for k in range(m + n + 1):
            assert convolution_rhs(m, n, k) == combined[k]


class TestHalfSum:
    def test_examples(self):
        assert lemma21_rhs(8, 5) == 1960
        assert lemma21_rhs(4, 1) == 6
        assert lemma21_rhs(2, 1) == 1

    def test_rejects_even_parity(self):
        # defined only when n + k is odd
        with pytest.raises(DomainError):
            lemma21_rhs(4, 2)
        with pytest.raises(DomainError):
            lemma21_rhs(5, 1)

    @settings(deadline=None, max_examples=25)
    @given(st.integers(min_value=1, max_value=60))
    def test_matches_row_for_odd_parity(self, n):
        row = row_product_tree(n).coeffs
        for k in range(1, n + 1):
            if (n + k) % 2 == 1:
                assert lemma21_rhs(n, k) == row[k]


class TestSpecialValues:
    def test_selectors_match_rows(self):
        for n in range(1, 80):
            row = row_product_tree(n).coeffs
            assert special_value(n, "1") == row[1]
            assert special_value(n, "n-1") == row[n - 1]
            assert special_value(n, "n") == row[n]
            if n >= 2:
                assert special_value(n, "2") == row[2]
                assert special_value(n, "n-2") == row[n - 2]

    def test_examples(self):
        assert special_value(8, "1") == 5040
        assert special_value(8, "2") == 13068
        assert special_value(8, "n-2") == 322
        assert special_value(8, "n-1") == 28
        assert special_value(8, "n") == 1

    def test_rejects_bad_selector(self):
        with pytest.raises(DomainError):
            special_value(5, "3")
        with pytest.raises(DomainError):
            special_value(5, "k")

    def test_rejects_small_n(self):
        with pytest.raises(DomainError):
            special_value(1, "2")
        with pytest.raises(DomainError):
            special_value(1, "n-2")
        with pytest.raises(DomainError):
            special_value(0, "1")
