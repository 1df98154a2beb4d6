"""Tests for integer Smith normal form and the modular solvers."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quditsim.snf import (
    integer_determinant,
    kernel_integer,
    kernel_mod,
    smith_normal_form,
    solve_integer,
    solve_mod,
)


def assert_snf_contract(a, res):
    """USV = A, unimodular transforms, divisibility chain."""
    a = np.asarray(a, dtype=object)
    u, s, v = res.u, res.s, res.v
    assert np.array_equal(u @ s @ v, a)
    assert abs(integer_determinant(u)) == 1
    assert abs(integer_determinant(v)) == 1
    assert np.array_equal(u @ res.u_inv, np.eye(u.shape[0], dtype=object))
    assert np.array_equal(res.v_inv @ v, np.eye(v.shape[0], dtype=object))
    diag = [int(s[i, i]) for i in range(min(s.shape))]
    for i in range(len(diag)):
        for j in range(s.shape[1]):
            if j != i and i < s.shape[0]:
                assert s[i, j] == 0 or i == j
    for prev, cur in zip(diag, diag[1:]):
        assert cur >= 0 and prev >= 0
        if prev != 0:
            assert cur % prev == 0
        else:
            assert cur == 0


class TestGoldenForms:
    """Frozen small cases."""

    def test_identity(self):
        res = smith_normal_form(np.eye(3, dtype=np.int64))
        assert np.array_equal(res.s, np.eye(3, dtype=object))
        assert np.array_equal(res.u, np.eye(3, dtype=object))
        assert np.array_equal(res.v, np.eye(3, dtype=object))

    def test_diag_4_6(self):
        res = smith_normal_form(np.diag([4, 6]))
        assert [int(res.s[i, i]) for i in range(2)] == [2, 12]
        assert_snf_contract(np.diag([4, 6]), res)

    def test_diag_2_4_already_chained(self):
        res = smith_normal_form(np.diag([2, 4]))
        assert [int(res.s[i, i]) for i in range(2)] == [2, 4]

    def test_rectangular(self):
        a = np.array([[2, 4, 4], [-6, 6, 12]])
        res = smith_normal_form(a)
        assert_snf_contract(a, res)
        assert int(res.s[0, 0]) == 2

    def test_zero_matrix(self):
        a = np.zeros((2, 3), dtype=np.int64)
        res = smith_normal_form(a)
        assert not res.s.any()
        assert_snf_contract(a, res)


class TestPropertySuite:
    """Random-matrix contract checks."""

    @given(st.integers(0, 10**6), st.integers(1, 8), st.integers(1, 8))
    @settings(max_examples=120, deadline=None)
    def test_contract(self, seed, rows, cols):
        rng = np.random.default_rng(seed)
        a = rng.integers(-9, 10, size=(rows, cols))
        assert_snf_contract(a, smith_normal_form(a))

    @given(st.integers(0, 10**6))
    @settings(max_examples=40, deadline=None)
    def test_determinant_preserved_up_to_sign(self, seed):
        rng = np.random.default_rng(seed)
        a = rng.integers(-9, 10, size=(4, 4))
        res = smith_normal_form(a)
        det_s = 1
        for i in range(4):
            det_s *= int(res.s[i, i])
        assert abs(det_s) == abs(integer_determinant(a))


class TestModulus:
    """Reduction mod m."""

    def test_congruence(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            a = rng.integers(-9, 10, size=(3, 4))
            res = smith_normal_form(a, modulus=8)
            lhs = (np.asarray(res.u, dtype=np.int64)
                   @ np.asarray(res.s, dtype=np.int64)
                   @ np.asarray(res.v, dtype=np.int64)) % 8
            assert np.array_equal(lhs, a % 8)

    def test_entries_reduced(self):
        res = smith_normal_form(np.diag([4, 6]), modulus=5)
        for m in (res.u, res.s, res.v):
            arr = np.asarray(m, dtype=np.int64)
            assert ((arr >= 0) & (arr < 5)).all()


class TestDeterminant:
    """Exact integer determinant."""

    def test_small_values(self):
        assert integer_determinant(np.array([[2, 1], [1, 1]])) == 1
        assert integer_determinant(np.array([[2, 0], [0, 3]])) == 6

    @given(st.integers(0, 10**6))
    @settings(max_examples=40, deadline=None)
    def test_matches_numpy_on_safe_sizes(self, seed):
        rng = np.random.default_rng(seed)
        a = rng.integers(-5, 6, size=(4, 4))
        assert integer_determinant(a) == round(np.linalg.det(a))


class TestSolvers:
    """Linear systems through the SNF factors."""

    def test_solve_integer_exact(self):
        a = np.array([[2, 0], [0, 3]])
        x = solve_integer(a, [4, 9])
        assert np.array_equal(np.asarray(a, dtype=object) @ x,
                              np.array([4, 9], dtype=object))

    def test_solve_integer_unsolvable(self):
        a = np.array([[2, 0], [0, 2]])
        assert solve_integer(a, [1, 2]) is None

    @given(st.integers(0, 10**6), st.integers(1, 5), st.integers(1, 5))
    @settings(max_examples=60, deadline=None)
    def test_solve_integer_round_trip(self, seed, rows, cols):
        rng = np.random.default_rng(seed)
        a = rng.integers(-6, 7, size=(rows, cols))
        x_true = rng.integers(-4, 5, size=cols)
        b = a @ x_true
        x = solve_integer(a, b)
        assert x is not None
        assert np.array_equal(np.asarray(a, dtype=object) @ x,
                              np.asarray(b, dtype=object))

    def test_kernel_integer(self):
        a = np.array([[1, 2, 3]])
        basis = kernel_integer(a)
        assert len(basis) == 2
        for vec in basis:
            assert np.array_equal(np.asarray(a, dtype=object) @ vec,
                                  np.zeros(1, dtype=object))

    @given(st.integers(0, 10**6), st.sampled_from([4, 6, 8, 9]))
    @settings(max_examples=60, deadline=None)
    def test_solve_mod_round_trip(self, seed, m):
        rng = np.random.default_rng(seed)
        a = rng.integers(0, m, size=(3, 4))
        x_true = rng.integers(0, m, size=4)
        b = (a @ x_true) % m
        x = solve_mod(a, b, m)
        assert x is not None
        assert np.array_equal((np.asarray(a, dtype=np.int64) @ x) % m, b)

    def test_solve_mod_unsolvable(self):
        # 2x = 1 mod 4 has no solution
        assert solve_mod(np.array([[2]]), [1], 4) is None

    @given(st.integers(0, 10**6), st.sampled_from([4, 6, 8]))
    @settings(max_examples=40, deadline=None)
    def test_kernel_mod_members_annihilate(self, seed, m):
        rng = np.random.default_rng(seed)
        a = rng.integers(0, m, size=(2, 4))
        for vec in kernel_mod(a, m):
            assert (np.asarray(a, dtype=np.int64) @ vec % m == 0).all()

    def test_kernel_mod_spans(self):
        # kernel of [2] mod 4 is {0, 2}
        basis = kernel_mod(np.array([[2]]), 4)
        generated = set()
        for k0 in range(4):
            total = 0
            for vec in basis:
                total = (total + k0 * int(vec[0])) % 4
            generated.add(total)
        assert 2 in generated
