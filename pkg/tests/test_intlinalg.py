from __future__ import annotations

from fractions import Fraction

import sympy
from hypothesis import given, settings, strategies as st

from fusiontori.intlinalg import (column_lattice_index, det, hnf, hnf_with_transform, integer_left_kernel,
                                  matmul, primitive_integer_vector, rank, rational_nullspace)

small = st.integers(-9, 9)


def mats(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: mats(n, n)))
def test_det_matches_sympy(A):
    assert det(A) == sympy.Matrix(A).det()


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(lambda c: mats(r, c))))
def test_hnf_transform_and_shape(A):
    H, U = hnf_with_transform(A)
    assert matmul(U, A) == H
    assert abs(det(U)) == 1
    # nonzero rows come first and pivots move strictly right and are positive
    piv = []
    for row in H:
        nz = [j for j, x in enumerate(row) if x]
        if nz:
            piv.append(nz[0])
            assert row[nz[0]] > 0
    assert piv == sorted(set(piv))
    assert len(piv) == sympy.Matrix(A).rank()


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda r: mats(r, 3)))
def test_hnf_is_canonical_under_row_operations(A):
    B = [list(r) for r in A]
    if len(B) > 1:
        B[0] = [x + 2 * y for x, y in zip(B[0], B[1])]
        B[0], B[-1] = B[-1], B[0]
    assert hnf(A) == hnf(B)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5).flatmap(lambda r: mats(r, 2)))
def test_left_kernel(A):
    K = integer_left_kernel(A)
    for v in K:
        assert all(sum(v[i] * A[i][j] for i in range(len(A))) == 0 for j in range(2))
    assert len(K) == len(A) - sympy.Matrix(A).rank()


def test_column_lattice_index():
    assert column_lattice_index([[1, 0], [0, 1]]) == 1
    assert column_lattice_index([[2, 0], [0, 3]]) == 6
    assert column_lattice_index([[1, 3], [1, 1]]) == 2


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda r: mats(r, 4)))
def test_rational_nullspace(A):
    rows = [[Fraction(x) for x in r] for r in A]
    N = rational_nullspace(rows, ncols=4)
    assert len(N) == 4 - rank(rows)
    for v in N:
        assert all(sum(r[j] * v[j] for j in range(4)) == 0 for r in rows)


def test_primitive_integer_vector():
    assert primitive_integer_vector([Fraction(1, 2), Fraction(-1, 3)]) == [3, -2]
