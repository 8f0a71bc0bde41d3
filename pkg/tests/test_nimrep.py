from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fusiontori.fusion import e8_adjoint, fib, fpdims, psu2_level
from fusiontori.intlinalg import det
from fusiontori.nimrep import (class_matrix, class_vector, commutant_form, dual_generator_certificate,
                               dual_generator_solve, hi_rank2, in_span, module_dims, regular, verify)
from fusiontori.presets import E8_CLASS_MATRIX, PSU15_CLASS_COLUMNS


def test_regular_e8_verifies():
    nr = regular(e8_adjoint())
    assert verify(nr).ok and nr.rank == 4


def test_regular_fib_matrix():
    assert regular(fib()).matrix("tau") == [[0, 1], [1, 1]]


def test_regular_psu_rank():
    assert regular(psu2_level(15)).rank == 8


@pytest.mark.parametrize("orders", [[1], [2], [3], [4], [2, 2], [5]])
def test_hi_rank2_verifies(orders):
    g = int(np.prod(orders))
    nr = hi_rank2(orders)
    assert verify(nr).ok
    F = np.array(nr.matrix("rho"))
    assert F.tolist() == [[g, 1], [1, 0]]
    assert (F @ F == np.eye(2, dtype=int) + g * F).all()


def test_hi_rank2_trivial_group_is_fibonacci():
    assert hi_rank2([1]).matrix("rho") == [[1, 1], [1, 0]]


def test_hi_rank2_wrong_matrix_fails():
    nr = hi_rank2([3])
    bad = nr.with_matrix("rho", [[3, 1], [1, 1]])
    for a in ("g1rho", "g2rho"):
        bad = bad.with_matrix(a, [[3, 1], [1, 1]])
    assert not verify(bad).ok


def test_commutant_examples():
    F = [[3, 1], [1, 0]]
    B = commutant_form(F)
    assert len(B) == 2
    assert B[0] == [[1, 0], [0, 1]] and B[1] == F
    assert len(commutant_form([[1, 0], [0, 1]])) == 4
    assert len(commutant_form([[1, 1], [1, 0]])) == 2


@settings(max_examples=40, deadline=None)
@given(st.integers(-5, 5), st.integers(-5, 5), st.integers(1, 8))
def test_commutant_contains_polynomials_in_F(a, b, g):
    F = [[g, 1], [1, 0]]
    Y = [[a + b * g, b], [b, a]]
    assert in_span(Y, commutant_form(F))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=4, max_size=4), st.integers(1, 8))
def test_commutant_members_commute(c, g):
    F = np.array([[g, 1], [1, 0]], dtype=object)
    B = [np.array(M, dtype=object) for M in commutant_form(F.tolist())]
    Y = sum((ci * M for ci, M in zip(c, B)), np.zeros((2, 2), dtype=object) + Fraction(0))
    assert (Y @ F == F @ Y).all()


@pytest.mark.parametrize("g", [1, 2, 3, 4, 7])
def test_dual_generator(g):
    assert dual_generator_solve(g) == (0, 1)
    cert = dual_generator_certificate(g)
    assert cert["b0_infeasible_phi_squared_irrational"]


def test_dual_generator_brute_force_oracle():
    # plain integer search: a^2 + b^2 = 1 and 2ab + g b^2 = g, a, b <= 10
    for g in (1, 3):
        sols = [(a, b) for a in range(11) for b in range(11) if a * a + b * b == 1 and 2 * a * b + g * b * b == g]
        assert sols == [(0, 1)] == [dual_generator_solve(g)]


def test_class_vectors():
    nr = regular(e8_adjoint())
    w = [1, 1, 1, 1]
    assert class_vector(nr, w, "A") == [1, 3, 4, 1]
    assert class_vector(nr, w, "1") == [1, 1, 1, 1]
    assert class_matrix(nr, w) == E8_CLASS_MATRIX
    assert abs(det(class_matrix(nr, w))) == 1


def test_psu_class_matrix():
    nr = regular(psu2_level(15))
    C = class_matrix(nr, [1] * 8)
    assert class_vector(nr, [1] * 8, "Y7") == [1, 2, 2, 2, 2, 2, 2, 2]
    assert [list(r) for r in zip(*C)] == PSU15_CLASS_COLUMNS
    assert det(C) == 1


def test_fib_class_matrix():
    C = class_matrix(regular(fib()), [1, 1])
    assert C == [[1, 1], [1, 2]] and det(C) == 1


@pytest.mark.parametrize("nr", [regular(e8_adjoint()), hi_rank2([3]), regular(psu2_level(7)), hi_rank2([2, 2])],
                         ids=lambda n: n.name)
def test_module_dims_positive_eigenvector(nr):
    d = module_dims(nr)
    lam = fpdims(nr.ring)
    assert all(x.sign() > 0 for x in d)
    for a in range(nr.ring.rank):
        M = nr.matrix(a)
        for i in range(nr.rank):
            lhs = sum((d[j] * M[i][j] for j in range(nr.rank)), d[0] * 0)
            assert lhs == d[i] * lam[a]
        ev = max(abs(np.linalg.eigvals(np.array(M, dtype=float))))
        assert abs(ev - float(lam[a])) < 1e-9
