from __future__ import annotations

import itertools
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from fusiontori.errors import NotSimple, NotSkew
from fusiontori.fusion import e8_adjoint, fpdims
from fusiontori.nctorus import (ThetaMatrix, determinant, is_degenerate, pfaffian, sub_pfaffians, theta_e8,
                                theta_from_upper, theta_hi, theta_psu2_15, torus_invariant, trace_range)
from fusiontori.numfield import RATIONALS, hermite_reduce, lattice_equal, phi_G, quantum_integer
from fusiontori.presets import PSU15_THETA_QINTS

mpmath.mp.dps = 40


def q(m):
    return quantum_integer(m, 17)


def mp_q(m):
    return mpmath.sin(m * mpmath.pi / 17) / mpmath.sin(mpmath.pi / 17)


def test_two_by_two_sign_convention():
    th = theta_from_upper(2, {(0, 1): phi_G(1)})
    assert pfaffian(th) == phi_G(1)


def test_four_by_four_expansion():
    e = {(0, 1): 2, (0, 2): 3, (0, 3): 5, (1, 2): 7, (1, 3): 11, (2, 3): 13}
    th = theta_from_upper(4, e)
    # pf = t12 t34 - t13 t24 + t14 t23
    assert pfaffian(th) == 2 * 13 - 3 * 11 + 5 * 7


def test_psu_pfaffian_expansion_with_printed_entries():
    th = theta_psu2_15()
    assert pfaffian(th) == q(2) * q(4) - q(8) * q(10) + q(14) * q(6)


def test_psu_pfaffian_differs_from_minus_q12():
    # mpmath oracle: the printed entries give about -7.2004, while -[12]_q is about -4.3430
    th = theta_psu2_15()
    t = PSU15_THETA_QINTS
    val = mp_q(t[1, 2]) * mp_q(t[3, 4]) - mp_q(t[1, 3]) * mp_q(t[2, 4]) + mp_q(t[1, 4]) * mp_q(t[2, 3])
    assert abs(float(pfaffian(th)) - float(val)) < 1e-12
    assert abs(float(val) - (-7.2004)) < 1e-4
    assert pfaffian(th) != -q(12)
    # reduces to -[2]_q - [7]_q with [m] = [17 - m]
    assert pfaffian(th) == -q(2) - q(7)


def test_no_sign_pattern_of_printed_products_gives_minus_q12():
    for s in itertools.product((1, -1), repeat=3):
        assert s[0] * q(2) * q(4) + s[1] * q(8) * q(10) + s[2] * q(6) * q(14) != -q(12)


def test_re_paired_entries_reach_minus_q12():
    # the same six values on different index pairs: [2][8] - [6][10] + [4][14] = -[12]
    e = {(0, 1): q(2), (2, 3): q(8), (0, 2): q(6), (1, 3): q(10), (0, 3): q(4), (1, 2): q(14)}
    assert pfaffian(theta_from_upper(4, e)) == -q(12)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=6, max_size=6), st.lists(st.integers(1, 16), min_size=6, max_size=6))
def test_pfaffian_squared_is_determinant(c, ms):
    vals = [q(m) * k for m, k in zip(ms, c)]
    keys = list(itertools.combinations(range(4), 2))
    th = theta_from_upper(4, dict(zip(keys, vals)))
    pf = pfaffian(th)
    assert pf * pf == determinant(th)
    rows = [[0.0] * 4 for _ in range(4)]
    for (i, j), v in zip(keys, vals):
        rows[i][j], rows[j][i] = float(v), -float(v)
    A = mpmath.matrix(rows)
    assert abs(float(pf) ** 2 - float(mpmath.det(A))) <= 1e-6 * max(1.0, abs(float(mpmath.det(A))))


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=15, max_size=15))
def test_rational_six_by_six_pf_squared(c):
    keys = list(itertools.combinations(range(6), 2))
    th = theta_from_upper(6, {k: Fraction(v) for k, v in zip(keys, c)})
    assert pfaffian(th) ** 2 == determinant(th)


def test_skewness_enforced():
    one = RATIONALS.one()
    z = RATIONALS.zero()
    with pytest.raises(NotSkew):
        ThetaMatrix(((z, one), (one, z)))
    with pytest.raises(NotSkew):
        ThetaMatrix(((one, z), (z, z)))


def test_degeneracy():
    assert not is_degenerate(theta_e8()).degenerate
    assert not is_degenerate(theta_psu2_15()).degenerate
    assert not is_degenerate(theta_hi([3])).degenerate
    d = is_degenerate(theta_from_upper(2, {(0, 1): Fraction(1, 2)}))
    assert d.degenerate and d.witness is not None


def test_degenerate_irrational_example():
    # theta13 = theta23 = phi, theta12 = 0: x = (1, -1, 0) pairs rationally with everything
    p = phi_G(1)
    th = theta_from_upper(3, {(0, 2): p, (1, 2): p, (0, 1): p * 0})
    d = is_degenerate(th)
    assert d.degenerate
    w = d.witness
    assert w[0] == -w[1] and w[2] == 0
    with pytest.raises(NotSimple):
        trace_range(th)


def test_e8_theta_entries():
    th = theta_e8()
    _, a, b, p = fpdims(e8_adjoint())
    assert th[0, 1] == p and th[0, 2] == a and th[1, 2] == b
    assert th[2, 1] == -b


def test_sub_pfaffians_of_three_by_three():
    th = theta_e8()
    sp = sub_pfaffians(th)
    assert set(sp) == {(), (0, 1), (0, 2), (1, 2)}
    assert sp[()] == 1


def test_e8_trace_range_is_span_of_dims():
    _, a, b, p = fpdims(e8_adjoint())
    assert lattice_equal(trace_range(theta_e8()), [a.field.one(), a, b, p])


def test_hi_trace_range():
    p = phi_G(3)
    assert lattice_equal(trace_range(theta_hi([3])), [p.field.one(), p])


def test_psu_trace_range_rank():
    L = trace_range(theta_psu2_15())
    odd = hermite_reduce([q(2 * a + 1) for a in range(8)])
    assert len(odd) == 8
    assert len(L) == 7
    assert not lattice_equal(L, odd)


def test_torus_invariant_ranks():
    inv = torus_invariant(theta_psu2_15())
    assert inv.k0_rank == inv.k1_rank == 8
    assert not inv.meta["experimental"]
    th5 = theta_from_upper(5, {(i, j): phi_G(1) * (i + 2 * j + 1) for i in range(5) for j in range(i + 1, 5)})
    if not is_degenerate(th5).degenerate:
        assert torus_invariant(th5).meta["experimental"]
