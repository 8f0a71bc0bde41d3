from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from fusiontori.errors import InvalidParameter, NotIrreducible
from fusiontori.fusion import e8_adjoint, fpdims
from fusiontori.numfield import (RATIONALS, NumberField, coerce_all, common_field_all, cyclotomic_real_field,
                                 join_fields, lattice_equal, minimal_polynomial, named_field, phi_G,
                                 quantum_integer, rational_kernel, same_real)

mpmath.mp.dps = 40


def mp_qint(m, N):
    return mpmath.sin(m * mpmath.pi / N) / mpmath.sin(mpmath.pi / N)


def close(a, x, tol=1e-12):
    lo, hi = a.embed_interval(60)
    return abs(mpmath.mpf(lo.numerator) / lo.denominator - x) < tol


# -- quantum integers ------------------------------------------------------------

def test_qint_one_is_one():
    assert quantum_integer(1, 17) == 1
    assert quantum_integer(1, 17).is_rational()


@pytest.mark.parametrize("m", range(1, 9))
def test_qint_symmetry(m):
    assert quantum_integer(m, 17) == quantum_integer(17 - m, 17)


def test_qint_2_17_value():
    x = quantum_integer(2, 17)
    assert abs(float(x) - 1.965946) < 5e-7
    assert close(x, 2 * mpmath.cos(mpmath.pi / 17))


@pytest.mark.parametrize("N", [3, 4, 5, 6, 7, 9, 12, 17, 20])
def test_qints_match_sine_ratio(N):
    for m in range(0, 2 * N + 3):
        assert close(quantum_integer(m, N), mp_qint(m, N)), (m, N)


def test_qint_rejects_small_N():
    with pytest.raises(InvalidParameter):
        quantum_integer(2, 2)


def test_cyclotomic_field_degree_is_half_totient():
    for N in (5, 7, 12, 17):
        assert cyclotomic_real_field(N).degree == sympy.totient(2 * N) // 2


# -- phi_G -----------------------------------------------------------------------

def test_phi_1_is_golden_ratio():
    assert minimal_polynomial(phi_G(1)) == (-1, -1, 1)
    assert close(phi_G(1), (1 + mpmath.sqrt(5)) / 2)


def test_phi_3_defining_equation():
    p = phi_G(3)
    assert (p * p - 3 * p - 1).is_zero()
    assert close(p, (3 + mpmath.sqrt(13)) / 2)


def test_phi_2_value():
    assert abs(float(phi_G(2)) - 2.414214) < 5e-7


def test_phi_4_is_quadratic():
    assert phi_G(4).field.degree == 2
    assert minimal_polynomial(phi_G(4)) == (-1, -4, 1)


# -- minimal polynomials -----------------------------------------------------------

def test_e8_minpolys():
    _, a, b, t = fpdims(e8_adjoint())
    assert minimal_polynomial(a) == (1, 3, -1, -3, 1)
    assert minimal_polynomial(b) == (1, 1, -4, -4, 1)
    assert minimal_polynomial(t) == (-1, -1, 1)


def test_minpoly_of_rational():
    assert minimal_polynomial(RATIONALS(1)) == (-1, 1)
    assert minimal_polynomial(RATIONALS(Fraction(2, 3))) == (-2, 3)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=8, max_size=8))
def test_minpoly_annihilates_and_is_irreducible(coords):
    x = cyclotomic_real_field(17).element(coords)
    p = minimal_polynomial(x)
    acc = x.field.zero()
    for c in reversed(p):
        acc = acc * x + c
    assert acc.is_zero()
    assert sympy.Poly(list(reversed(p)), sympy.Symbol("x")).is_irreducible


def test_reducible_minpoly_rejected():
    with pytest.raises(NotIrreducible):
        NumberField([-1, 0, 1], (Fraction(1, 2), Fraction(2)))


# -- rational kernels ----------------------------------------------------------------

@pytest.mark.parametrize("N", [5, 7, 13, 17])
def test_qints_rationally_independent(N):
    qs = [quantum_integer(m, N) for m in range(1, (N - 1) // 2 + 1)]
    assert rational_kernel(qs) == []


def test_kernel_of_phi_powers():
    p = phi_G(1)
    assert rational_kernel([p.field.one(), p, p * p]) == [[1, 1, -1]]


def test_kernel_of_constructed_dependence():
    a, b = quantum_integer(1, 17), quantum_integer(2, 17)
    assert rational_kernel([a, b, a + b]) == [[1, 1, -1]]


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_kernel_annihilates(c):
    q = [quantum_integer(m, 13) for m in (1, 2, 3)]
    extra = q[0] * c[0] + q[1] * c[1] + q[2] * c[2]
    ker = rational_kernel(q + [extra])
    for v in ker:
        s = sum((x * k for x, k in zip(q + [extra], v)), q[0] * 0)
        assert s.is_zero()
    assert len(ker) == 1


# -- joins -----------------------------------------------------------------------

def test_join_same_field_is_identity():
    F = phi_G(1).field
    K, a, b = join_fields(F, F)
    assert K.degree == 2
    assert a == F.generator() and b == F.generator()


def test_join_phi_alpha_degree():
    _, alpha, _, _ = fpdims(e8_adjoint())
    F = NumberField([1, 3, -1, -3, 1], _box(alpha))
    K, _, _ = join_fields(phi_G(1).field, F)
    assert K.degree % 4 == 0


def _box(x):
    lo, hi = x.embed_interval(30)
    return lo, hi


def test_join_alpha_beta_float_crosscheck():
    x = sympy.Symbol("x")
    ra = max(sympy.Poly(x**4 - 3 * x**3 - x**2 + 3 * x + 1).real_roots())
    rb = max(sympy.Poly(x**4 - 4 * x**3 - 4 * x**2 + x + 1).real_roots())
    FA = NumberField([1, 3, -1, -3, 1], (Fraction(29, 10), Fraction(3)))
    FB = NumberField([1, 1, -4, -4, 1], (Fraction(4), Fraction(5)))
    a, b = common_field_all([FA.generator(), FB.generator()])
    want = sympy.N(ra, 30) + sympy.N(rb, 30)
    lo, hi = (a + b).embed_interval(50)
    assert abs(float(lo) - float(want)) < 1e-9


def test_comparisons():
    p = phi_G(1)
    assert (p - 1).sign() > 0
    assert (p - p).is_zero()
    # [9]_q equals [8]_q at N = 17; [7]_q < [8]_q
    assert (quantum_integer(8, 17) - quantum_integer(9, 17)).is_zero()
    assert (quantum_integer(7, 17) - quantum_integer(8, 17)).sign() < 0


def test_same_real_across_fields():
    # 2 cos(pi/5) is the golden ratio
    assert same_real(quantum_integer(2, 5), phi_G(1))
    assert not same_real(quantum_integer(2, 7), phi_G(1))


def test_named_fields():
    assert named_field("cos_pi_over_17") == cyclotomic_real_field(17)
    assert named_field("phi_3") == phi_G(3).field
    with pytest.raises(InvalidParameter):
        named_field("bogus")


# -- arithmetic properties ---------------------------------------------------------

coords8 = st.lists(st.integers(-6, 6), min_size=8, max_size=8)


@settings(max_examples=30, deadline=None)
@given(coords8, coords8)
def test_product_enclosure(ca, cb):
    K = cyclotomic_real_field(17)
    a, b = K.element(ca), K.element(cb)
    prod = a * b
    pl, ph = prod.embed_interval(30)
    al, ah = a.embed_interval(50)
    bl, bh = b.embed_interval(50)
    c = [al * bl, al * bh, ah * bl, ah * bh]
    # the true product sits in both boxes, so they overlap
    assert max(pl, min(c)) <= min(ph, max(c))


@settings(max_examples=30, deadline=None)
@given(coords8, coords8, coords8)
def test_field_laws(ca, cb, cc):
    K = cyclotomic_real_field(17)
    a, b, c = K.element(ca), K.element(cb), K.element(cc)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    if not a.is_zero():
        assert (a * a.inverse()) == 1


@settings(max_examples=30, deadline=None)
@given(coords8)
def test_float_matches_mpmath(ca):
    K = cyclotomic_real_field(17)
    a = K.element(ca)
    g = 2 * mpmath.cos(mpmath.pi / 17)
    want = sum(c * g**i for i, c in enumerate(ca))
    assert abs(float(a) - float(want)) <= 1e-9 * max(1.0, abs(float(want)))


def test_lattice_equal_detects_scaling():
    p = phi_G(1)
    one = p.field.one()
    assert lattice_equal([one, p], [one + p, p])
    assert not lattice_equal([one, p], [one * 2, p])


def test_coerce_rationals():
    K = cyclotomic_real_field(7)
    out = coerce_all([K.generator(), 3, Fraction(1, 2)])
    assert out[1] == 3 and out[2] == Fraction(1, 2)
    assert all(x.field == K for x in out)
