from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fusiontori.errors import HypothesisViolation, NeedsAssumption
from fusiontori.fusion import e8_adjoint, fib, fpdims, group_ring, haagerup_izumi, psu2_level
from fusiontori.ktheory import (amplify, connecting_matrix, is_gl_z, is_primitive, match_invariants,
                                nogo_algebraic, nogo_divisibility, positivity, stationary_data,
                                stationary_invariant, trace_data, unit_multiplicity_for)
from fusiontori.nctorus import theta_e8, theta_hi, theta_psu2_15, torus_invariant
from fusiontori.nimrep import class_vector, hi_rank2, regular
from fusiontori.numfield import lattice_equal, phi_G, quantum_integer
from fusiontori.paperchecks import e8_stationary, hi_stationary, psu15_stationary
from fusiontori.presets import E8_CONNECTING, PSU15_CONNECTING


def test_e8_connecting_matrix():
    T = connecting_matrix(e8_stationary())
    assert T == E8_CONNECTING
    assert is_gl_z(T) == (True, 1)


def test_psu_connecting_matrix_agrees_except_one_entry():
    T = connecting_matrix(psu15_stationary())
    diffs = [(i, j) for i in range(8) for j in range(8) if T[i][j] != PSU15_CONNECTING[i][j]]
    assert diffs == [(4, 7)]
    assert T[4][7] == 4 and PSU15_CONNECTING[4][7] == 1


def test_psu_connecting_matrix_is_symmetric_square_of_square():
    # Y1 is self-dual, so M(Y1)^4 is symmetric; compare with numpy
    M = np.array(regular(psu2_level(15)).matrix("Y1"))
    T = np.linalg.matrix_power(M, 4)
    assert (T == T.T).all()
    assert T.tolist() == connecting_matrix(psu15_stationary())
    assert round(np.linalg.det(T)) == 1
    assert round(np.linalg.det(np.array(PSU15_CONNECTING))) == -179


def test_hi_connecting_matrix_is_F4():
    for g in (2, 3, 4):
        F = np.array([[g, 1], [1, 0]])
        assert connecting_matrix(hi_stationary([g])) == np.linalg.matrix_power(F, 4).tolist()


def test_gl_z():
    assert is_gl_z([[2, 0], [0, 1]]) == (False, 2)


def test_primitive():
    assert is_primitive([[1, 1], [1, 0]]) == (True, 2)
    assert is_primitive([[0, 1], [1, 0]])[0] is False


def test_unit_multiplicities():
    assert unit_multiplicity_for(e8_stationary()) == (3, "computed")
    assert unit_multiplicity_for(psu15_stationary()) == (3, "computed")


def test_hi_needs_assumption():
    with pytest.raises(NeedsAssumption):
        unit_multiplicity_for(hi_stationary([3], assume=False))


def test_hi_unit_multiplicity_brute_force():
    # expand rho^4 in HI(Z/3) by repeated fusion on coefficient vectors
    R = haagerup_izumi([3])
    v = np.zeros(R.rank, dtype=int)
    v[R.index("rho")] = 1
    rho = R.index("rho")
    for _ in range(3):
        v = np.einsum("a,ac->c", v, R.N[:, rho, :])
    l, how = unit_multiplicity_for(hi_stationary([3]))
    assert (l, how) == (int(v[R.unit]), "assumed")
    assert l == 4


def test_trace_values_are_dims():
    sd = e8_stationary()
    td = trace_data(sd)
    d = fpdims(sd.nr.ring)
    for C in range(4):
        assert td.trace(class_vector(sd.nr, [1] * 4, C)) == d[C]
    sd = psu15_stationary()
    td = trace_data(sd)
    for a in range(8):
        assert td.trace(class_vector(sd.nr, [1] * 8, a)) == quantum_integer(2 * a + 1, 17)


def test_fib_trace_normalization():
    sd = stationary_data(regular(fib()), None, ["tau", "tau"])
    td = trace_data(sd)
    p = phi_G(1)
    assert list(td.dims) == [1, p]
    assert td.trace([1, 1]) == 1


def test_e8_invariant():
    inv = stationary_invariant(e8_stationary())
    _, a, b, p = fpdims(e8_adjoint())
    assert inv.k1_rank == 4
    assert lattice_equal(list(inv.lattice), [a.field.one(), a, b, p])
    assert inv.order_unit == 1


def test_fib_with_single_tau_violates():
    with pytest.raises(HypothesisViolation):
        stationary_invariant(stationary_data(regular(fib()), None, ["tau"]))


@pytest.mark.parametrize("g", [2, 3, 4])
def test_hi_invariant_structure(g):
    inv = stationary_invariant(hi_stationary([g]))
    p = phi_G(g)
    one = p.field.one()
    assert lattice_equal([x * (p + 1) for x in inv.lattice], [one, p])
    assert lattice_equal(list(fpdims(hi_rank2([g]).ring)), [one, p])
    assert inv.meta["class_span_index"] == g
    # the norm of 1 + phi is g, so no integer rescaling of ZZ + ZZ phi by g reaches tau(ZZ^2)
    norm = (p + 1) * (g - p + 1)
    assert norm == g


def test_e8_matches_torus():
    m = match_invariants(stationary_invariant(e8_stationary()), torus_invariant(theta_e8()))
    assert m.verdict == "isomorphic"


@pytest.mark.parametrize("g", [2, 3, 4])
def test_hi_against_torus_is_stable_not_amplified(g):
    m = match_invariants(stationary_invariant(hi_stationary([g])), torus_invariant(theta_hi([g])))
    assert m.verdict == "stably_isomorphic"
    assert m.scale.sign() > 0


def test_hi_trivial_group_is_isomorphic():
    # g = 1: 1 + phi is a unit, so the scale is absorbed
    m = match_invariants(stationary_invariant(hi_stationary([1])), torus_invariant(theta_hi([1])))
    assert m.verdict == "isomorphic"


def test_amplification_detected():
    I = torus_invariant(theta_e8())
    m = match_invariants(amplify(I, 3), I)
    assert m.label() == "isomorphic_up_to_amplification(3)"
    assert m.amplified_side == "second"
    m = match_invariants(I, amplify(I, 2))
    assert m.label() == "isomorphic_up_to_amplification(2)" and m.amplified_side == "first"


def test_distinct_ranks():
    m = match_invariants(stationary_invariant(e8_stationary()), torus_invariant(theta_hi([2])))
    assert m.verdict == "distinct"


def test_psu_against_torus_not_isomorphic():
    m = match_invariants(stationary_invariant(psu15_stationary()), torus_invariant(theta_psu2_15()))
    assert m.verdict == "distinct"


# -- obstructions --------------------------------------------------------------

@pytest.mark.parametrize("n", range(1, 11))
def test_psu5_obstructed(n):
    assert nogo_divisibility(psu2_level(5), n).obstructed


def test_psu15_divisibility():
    assert [nogo_divisibility(psu2_level(15), n).verdict for n in (1, 2, 3, 4, 5)] == \
        ["obstructed"] * 3 + ["no_obstruction"] * 2


def test_trivial_ring_never_obstructed():
    assert not any(nogo_divisibility(group_ring([1]), n).obstructed for n in range(1, 6))


def test_dependent_dims_not_obstructed_by_divisibility():
    # group rings have all dims 1, hence a rational relation
    r = nogo_divisibility(group_ring([3]), 2)
    assert r.verdict == "no_obstruction" and r.certificate["kernel"]


def test_nogo_algebraic():
    assert nogo_algebraic(fib()).obstructed
    assert nogo_algebraic(haagerup_izumi([3])).obstructed
    assert not nogo_algebraic(group_ring([5])).obstructed


# -- positivity -----------------------------------------------------------------

def test_positivity_examples():
    td = trace_data(e8_stationary())
    assert positivity([1, 1, 1, 1], td) == 1
    assert positivity([-1, 1, 0, 0], td) == 1
    assert positivity([0, 0, 0, 0], td) == 0


E8_TD = trace_data(e8_stationary())
E8_FLOATS = [float(x) for x in E8_TD.trace_vector]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-30, 30), min_size=4, max_size=4))
def test_positivity_matches_float_oracle(v):
    s = sum(x * t for x, t in zip(v, E8_FLOATS))
    if abs(s) > 1e-9:
        assert positivity(v, E8_TD) == (1 if s > 0 else -1)


def test_positive_cone_is_stable_under_connecting_map():
    td = E8_TD
    T = connecting_matrix(e8_stationary())
    v = [-1, 1, 0, 0]
    vT = [sum(v[i] * T[i][j] for i in range(4)) for j in range(4)]
    # tau(vT) = FPdim(X) tau(v)
    assert td.trace(vT) == td.trace(v) * td.eigenvalue
    assert td.eigenvalue == fpdims(e8_adjoint())[1] ** 4
