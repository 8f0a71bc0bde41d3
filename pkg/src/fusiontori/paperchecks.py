"""The reproduction suite: every printed identity, recomputed and compared.

Each ``check_*`` function appends named checks to a :class:`Report`. Printed
values come from :mod:`fusiontori.presets`; nothing here is tuned to make a
comparison succeed.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Callable

import mpmath

from . import atmodel, fusion, ktheory, nctorus, nimrep
from .errors import FusionToriError
from .intlinalg import det, matmul
from .numfield import (hermite_reduce, lattice_equal, minimal_polynomial, phi_G, quantum_integer,
                       rational_kernel)
from .presets import (E8_CLASS_COLUMNS, E8_CONNECTING, E8_MINPOLYS, HI_GROUPS, PSU15_CLASS_COLUMNS,
                      PSU15_CONNECTING, PSU15_PFAFFIAN_CLAIM)
from .report import Report


def _diff(A, B) -> list[list[int]]:
    """1-based positions where two matrices differ."""
    return [[i + 1, j + 1] for i, (ra, rb) in enumerate(zip(A, B)) for j, (x, y) in enumerate(zip(ra, rb))
            if x != y]


def _transpose(M):
    return [list(r) for r in zip(*M)]


# -- E8 ------------------------------------------------------------------------

def e8_stationary():
    return ktheory.stationary_data(nimrep.regular(fusion.e8_adjoint()), None, ["A"] * 4)


def check_e8(rep: Report) -> None:
    R = fusion.e8_adjoint()
    T = fusion.word_matrix(R, ["A"] * 4)
    gl, d = ktheory.is_gl_z(T)
    rep.add("e8.connecting_matrix", T == E8_CONNECTING and gl,
            computed=T, printed=E8_CONNECTING, differences=_diff(T, E8_CONNECTING), determinant=d)

    C = nimrep.class_matrix(nimrep.regular(R), [1] * R.rank)
    cols = _transpose(C)
    dC = det(C)
    rep.add("e8.class_matrix", cols == E8_CLASS_COLUMNS and abs(dC) == 1,
            computed_columns=cols, printed_columns=E8_CLASS_COLUMNS, determinant=dC)

    dims = fusion.fpdims(R)
    got = {lab: minimal_polynomial(dims[R.index(lab)]) for lab in ("A", "B", "tau")}
    rep.add("e8.minimal_polynomials", all(tuple(got[k]) == tuple(v) for k, v in E8_MINPOLYS.items()),
            computed={k: list(v) for k, v in got.items()},
            printed={k: list(v) for k, v in E8_MINPOLYS.items()}, order="lowest degree first")

    th = nctorus.theta_e8()
    dg = nctorus.is_degenerate(th)
    rep.add("e8.theta_nondegenerate", not dg.degenerate,
            witness=list(dg.witness) if dg.witness else None, note=list(th.notes))

    inv_b = ktheory.stationary_invariant(e8_stationary())
    inv_a = nctorus.torus_invariant(th)
    m = ktheory.match_invariants(inv_b, inv_a)
    rep.add("e8.invariant_match", m.verdict == "isomorphic", expected="isomorphic", **m.to_dict())


# -- PSU(2)_15 -----------------------------------------------------------------

def psu15_stationary():
    return ktheory.stationary_data(nimrep.regular(fusion.psu2_level(15)), None, ["Y1"] * 4)


def check_psu15(rep: Report) -> None:
    R = fusion.psu2_level(15)
    T = fusion.word_matrix(R, ["Y1"] * 4)
    rep.add("psu2_15.connecting_matrix", T == PSU15_CONNECTING,
            computed=T, printed=PSU15_CONNECTING, differences=_diff(T, PSU15_CONNECTING),
            computed_determinant=det(T), printed_determinant=det(PSU15_CONNECTING),
            computed_symmetric=T == _transpose(T))

    C = nimrep.class_matrix(nimrep.regular(R), [1] * R.rank)
    cols = _transpose(C)
    rep.add("psu2_15.class_columns", cols == PSU15_CLASS_COLUMNS,
            computed_columns=cols, printed_columns=PSU15_CLASS_COLUMNS,
            differences=_diff(cols, PSU15_CLASS_COLUMNS))
    rep.add("psu2_15.class_determinant", det(C) == 1, determinant=det(C))

    th = nctorus.theta_psu2_15()
    pf = nctorus.pfaffian(th)
    claim = quantum_integer(-PSU15_PFAFFIAN_CLAIM, 17) * (-1 if PSU15_PFAFFIAN_CLAIM < 0 else 1)
    rep.add("psu2_15.pfaffian_claim", pf == claim,
            computed=pf, computed_float=repr(float(pf)), claimed="-[12]_q", claimed_float=repr(float(claim)))
    dt = nctorus.determinant(th)
    rep.add("psu2_15.pfaffian_squared", pf * pf == dt, determinant=dt)

    odd = [quantum_integer(2 * a + 1, 17) for a in range(8)]
    L_odd = hermite_reduce(odd)
    L_tr = nctorus.trace_range(th)
    rep.add("psu2_15.trace_lattice", lattice_equal(L_odd, L_tr),
            rank_odd_qints=len(L_odd), rank_trace_range=len(L_tr))


# -- rational independence -----------------------------------------------------

def check_independence(rep: Report) -> None:
    for N in (5, 7, 13, 17):
        qs = [quantum_integer(m, N) for m in range(1, (N - 1) // 2 + 1)]
        ker = rational_kernel(qs)
        rep.add(f"independence.N{N:02d}", not ker, count=len(qs), kernel=ker)


# -- no-go -----------------------------------------------------------------------

def check_nogo(rep: Report) -> None:
    psu5 = fusion.psu2_level(5)
    bad = [n for n in range(1, 11) if not ktheory.nogo_divisibility(psu5, n).obstructed]
    rep.add("nogo.psu2_5_divisibility", not bad, n_range=[1, 10], not_obstructed=bad)
    psu15 = fusion.psu2_level(15)
    v = {n: ktheory.nogo_divisibility(psu15, n).verdict for n in (1, 2, 3, 4)}
    rep.add("nogo.psu2_15_divisibility",
            all(v[n] == "obstructed" for n in (1, 2, 3)) and v[4] == "no_obstruction", verdicts=v)
    for name, ring, want in (("fib", fusion.fib(), "obstructed"),
                             ("hi_Z3", fusion.haagerup_izumi([3]), "obstructed"),
                             ("group_Z5", fusion.group_ring([5]), "no_obstruction")):
        r = ktheory.nogo_algebraic(ring)
        rep.add(f"nogo.algebraic_{name}", r.verdict == want, verdict=r.verdict, expected=want, **r.certificate)


# -- Haagerup-Izumi --------------------------------------------------------------

def hi_stationary(orders, assume: bool = True):
    return ktheory.stationary_data(nimrep.hi_rank2(orders), [1, 1], ["rho"] * 4, "hi_hat" if assume else None)


def check_hi(rep: Report, groups: dict[str, list[int]] | None = None) -> None:
    for gname, orders in (groups or HI_GROUPS).items():
        g = 1
        for o in orders:
            g *= o
        p = f"hi.{gname}"
        nr = nimrep.hi_rank2(orders)
        vr = nimrep.verify(nr)
        F = nr.matrix("rho")
        F2 = matmul(F, F)
        rel = F2 == [[1 + g * F[0][0], g * F[0][1]], [g * F[1][0], 1 + g * F[1][1]]]
        rep.add(f"{p}.module", vr.ok and rel, verify=vr.summary(), rho_squared=F2)

        basis = nimrep.commutant_form(F)
        I = [[1, 0], [0, 1]]
        is_iF = (len(basis) == 2 and [[int(x) for x in r] for r in basis[0]] == I
                 and [[int(x) for x in r] for r in basis[1]] == F)
        rep.add(f"{p}.commutant", is_iF, basis=[[[str(x) for x in r] for r in B] for B in basis])

        sol = nimrep.dual_generator_solve(g)
        rep.add(f"{p}.dual_generator", sol == (0, 1), solution=list(sol))

        sd = hi_stationary(orders)
        l, how = ktheory.unit_multiplicity_for(sd)
        rep.add(f"{p}.unit_multiplicity", "assumed" if how == "assumed" else "pass",
                unit_multiplicity=l, source=how, assumption="dual ring taken as HI of the dual group")

        inv_b = ktheory.stationary_invariant(sd)
        phi = phi_G(g)
        target = [phi.field.one(), phi]
        dims_ok = lattice_equal(list(fusion.fpdims(nr.ring)), target)
        # the trace lattice is tau(ZZ^2), a positive rescaling of ZZ + ZZ phi
        scaled_ok = lattice_equal([x * (phi + 1) for x in inv_b.lattice], target)
        rep.add(f"{p}.lattice", dims_ok and scaled_ok, dims_span_is_Z_plus_Z_phi=dims_ok,
                trace_lattice_times_1_plus_phi_is_Z_plus_Z_phi=scaled_ok,
                class_span_index=inv_b.meta["class_span_index"])

        inv_a = nctorus.torus_invariant(nctorus.theta_hi(orders))
        m = ktheory.match_invariants(inv_b, inv_a)
        want = f"isomorphic_up_to_amplification({g})"
        rep.add(f"{p}.amplification", m.label() == want and m.amplified_side == "second",
                expected=want, expected_side="second", **m.to_dict())

        rep.add(f"{p}.center_positive", all(x > 0 for r in F2 for x in r), F_squared=F2)


# -- AT model ------------------------------------------------------------------

AT_WEIGHT_SWEEP = (
    (2, {"1": 1, "x": 1}),
    (3, {"1": Fraction(1, 2), "x": Fraction(1, 2)}),
    (3, {"1": 1, "x": 2, "y": 3}),
    (4, {"1": 5, "x": 1}),
    (5, {"1": 1, "x": Fraction(1, 3)}),
)


def check_atmodel(rep: Report, K: int = 12) -> None:
    z = atmodel.LaurentPoly.monomial(1)
    bad_unitary, bad_cp, bad_wind, bad_nu = [], [], [], []
    for l in range(2, 7):
        for others in ((), (1,), (2, 1)):
            su = atmodel.ShiftUnitary(l, others)
            W = atmodel.w_matrix(su)
            if not W.is_unitary():
                bad_unitary.append([l, list(others)])
            if atmodel.det_winding(W) != 1:
                bad_wind.append([l, list(others), "W"])
        cp = atmodel.unit_block_charpoly(l)
        want = {l: atmodel.ONE, 0: -z}
        if {k: v for k, v in cp.items() if not v.is_zero()} != want:
            bad_cp.append(l)
    rep.add("atmodel.unitary", not bad_unitary, failures=bad_unitary)
    rep.add("atmodel.charpoly", not bad_cp, failures=bad_cp, expected="lambda^l - z")

    for l in (2, 3):
        su = atmodel.ShiftUnitary(l, (1,))
        W = atmodel.w_matrix(su)
        for a, b in ((1, 1), (2, 3), (-1, 4), (5, -2)):
            Wa, Wb = atmodel.w_power(su, a), atmodel.w_power(su, b)
            if atmodel.det_winding(Wa @ Wb) != atmodel.det_winding(Wa) + atmodel.det_winding(Wb):
                bad_wind.append([l, a, b])
        for a_dim in (1, 2):
            if atmodel.det_winding(W.kron_identity(a_dim)) != a_dim:
                bad_wind.append([l, "kron", a_dim])
        for j, k in itertools.product(range(-K, K + 1), repeat=2):
            if abs(j + k) > K:
                continue
            if atmodel.nu_generator(su, j) @ atmodel.nu_generator(su, k) != atmodel.nu_generator(su, j + k):
                bad_nu.append([l, j, k])
    rep.add("atmodel.winding", not bad_wind, failures=bad_wind)
    rep.add("atmodel.nu_multiplicative", not bad_nu, failures=bad_nu[:10], K=K)

    bad_mu = []
    for l, w in AT_WEIGHT_SWEEP:
        su = atmodel.ShiftUnitary(l, tuple(1 for k in w if k != "1"))
        rec = atmodel.trace_recursion(su, w, K)
        ora = atmodel.direct_block_trace(su, w, K)
        if rec != ora:
            bad_mu.append({"l": l, "k": [k for k in rec if rec[k] != ora[k]]})
    rep.add("atmodel.trace_recursion", not bad_mu, failures=bad_mu, K=K, sweeps=len(AT_WEIGHT_SWEEP))

    cases = [(3, 1, Fraction(3)), (3, 1, Fraction(2)), (2, 10, Fraction(1, 100)), (2, 5, Fraction(1, 10)),
             (7, 3, Fraction(1, 50)), (2, 1, Fraction(314159, 100000)), (2, 1, Fraction(314160, 100000))]
    bad_d = []
    with mpmath.workdps(60):
        for l, depth, eps in cases:
            gap = 2 * mpmath.pi / mpmath.mpf(l) ** depth
            want = bool(gap <= mpmath.mpf(eps.numerator) / eps.denominator)
            if atmodel.roots_density_check(l, depth, eps) != want:
                bad_d.append([l, depth, str(eps)])
    rep.add("atmodel.density", not bad_d, failures=bad_d, cases=len(cases))


# -- axioms ----------------------------------------------------------------------

def axiom_oracle(ring: fusion.FusionRing) -> bool:
    """Independent brute-force check of the fusion-ring axioms with plain loops."""
    N = [[[int(ring.N[a, b, c]) for c in range(ring.rank)] for b in range(ring.rank)] for a in range(ring.rank)]
    r, u, dual = ring.rank, ring.unit, ring.dual
    rng = range(r)
    if any(N[a][b][c] < 0 for a in rng for b in rng for c in rng):
        return False
    if any(N[u][a][b] != (a == b) or N[a][u][b] != (a == b) for a in rng for b in rng):
        return False
    if any(dual[dual[a]] != a for a in rng) or any(N[a][b][u] != (b == dual[a]) for a in rng for b in rng):
        return False
    for a in rng:
        for b in rng:
            for c in rng:
                for d in rng:
                    if sum(N[a][b][e] * N[e][c][d] for e in rng) != sum(N[b][c][f] * N[a][f][d] for f in rng):
                        return False
                if N[a][b][c] != N[c][dual[b]][a] or N[a][b][c] != N[dual[a]][c][b]:
                    return False
    return True


def constructor_instances() -> list[tuple[str, Callable[[], fusion.FusionRing]]]:
    out: list[tuple[str, Callable]] = []
    out += [(f"su2:{k}", lambda k=k: fusion.su2_level(k)) for k in range(1, 22)]
    out += [(f"psu2:{k}", lambda k=k: fusion.psu2_level(k)) for k in range(1, 22, 2)]
    groups = [[1], [2], [3], [4], [5], [6], [7], [8], [2, 2], [2, 4], [2, 2, 2]]
    out += [(f"group:{g}", lambda g=g: fusion.group_ring(g)) for g in groups]
    out += [(f"hi:{g}", lambda g=g: fusion.haagerup_izumi(g)) for g in groups]
    out += [("e8", fusion.e8_adjoint), ("fib", fusion.fib)]
    return out


def mutate(ring: fusion.FusionRing, rnd: random.Random) -> fusion.FusionRing:
    r = ring.rank
    a, b, c = (rnd.randrange(r) for _ in range(3))
    old = int(ring.N[a, b, c])
    new = rnd.choice([v for v in range(-1, old + 3) if v != old])
    return ring.with_constant(a, b, c, new)


def check_axioms(rep: Report, mutations: int = 400, seed: int = 12) -> None:
    failed = [name for name, make in constructor_instances() if not fusion.verify(make()).ok]
    rep.add("axioms.constructors", not failed, failures=failed, instances=len(constructor_instances()))

    rnd = random.Random(seed)
    small = [make() for name, make in constructor_instances()
             if name in ("fib", "e8", "su2:3", "su2:4", "psu2:5", "group:[3]", "group:[2, 2]", "hi:[2]", "hi:[3]")]
    disagree, still_valid = [], 0
    for _ in range(mutations):
        M = mutate(rnd.choice(small), rnd)
        v, o = fusion.verify(M).ok, axiom_oracle(M)
        still_valid += o
        if v != o:
            disagree.append(M.name)
    rep.add("axioms.mutations", not disagree, mutations=mutations, seed=seed, disagreements=disagree,
            mutated_instances_that_are_rings=still_valid,
            reading="verify must flag exactly the mutated tables that violate an axiom")


SUITE: tuple[tuple[str, Callable[[Report], None]], ...] = (
    ("e8", check_e8), ("psu2_15", check_psu15), ("independence", check_independence), ("nogo", check_nogo),
    ("hi", check_hi), ("atmodel", check_atmodel), ("axioms", check_axioms),
)


def reproduce(rep: Report) -> Report:
    for group, fn in SUITE:
        try:
            fn(rep)
        except FusionToriError as e:
            rep.add(f"{group}.error", "error", error=f"{type(e).__name__}: {e}")
    return rep
