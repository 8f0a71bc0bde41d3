"""NIM-reps: non-negative integer matrix representations of fusion rings.

A right module of rank ``r`` assigns to every simple ``a`` an ``r x r``
matrix with ``M(a)[i][j]`` the multiplicity of ``m_j`` in ``m_i (x) a``, so
``M(a) M(b) = sum_c N_{ab}^c M(c)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidParameter
from .fusion import FusionRing, Index, VerificationReport, fpdims, fusion_matrix, haagerup_izumi
from .intlinalg import matmul, rank, rational_nullspace
from .numfield import AlgebraicReal, phi_G, solve_nullspace

Matrix = list[list[int]]


@dataclass(frozen=True, eq=False)
class NimRep:
    ring: FusionRing
    matrices: tuple[tuple[tuple[int, ...], ...], ...]
    basis: tuple[str, ...]
    name: str = ""

    def __post_init__(self):
        if len(self.matrices) != self.ring.rank:
            raise InvalidParameter("need one matrix per simple object")
        r = len(self.basis)
        for M in self.matrices:
            if len(M) != r or any(len(row) != r for row in M):
                raise InvalidParameter(f"module matrices must be {r}x{r}")

    @property
    def rank(self) -> int:
        return len(self.basis)

    def matrix(self, a: Index) -> Matrix:
        return [list(row) for row in self.matrices[self.ring.index(a)]]

    def with_matrix(self, a: Index, M: Sequence[Sequence[int]]) -> "NimRep":
        mats = list(self.matrices)
        mats[self.ring.index(a)] = tuple(tuple(int(x) for x in row) for row in M)
        return NimRep(self.ring, tuple(mats), self.basis, name=f"{self.name}*")

    def __repr__(self) -> str:
        return f"NimRep({self.name or 'custom'} over {self.ring.name}, rank={self.rank})"


def make_nimrep(ring: FusionRing, matrices: dict, basis: Sequence[str] | None = None, name: str = "") -> NimRep:
    """Build from a ``{label or index: matrix}`` map; every simple must be present."""
    mats: list = [None] * ring.rank
    for key, M in matrices.items():
        mats[ring.index(key)] = tuple(tuple(int(x) for x in row) for row in M)
    if any(m is None for m in mats):
        missing = [ring.labels[i] for i, m in enumerate(mats) if m is None]
        raise InvalidParameter(f"missing module matrices for {missing}")
    r = len(mats[0])
    return NimRep(ring, tuple(mats), tuple(basis or (f"m{i + 1}" for i in range(r))), name)


def _mat_lincomb(terms, r: int) -> Matrix:
    out = [[0] * r for _ in range(r)]
    for coef, M in terms:
        if coef:
            for i in range(r):
                for j in range(r):
                    out[i][j] += coef * M[i][j]
    return out


def verify(nr: NimRep) -> VerificationReport:
    """Check ``M(1) = I``, non-negativity, the representation law and ``M(a*) = M(a)^T``."""
    R, r, L = nr.ring, nr.rank, nr.ring.labels
    mats = [nr.matrix(a) for a in range(R.rank)]
    viol: dict[str, list[str]] = {}
    counts: dict[str, int] = {}

    def note(axiom, msg):
        counts[axiom] = counts.get(axiom, 0) + 1
        viol.setdefault(axiom, [])
        if len(viol[axiom]) < 25:
            viol[axiom].append(msg)

    I = [[int(i == j) for j in range(r)] for i in range(r)]
    if mats[R.unit] != I:
        note("unit", "M(1) is not the identity")
    for a, M in enumerate(mats):
        if any(x < 0 for row in M for x in row):
            note("nonnegativity", f"M({L[a]}) has a negative entry")
        MT = [list(c) for c in zip(*M)]
        if mats[R.dual[a]] != MT:
            note("duality", f"M({L[R.dual[a]]}) != M({L[a]})^T")
    for a, b in itertools.product(range(R.rank), repeat=2):
        lhs = matmul(mats[a], mats[b])
        rhs = _mat_lincomb([(int(R.N[a, b, c]), mats[c]) for c in range(R.rank)], r)
        if lhs != rhs:
            note("representation", f"M({L[a]})M({L[b]}) != sum_c N[{L[a]},{L[b]}]^c M(c)")
    checked = ("unit", "nonnegativity", "duality", "representation")
    return VerificationReport(ok=not counts, checked=checked, violations=viol, counts=counts)


def regular(ring: FusionRing) -> NimRep:
    """The ring acting on itself from the right: ``M(a) = fusion_matrix(a)``."""
    mats = {a: fusion_matrix(ring, a) for a in range(ring.rank)}
    return make_nimrep(ring, mats, ring.labels, name=f"regular({ring.name})")


def hi_rank2(orders: Sequence[int]) -> NimRep:
    """Rank-2 module of the Haagerup-Izumi ring over ``G`` with basis ``(m1, m2)``.

    Invertibles act trivially and every ``g rho`` acts by ``[[|G|, 1], [1, 0]]``.
    """
    ring = haagerup_izumi(orders)
    n = ring.rank // 2
    F = [[n, 1], [1, 0]]
    I = [[1, 0], [0, 1]]
    mats = {a: (I if a < n else F) for a in range(ring.rank)}
    return make_nimrep(ring, mats, ("m1", "m2"), name=f"hi_rank2({ring.name})")


def module_dims(nr: NimRep) -> tuple[AlgebraicReal, ...]:
    """Positive right eigenvector ``d`` with ``M(a) d = FPdim(a) d``, smallest entry 1."""
    dims = fpdims(nr.ring)
    K = dims[0].field
    for x in dims:
        if not x.is_rational():
            K = x.field
            break
    r = nr.rank
    rows = []
    for a in range(nr.ring.rank):
        M = nr.matrix(a)
        da = dims[a]
        for i in range(r):
            rows.append([K(M[i][j]) - (da if i == j else 0) for j in range(r)])
    basis = solve_nullspace(rows)
    if len(basis) != 1:
        raise InvalidParameter(f"module eigenspace has dimension {len(basis)}; module is not indecomposable")
    v = basis[0]
    if v[0].sign() < 0:
        v = [-x for x in v]
    if any(x.sign() <= 0 for x in v):
        raise InvalidParameter("module dimension vector is not strictly positive")
    low = min(v)
    return tuple(x / low for x in v)


def commutant_form(F: Sequence[Sequence[int]]) -> list[list[list[Fraction]]]:
    """QQ-basis of ``{Y : YF = FY}``.

    When ``F`` is non-derogatory the basis ``I, F, ..., F^(n-1)`` is returned;
    otherwise the basis read off the reduced row echelon form.
    """
    n = len(F)
    if any(len(row) != n for row in F):
        raise InvalidParameter("commutant needs a square matrix")
    # unknown Y[p][q] at position p*n + q; equation (YF - FY)[i][j] = 0
    eqs = []
    for i in range(n):
        for j in range(n):
            row = [Fraction(0)] * (n * n)
            for k in range(n):
                row[i * n + k] += F[k][j]
                row[k * n + j] -= F[i][k]
            eqs.append(row)
    null = rational_nullspace(eqs)
    powers = [[[Fraction(int(i == j)) for j in range(n)] for i in range(n)]]
    for _ in range(n - 1):
        powers.append(matmul(powers[-1], [[Fraction(x) for x in row] for row in F]))
    if len(null) == n and rank([[x for row in P for x in row] for P in powers]) == n:
        return powers
    return [[[v[p * n + q] for q in range(n)] for p in range(n)] for v in null]


def in_span(Y: Sequence[Sequence], basis: Sequence[Sequence[Sequence]]) -> bool:
    flat = [[Fraction(x) for row in B for x in row] for B in basis]
    target = [Fraction(x) for row in Y for x in row]
    return rank(flat + [target]) == rank(flat)


def dual_generator_certificate(g: int) -> dict:
    """Solve ``phi^2 = (a + b phi)^2`` over non-negative integers, exactly in ``QQ(phi_g)``.

    In the basis ``(1, phi)`` with ``phi^2 = g phi + 1`` this splits into
    ``a^2 + b^2 = 1`` and ``2ab + g b^2 = g``; the first equation bounds the
    search to ``a, b <= 1``.
    """
    if not isinstance(g, int) or g < 1:
        raise InvalidParameter("g must be a positive integer")
    phi = phi_G(g)
    target = phi * phi
    solutions = []
    rejected = {}
    for a, b in itertools.product(range(2), repeat=2):
        val = (phi * b + a) ** 2
        if val == target:
            solutions.append((a, b))
        else:
            rejected[f"{a},{b}"] = [str(c) for c in (val - target).coords]
    # b = 0 would force phi^2 = a^2 to be rational
    b0_infeasible = not target.is_rational()
    return {"g": g, "solutions": solutions, "rejected": rejected,
            "b0_infeasible_phi_squared_irrational": b0_infeasible,
            "coords_phi_squared": [str(c) for c in target.coords]}


def dual_generator_solve(g: int) -> tuple[int, int]:
    cert = dual_generator_certificate(g)
    if len(cert["solutions"]) != 1:
        raise AssertionError(f"expected a unique solution, found {cert['solutions']}")
    return cert["solutions"][0]


def class_vector(nr: NimRep, w: Sequence[int], C: Index) -> list[int]:
    """``v_i = sum_j w_j M(C)[j][i]``: summands of ``(sum_j w_j m_j) (x) C``."""
    if len(w) != nr.rank:
        raise InvalidParameter(f"weight vector must have length {nr.rank}")
    M = nr.matrix(C)
    return [sum(int(w[j]) * M[j][i] for j in range(nr.rank)) for i in range(nr.rank)]


def class_matrix(nr: NimRep, w: Sequence[int]) -> list[list[int]]:
    """Columns are ``class_vector(nr, w, C)`` for ``C`` in ring order."""
    cols = [class_vector(nr, w, C) for C in range(nr.ring.rank)]
    return [[cols[c][i] for c in range(len(cols))] for i in range(nr.rank)]


__all__ = [
    "NimRep", "make_nimrep", "verify", "regular", "hi_rank2", "module_dims", "commutant_form",
    "in_span", "dual_generator_certificate", "dual_generator_solve", "class_vector", "class_matrix",
]
