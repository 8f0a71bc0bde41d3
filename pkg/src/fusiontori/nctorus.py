"""Noncommutative tori: skew matrices, degeneracy, sub-Pfaffians and trace ranges."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .errors import NotSimple, NotSkew
from .fusion import e8_adjoint, fpdims
from .intlinalg import rational_nullspace
from .ktheory import ElliottInvariant
from .numfield import AlgebraicReal, common_field_all, hermite_reduce, phi_G, quantum_integer


@dataclass(frozen=True, eq=False)
class ThetaMatrix:
    entries: tuple[tuple[AlgebraicReal, ...], ...]
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self):
        n = len(self.entries)
        if any(len(row) != n for row in self.entries):
            raise NotSkew("theta must be square")
        flat = common_field_all([x for row in self.entries for x in row]) if n else []
        rows = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
        for i in range(n):
            if not rows[i][i].is_zero():
                raise NotSkew(f"diagonal entry ({i + 1},{i + 1}) is nonzero")
            for j in range(i + 1, n):
                if not (rows[i][j] + rows[j][i]).is_zero():
                    raise NotSkew(f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) are not negatives")
        object.__setattr__(self, "entries", rows)

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def field(self):
        return self.entries[0][0].field

    def __getitem__(self, ij: tuple[int, int]) -> AlgebraicReal:
        return self.entries[ij[0]][ij[1]]


def theta_from_upper(n: int, upper: Mapping[tuple[int, int], AlgebraicReal | int | Fraction],
                     notes: Sequence[str] = ()) -> ThetaMatrix:
    """Skew completion of a strict upper triangle given by 0-based ``(i, j)`` keys."""
    vals = list(upper.values())
    lifted = common_field_all([v for v in vals if isinstance(v, AlgebraicReal)]) if any(
        isinstance(v, AlgebraicReal) for v in vals) else []
    it = iter(lifted)
    table = {}
    for key, v in upper.items():
        table[key] = next(it) if isinstance(v, AlgebraicReal) else v
    K = lifted[0].field if lifted else None
    from .numfield import RATIONALS
    K = K or RATIONALS
    z = K.zero()
    rows = [[z] * n for _ in range(n)]
    for (i, j), v in table.items():
        if not i < j:
            raise NotSkew("upper-triangle keys need i < j")
        x = v if isinstance(v, AlgebraicReal) else K(v)
        rows[i][j] = x
        rows[j][i] = -x
    return ThetaMatrix(tuple(tuple(r) for r in rows), tuple(notes))


@dataclass(frozen=True)
class Degeneracy:
    degenerate: bool
    witness: tuple[Fraction, ...] | None
    components: int


def is_degenerate(theta: ThetaMatrix) -> Degeneracy:
    """Decompose ``Theta = Theta_0 + sum_t b_t Theta_t`` over the power basis.

    ``x`` pairs rationally with all of ``QQ^n`` iff ``x^T Theta_t = 0`` for every
    irrational component ``t >= 1``; degenerate iff that common kernel is nonzero.
    """
    n = theta.n
    d = theta.field.degree
    rows = []
    for t in range(1, d):
        # equations sum_i x_i Theta_t[i][j] = 0 for each j
        for j in range(n):
            rows.append([theta[i, j].coords[t] for i in range(n)])
    null = rational_nullspace(rows, ncols=n) if rows else rational_nullspace([], ncols=n)
    if null:
        v = null[0]
        return Degeneracy(True, tuple(v), d - 1)
    return Degeneracy(False, None, d - 1)


def _pf(theta: ThetaMatrix, S: tuple[int, ...], memo: dict) -> AlgebraicReal:
    if S in memo:
        return memo[S]
    if not S:
        out = theta.field.one()
    else:
        i = S[0]
        out = theta.field.zero()
        for k in range(1, len(S)):
            j = S[k]
            rest = S[1:k] + S[k + 1:]
            term = theta[i, j] * _pf(theta, rest, memo)
            out = out + term if k % 2 == 1 else out - term
    memo[S] = out
    return out


def pfaffian(theta: ThetaMatrix, S: Sequence[int] | None = None) -> AlgebraicReal:
    """Pfaffian of the principal submatrix on the increasing 0-based index set ``S``."""
    S = tuple(sorted(S)) if S is not None else tuple(range(theta.n))
    if len(S) % 2:
        return theta.field.zero()
    return _pf(theta, S, {})


def sub_pfaffians(theta: ThetaMatrix) -> dict[tuple[int, ...], AlgebraicReal]:
    """``pf`` over every even-size subset (0-based, increasing; ``()`` maps to 1)."""
    memo: dict = {}
    out = {}
    for size in range(0, theta.n + 1, 2):
        for S in itertools.combinations(range(theta.n), size):
            out[S] = _pf(theta, S, memo)
    return out


def trace_range(theta: ThetaMatrix) -> list[AlgebraicReal]:
    """Hermite-reduced ZZ-basis of the span of all even sub-Pfaffians."""
    if is_degenerate(theta).degenerate:
        raise NotSimple("degenerate theta: the torus is not simple")
    return hermite_reduce(list(sub_pfaffians(theta).values()))


def torus_invariant(theta: ThetaMatrix) -> ElliottInvariant:
    lat = tuple(trace_range(theta))
    r = 2 ** (theta.n - 1)
    meta = {"source": "torus", "n": theta.n, "experimental": theta.n > 4}
    if theta.notes:
        meta["notes"] = list(theta.notes)
    return ElliottInvariant(r, r, lat, theta.field.one(), True, meta)


def determinant(theta: ThetaMatrix) -> AlgebraicReal:
    from .numfield import field_determinant
    return field_determinant([list(r) for r in theta.entries])


# -- constructors --------------------------------------------------------------

def theta_hi(orders: Sequence[int]) -> ThetaMatrix:
    """``[[0, phi_G], [-phi_G, 0]]`` with ``|G|`` the product of the orders."""
    g = 1
    for m in orders or [1]:
        g *= int(m)
    return theta_from_upper(2, {(0, 1): phi_G(g)})


E8_NOTE = "printed (3,2) entry is +beta; skew-symmetry forces -beta, which is used here"


@lru_cache(maxsize=None)
def theta_e8() -> ThetaMatrix:
    """Entries ``theta12 = phi, theta13 = alpha, theta23 = beta`` from the E8 adjoint dimensions."""
    _, alpha, beta, phi = fpdims(e8_adjoint())
    return theta_from_upper(3, {(0, 1): phi, (0, 2): alpha, (1, 2): beta}, notes=(E8_NOTE,))


@lru_cache(maxsize=None)
def theta_psu2_15() -> ThetaMatrix:
    q = lambda m: quantum_integer(m, 17)
    upper = {(0, 1): q(2), (0, 2): q(8), (0, 3): q(14), (1, 2): q(6), (1, 3): q(10), (2, 3): q(4)}
    return theta_from_upper(4, upper)


__all__ = [
    "ThetaMatrix", "theta_from_upper", "Degeneracy", "is_degenerate", "pfaffian", "sub_pfaffians",
    "trace_range", "torus_invariant", "determinant", "theta_hi", "theta_e8", "theta_psu2_15", "E8_NOTE",
]
