"""Ordered K-theory of stationary inductive limits and Elliott-invariant records.

K0 classes are integer row vectors on the module basis; one inductive step
acts by ``v -> v T`` with ``T`` the connecting matrix (the module matrix of
the generator word). The unique trace is a positive vector ``t`` with
``T t = FPdim(X) t`` normalized by ``t . w = 1``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import HypothesisViolation, InvalidParameter, NeedsAssumption, NotSimple
from .fusion import FusionRing, Word, fpdims, fusion_matrix, resolve_word, unit_multiplicity
from .intlinalg import column_lattice_index, det, matmul
from .nimrep import NimRep, class_matrix, module_dims
from .numfield import AlgebraicReal, common_field_all, hermite_reduce, lattice_equal, rational_kernel

DUAL_ASSUMPTIONS = ("hi_hat",)


@dataclass(frozen=True, eq=False)
class StationaryData:
    """Module, progenerator weights ``w`` and generator word ``X``."""

    nr: NimRep
    w: tuple[int, ...]
    X: tuple[int, ...]
    dual_assumption: str | None = None

    def __post_init__(self):
        if len(self.w) != self.nr.rank or any(int(x) <= 0 for x in self.w):
            raise InvalidParameter("progenerator weights must be strictly positive, one per module simple")
        if self.dual_assumption not in (None,) + DUAL_ASSUMPTIONS:
            raise InvalidParameter(f"unknown dual assumption {self.dual_assumption!r}")


def stationary_data(nr: NimRep, w: Sequence[int] | None, X: Word, dual_assumption: str | None = None) -> StationaryData:
    w = tuple(int(x) for x in (w if w is not None else [1] * nr.rank))
    return StationaryData(nr, w, resolve_word(nr.ring, X), dual_assumption)


def connecting_matrix(sd: StationaryData) -> list[list[int]]:
    """Module matrix of the generator word, ``M(X_1) M(X_2) ... M(X_n)``."""
    M = sd.nr.matrix(sd.X[0])
    for a in sd.X[1:]:
        M = matmul(M, sd.nr.matrix(a))
    return M


def is_gl_z(T: Sequence[Sequence[int]]) -> tuple[bool, int]:
    d = det(T)
    return abs(d) == 1, d


def is_primitive(T: Sequence[Sequence[int]]) -> tuple[bool, int | None]:
    """Whether some power of ``T`` is entrywise positive; returns the first such exponent.

    Powers up to the Wielandt bound ``(n-1)^2 + 1`` are tried on the zero pattern.
    """
    n = len(T)
    P = [[bool(x) for x in row] for row in T]
    cur = P
    for k in range(1, (n - 1) ** 2 + 2):
        if all(all(row) for row in cur):
            return True, k
        cur = [[any(cur[i][m] and P[m][j] for m in range(n)) for j in range(n)] for i in range(n)]
    return False, None


@dataclass(frozen=True)
class TraceData:
    dims: tuple[AlgebraicReal, ...]
    trace_vector: tuple[AlgebraicReal, ...]
    eigenvalue: AlgebraicReal

    def trace(self, v: Sequence[int]) -> AlgebraicReal:
        acc = self.trace_vector[0] * 0
        for x, t in zip(v, self.trace_vector):
            if x:
                acc = acc + t * int(x)
        return acc


def trace_data(sd: StationaryData) -> TraceData:
    """Module FP dimensions and the normalized trace vector."""
    T = connecting_matrix(sd)
    ok, _ = is_primitive(T)
    if not ok:
        raise NotSimple("connecting matrix is not primitive; the limit is not simple")
    d = module_dims(sd.nr)
    lam = fpdims(sd.nr.ring)
    eig = lam[sd.X[0]]
    for a in sd.X[1:]:
        eig = eig * lam[a]
    norm = sum((x * int(wi) for x, wi in zip(d, sd.w)), d[0] * 0)
    t = tuple(x / norm for x in d)
    return TraceData(dims=d, trace_vector=t, eigenvalue=eig)


def _is_regular(nr: NimRep) -> bool:
    R = nr.ring
    return nr.rank == R.rank and all(nr.matrix(a) == fusion_matrix(R, a) for a in range(R.rank))


def unit_multiplicity_for(sd: StationaryData) -> tuple[int, str]:
    """``l = dim Hom(1, X)`` in the dual category and how it was obtained.

    For the regular module the dual category has the ring itself as its
    fusion ring. For the Haagerup-Izumi rank-2 module the dual ring is taken
    to be HI of the dual group (isomorphic to HI(G)) with ``X`` represented
    by the non-invertible generator; this needs ``dual_assumption="hi_hat"``.
    """
    nr = sd.nr
    if _is_regular(nr):
        return unit_multiplicity(nr.ring, list(sd.X)), "computed"
    name = nr.ring.name
    if name.startswith("hi_") and nr.rank == 2:
        if sd.dual_assumption != "hi_hat":
            raise NeedsAssumption("dual ring of the rank-2 Haagerup-Izumi module is not computed; "
                                  "set dual_assumption='hi_hat' (alias --assume-hi-dual)")
        R = nr.ring
        n = R.rank // 2
        # the dual generator acts like rho in HI(G^) = HI(G); group-like letters act trivially
        letters = [R.labels[n] if a >= n else R.labels[R.unit] for a in sd.X]
        return unit_multiplicity(R, letters), "assumed"
    raise NeedsAssumption("dual category of this module is unknown")


@dataclass(frozen=True, eq=False)
class ElliottInvariant:
    k0_rank: int
    k1_rank: int
    lattice: tuple[AlgebraicReal, ...]
    order_unit: AlgebraicReal
    simple_unique_trace: bool = True
    meta: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"k0_rank": self.k0_rank, "k1_rank": self.k1_rank,
                "lattice": [[str(c) for c in x.coords] for x in self.lattice],
                "lattice_floats": [float(x) for x in self.lattice],
                "order_unit": [str(c) for c in self.order_unit.coords],
                "simple_unique_trace": self.simple_unique_trace,
                "field_minpoly": list(self.order_unit.field.minpoly) if self.lattice else None,
                "meta": {k: self.meta[k] for k in sorted(self.meta)}}


def stationary_invariant(sd: StationaryData) -> ElliottInvariant:
    """The invariant of the stationary limit: ranks, trace lattice and order unit.

    The lattice is the trace image ``tau(ZZ^r)`` of K0; the ZZ-span of the
    simple dimensions is recorded separately together with the index of the
    class-vector lattice in ``ZZ^r`` (the two agree when that index is 1).
    """
    T = connecting_matrix(sd)
    prim, power = is_primitive(T)
    if not prim:
        raise HypothesisViolation("generator word is not a strong tensor generator (no positive power)")
    l, how = unit_multiplicity_for(sd)
    if l < 2:
        raise HypothesisViolation(f"generator contains the unit with multiplicity {l}; need l > 1")
    gl, d = is_gl_z(T)
    if not gl:
        raise HypothesisViolation(f"connecting matrix has determinant {d}; K0 is not ZZ^r at each stage")
    td = trace_data(sd)
    lattice = tuple(hermite_reduce(list(td.trace_vector)))
    C = class_matrix(sd.nr, sd.w)
    meta = {
        "unit_multiplicity": l,
        "unit_multiplicity_status": how,
        "determinant": d,
        "positive_power": power,
        "class_span_index": column_lattice_index(C),
        "dims_lattice": [[str(c) for c in x.coords] for x in hermite_reduce(list(fpdims(sd.nr.ring)))],
        "source": "stationary",
    }
    if sd.dual_assumption:
        meta["dual_assumption"] = sd.dual_assumption
    r = sd.nr.rank
    return ElliottInvariant(r, r, lattice, td.trace(sd.w), True, meta)


def amplify(inv: ElliottInvariant, m: int) -> ElliottInvariant:
    """Invariant of ``M_m(A)``: same lattice, order unit times ``m``."""
    if m < 1:
        raise InvalidParameter("amplification must be a positive integer")
    meta = dict(inv.meta)
    meta["amplification"] = meta.get("amplification", 1) * m
    return ElliottInvariant(inv.k0_rank, inv.k1_rank, inv.lattice, inv.order_unit * m,
                            inv.simple_unique_trace, meta)


# -- matching ------------------------------------------------------------------

@dataclass(frozen=True)
class MatchResult:
    verdict: str  # isomorphic | isomorphic_up_to_amplification | stably_isomorphic | distinct
    amplification: int | None = None
    amplified_side: str | None = None
    scale: AlgebraicReal | None = None
    reason: str = ""

    def label(self) -> str:
        if self.verdict == "isomorphic_up_to_amplification":
            return f"isomorphic_up_to_amplification({self.amplification})"
        return self.verdict

    def to_dict(self) -> dict:
        return {"verdict": self.label(), "amplification": self.amplification,
                "amplified_side": self.amplified_side,
                "scale": float(self.scale) if self.scale is not None else None,
                "reason": self.reason}


def _coords_in_basis(B: Sequence[AlgebraicReal], x: AlgebraicReal) -> list[Fraction] | None:
    """Rational coordinates of ``x`` in the QQ-independent list ``B``, or None."""
    from .intlinalg import rref
    d = len(B[0].coords)
    rows = [[B[j].coords[i] for j in range(len(B))] + [x.coords[i]] for i in range(d)]
    R, piv = rref(rows)
    if len(B) in piv:
        return None
    out = [Fraction(0)] * len(B)
    for i, p in enumerate(piv):
        out[p] = R[i][len(B)]
    return out


def _integer_root(x: Fraction, r: int) -> int | None:
    if x <= 0 or x.denominator != 1:
        return None
    n = x.numerator
    m = round(n ** (1.0 / r))
    for c in (m - 1, m, m + 1):
        if c > 0 and c ** r == n:
            return c
    return None


def match_invariants(I1: ElliottInvariant, I2: ElliottInvariant, search_bound: int = 3) -> MatchResult:
    """Compare two invariant records.

    ``isomorphic``: some ``lam > 0`` has ``lam L1 = L2`` and ``lam u1 = u2``.
    ``isomorphic_up_to_amplification(m)``: one side matches the other after
    multiplying its order unit by the integer ``m >= 2``.
    ``stably_isomorphic``: ``lam L1 = L2`` for some ``lam > 0`` but no
    integer amplification aligns the order units.
    """
    if not (I1.simple_unique_trace and I2.simple_unique_trace):
        raise InvalidParameter("matching needs simple records with unique trace")
    if (I1.k0_rank, I1.k1_rank) != (I2.k0_rank, I2.k1_rank):
        return MatchResult("distinct", reason="K-group ranks differ")
    n1 = len(I1.lattice)
    allx = common_field_all(list(I1.lattice) + list(I2.lattice) + [I1.order_unit, I2.order_unit])
    L1, L2 = allx[:n1], allx[n1:-2]
    u1, u2 = allx[-2], allx[-1]
    B2 = hermite_reduce(L2)
    if len(hermite_reduce(L1)) != len(B2):
        return MatchResult("distinct", reason="lattice ranks differ")
    lam = u2 / u1
    if lattice_equal([x * lam for x in L1], L2):
        return MatchResult("isomorphic", scale=lam, reason="lam L1 = L2 with lam = u2/u1")
    r = len(B2)
    # amplification of side 1 by m: (lam/m) L1 = L2, so lam L1 = m L2 and det = m^r
    for side, (A, Bl, ua, ub) in (("first", (L1, L2, u1, u2)), ("second", (L2, L1, u2, u1))):
        lam_s = ub / ua
        imgs = hermite_reduce([x * lam_s for x in A])
        Bb = hermite_reduce(Bl)
        if len(imgs) != r:
            continue
        M = []
        for x in imgs:
            c = _coords_in_basis(Bb, x)
            if c is None:
                M = None
                break
            M.append(c)
        if M is None:
            continue
        D = _frac_det(M)
        m = _integer_root(abs(D), r)
        if m and m >= 2 and lattice_equal([x * lam_s for x in A], [x * m for x in Bl]):
            return MatchResult("isomorphic_up_to_amplification", amplification=m, amplified_side=side,
                               scale=lam_s / m,
                               reason=f"{side} order unit times {m} aligns the records")
    # scale search: mu = y / u1 for small positive y in L2
    if r <= 4:
        cands = []
        for coeffs in itertools.product(range(-search_bound, search_bound + 1), repeat=r):
            if not any(coeffs):
                continue
            y = sum((b * c for b, c in zip(B2, coeffs)), B2[0] * 0)
            if y.sign() > 0:
                cands.append((max(abs(c) for c in coeffs), coeffs, y))
        cands.sort(key=lambda t: (t[0], t[1]))
        for _, coeffs, y in cands:
            mu = y / u1
            if lattice_equal([x * mu for x in L1], L2):
                return MatchResult("stably_isomorphic", scale=mu,
                                   reason="lattices agree up to a positive scale; order units are not "
                                          "aligned by any integer amplification")
    return MatchResult("distinct", reason="no positive scaling identifies the lattices")


def _frac_det(M: Sequence[Sequence[Fraction]]) -> Fraction:
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    out = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            out = -out
        out *= A[c][c]
        for i in range(c + 1, n):
            f = A[i][c] / A[c][c]
            if f:
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return out


# -- obstructions --------------------------------------------------------------

@dataclass(frozen=True)
class NoGoResult:
    verdict: str  # obstructed | no_obstruction
    certificate: dict

    @property
    def obstructed(self) -> bool:
        return self.verdict == "obstructed"


def nogo_divisibility(ring: FusionRing, n: int) -> NoGoResult:
    """Obstructed iff the FP dimensions are QQ-independent and ``rank`` does not divide ``2^(n-1)``."""
    if n < 1:
        raise InvalidParameter("torus rank must be positive")
    dims = fpdims(ring)
    kernel = rational_kernel(list(dims))
    divides = (2 ** (n - 1)) % ring.rank == 0
    obstructed = not kernel and not divides
    cert = {"rank": ring.rank, "n": n, "k0_rank_torus": 2 ** (n - 1),
            "dims_independent": not kernel, "kernel": kernel, "rank_divides": divides}
    return NoGoResult("obstructed" if obstructed else "no_obstruction", cert)


def nogo_algebraic(ring: FusionRing) -> NoGoResult:
    """Obstructed iff some FP dimension is not a rational integer."""
    dims = fpdims(ring)
    bad = [ring.labels[i] for i, x in enumerate(dims) if not x.is_integer()]
    cert = {"non_integral": bad}
    return NoGoResult("obstructed" if bad else "no_obstruction", cert)


def positivity(v: Sequence[int], td: TraceData) -> int:
    """Exact sign of the trace of the K0 class ``v``."""
    if len(v) != len(td.trace_vector):
        raise InvalidParameter("class vector has the wrong length")
    return td.trace(v).sign()


__all__ = [
    "StationaryData", "stationary_data", "connecting_matrix", "is_gl_z", "is_primitive", "TraceData",
    "trace_data", "unit_multiplicity_for", "ElliottInvariant", "stationary_invariant", "amplify",
    "MatchResult", "match_invariants", "NoGoResult", "nogo_divisibility", "nogo_algebraic", "positivity",
]
