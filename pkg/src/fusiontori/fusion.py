"""Fusion rings: structure constants, axiom checks and Frobenius-Perron data.

Structure constants are stored as ``N[a, b, c] = N_{ab}^c``. Fusion
matrices follow the right-multiplication convention
``fusion_matrix(R, a)[b][c] = N_{ba}^c``: row ``b`` decomposes ``b (x) a``.
"""
from __future__ import annotations

import itertools
import threading
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np
import sympy

from .errors import InvalidParameter
from .intlinalg import matmul
from .numfield import (AlgebraicReal, NumberField, RATIONALS, _factor_integer_poly,
                       _from_sympy_poly, _isolating_intervals, coerce_all, compare_reals, phi_G,
                       quantum_integer, solve_nullspace)

Index = Union[int, str]
Word = Sequence[Index]


@dataclass(frozen=True, eq=False)
class FusionRing:
    """Based ring with labels, unit, duality and constants ``N[a, b, c]``.

    ``dims_hint`` is an optional candidate FP-dimension vector supplied by a
    constructor; it is only used after being certified as a positive common
    eigenvector (see :func:`fpdims`).
    """

    labels: tuple[str, ...]
    unit: int
    dual: tuple[int, ...]
    N: np.ndarray
    name: str = ""
    dims_hint: tuple[AlgebraicReal, ...] | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def __post_init__(self):
        N = np.array(self.N, dtype=np.int64)
        r = len(self.labels)
        if N.shape != (r, r, r):
            raise InvalidParameter(f"structure constants must have shape {(r, r, r)}, got {N.shape}")
        if len(set(self.labels)) != r:
            raise InvalidParameter("labels must be distinct")
        if len(self.dual) != r or not all(0 <= d < r for d in self.dual):
            raise InvalidParameter("dual must map indices to indices")
        if not 0 <= self.unit < r:
            raise InvalidParameter("unit index out of range")
        N.setflags(write=False)
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "dual", tuple(int(d) for d in self.dual))

    @property
    def rank(self) -> int:
        return len(self.labels)

    def index(self, a: Index) -> int:
        if isinstance(a, (int, np.integer)) and not isinstance(a, bool):
            if not 0 <= int(a) < self.rank:
                raise InvalidParameter(f"index {a} out of range for rank {self.rank}")
            return int(a)
        try:
            return self.labels.index(a)
        except ValueError:
            raise InvalidParameter(f"unknown label {a!r}; labels are {list(self.labels)}") from None

    def same_table(self, other: "FusionRing") -> bool:
        return (self.labels == other.labels and self.unit == other.unit
                and self.dual == other.dual and np.array_equal(self.N, other.N))

    def with_constant(self, a: Index, b: Index, c: Index, value: int) -> "FusionRing":
        """Copy with one structure constant replaced (no axiom checks)."""
        N = np.array(self.N)
        N[self.index(a), self.index(b), self.index(c)] = value
        return FusionRing(self.labels, self.unit, self.dual, N, name=f"{self.name}*")

    def __repr__(self) -> str:
        return f"FusionRing({self.name or 'custom'}, rank={self.rank})"


# -- verification --------------------------------------------------------------

MAX_LISTED = 25


@dataclass
class VerificationReport:
    ok: bool
    checked: tuple[str, ...]
    violations: dict[str, list[str]]
    counts: dict[str, int]

    def summary(self) -> str:
        if self.ok:
            return "all axioms hold: " + ", ".join(self.checked)
        return "; ".join(f"{k}: {v} violation(s)" for k, v in sorted(self.counts.items()))

    def to_dict(self) -> dict:
        return {"ok": self.ok, "checked": list(self.checked),
                "violations": {k: list(v) for k, v in sorted(self.violations.items())},
                "counts": dict(sorted(self.counts.items()))}


def verify(ring: FusionRing) -> VerificationReport:
    """Check the unit, duality, associativity and Frobenius-symmetry axioms."""
    N = ring.N.astype(object)
    r, u, L = ring.rank, ring.unit, ring.labels
    dual = ring.dual
    viol: dict[str, list[str]] = {}
    counts: dict[str, int] = {}

    def note(axiom: str, msg: str):
        counts[axiom] = counts.get(axiom, 0) + 1
        lst = viol.setdefault(axiom, [])
        if len(lst) < MAX_LISTED:
            lst.append(msg)

    for a, b, c in itertools.product(range(r), repeat=3):
        if N[a, b, c] < 0:
            note("nonnegativity", f"N[{L[a]},{L[b]}]^{L[c]} = {N[a, b, c]}")
    I = np.eye(r, dtype=object)
    for a in range(r):
        for b in range(r):
            if N[u, a, b] != I[a, b]:
                note("unit", f"N[1,{L[a]}]^{L[b]} = {N[u, a, b]}")
            if N[a, u, b] != I[a, b]:
                note("unit", f"N[{L[a]},1]^{L[b]} = {N[a, u, b]}")
    if dual[u] != u:
        note("duality", "unit is not self-dual")
    for a in range(r):
        if dual[dual[a]] != a:
            note("duality", f"dual is not an involution at {L[a]}")
        for b in range(r):
            want = int(b == dual[a])
            if N[a, b, u] != want:
                note("duality", f"N[{L[a]},{L[b]}]^1 = {N[a, b, u]}, expected {want}")
    lhs = np.einsum("abe,ecd->abcd", N, N)
    rhs = np.einsum("bcf,afd->abcd", N, N)
    for a, b, c, d in zip(*np.nonzero(lhs != rhs)):
        note("associativity", f"(({L[a]}{L[b]}){L[c]})^{L[d]} = {lhs[a, b, c, d]} but "
                              f"({L[a]}({L[b]}{L[c]}))^{L[d]} = {rhs[a, b, c, d]}")
    for a, b, c in itertools.product(range(r), repeat=3):
        x = N[a, b, c]
        if N[c, dual[b], a] != x or N[dual[a], c, b] != x:
            note("frobenius", f"N[{L[a]},{L[b]}]^{L[c]} = {x}, N[{L[c]},{L[dual[b]]}]^{L[a]} = "
                              f"{N[c, dual[b], a]}, N[{L[dual[a]]},{L[c]}]^{L[b]} = {N[dual[a], c, b]}")
    checked = ("nonnegativity", "unit", "duality", "associativity", "frobenius")
    return VerificationReport(ok=not counts, checked=checked, violations=viol, counts=counts)


# -- matrices ------------------------------------------------------------------

def fusion_matrix(ring: FusionRing, a: Index) -> list[list[int]]:
    """``(M_a)[b][c] = N_{ba}^c``."""
    i = ring.index(a)
    return [[int(x) for x in row] for row in ring.N[:, i, :]]


def resolve_word(ring: FusionRing, w: Word) -> tuple[int, ...]:
    if isinstance(w, str):
        w = [w]
    idx = tuple(ring.index(a) for a in w)
    if not idx:
        raise InvalidParameter("tensor word must be non-empty")
    return idx


def word_matrix(ring: FusionRing, w: Word) -> list[list[int]]:
    """Ordered product ``M_{w_1} M_{w_2} ... M_{w_n}`` of fusion matrices."""
    idx = resolve_word(ring, w)
    M = fusion_matrix(ring, idx[0])
    for a in idx[1:]:
        M = matmul(M, fusion_matrix(ring, a))
    return M


def unit_multiplicity(ring: FusionRing, w: Word) -> int:
    """``dim Hom(1, w_1 (x) ... (x) w_n)``."""
    return int(word_matrix(ring, w)[ring.unit][ring.unit])


def dual_word(ring: FusionRing, w: Word) -> tuple[int, ...]:
    return tuple(ring.dual[a] for a in reversed(resolve_word(ring, w)))


# -- Frobenius-Perron dimensions ----------------------------------------------

def perron_root(M: Sequence[Sequence[int]]) -> AlgebraicReal:
    """Spectral radius of a non-negative integer matrix as an exact algebraic real.

    Factor the characteristic polynomial over ZZ and return the largest real
    root, presented as the generator of the field of its factor.
    """
    x = sympy.Symbol("x")
    cp = sympy.Matrix(M).charpoly(x)
    coeffs = _from_sympy_poly(sympy.Poly(cp.as_expr(), x, domain="ZZ"))
    best: AlgebraicReal | None = None
    for f in _factor_integer_poly(coeffs):
        boxes = _isolating_intervals(f)
        if not boxes:
            continue
        box = max(boxes, key=lambda b: b[1])
        if len(f) == 2:
            cand = RATIONALS(Fraction(-f[0], f[1]))
        else:
            cand = NumberField(f, box, check=False).generator()
        if best is None or compare_reals(cand, best) > 0:
            best = cand
    assert best is not None
    return best


def _certify(ring: FusionRing, d: Sequence[AlgebraicReal]) -> bool:
    r = ring.rank
    if d[ring.unit] != 1 or any(x.sign() <= 0 for x in d):
        return False
    for a in range(r):
        M = ring.N[:, a, :]
        for b in range(r):
            lhs = sum((d[c] * int(M[b, c]) for c in range(r) if M[b, c]), d[0] * 0)
            if lhs != d[b] * d[a]:
                return False
    return True


def _pf_vector(ring: FusionRing) -> tuple[AlgebraicReal, ...]:
    r = ring.rank
    S = [[int(ring.N[b, :, c].sum()) for c in range(r)] for b in range(r)]
    lam = perron_root(S)
    K = lam.field
    rows = [[K(S[i][j]) - (lam if i == j else 0) for j in range(r)] for i in range(r)]
    basis = solve_nullspace(rows)
    assert len(basis) == 1, "Perron eigenspace of a positive matrix is one-dimensional"
    v = basis[0]
    s = v[ring.unit]
    return tuple(x / s for x in v)


def fpdims(ring: FusionRing) -> tuple[AlgebraicReal, ...]:
    """The FP dimension vector, certified as the positive common eigenvector.

    A constructor hint is accepted only if it is strictly positive, has
    ``d[unit] = 1`` and satisfies ``M_a d = d_a d`` for all ``a``; the
    positive eigenvector of the strictly positive matrix ``sum_a M_a`` is
    unique, so this pins down the FP dimensions. Otherwise the Perron
    eigenvector of ``sum_a M_a`` is solved for exactly.
    """
    with ring._lock:
        cached = ring._cache.get("fpdims")
    if cached is not None:
        return cached
    d = None
    if ring.dims_hint is not None:
        cand = tuple(coerce_all(list(ring.dims_hint)))
        if _certify(ring, cand):
            d = cand
    if d is None:
        d = _pf_vector(ring)
        if not _certify(ring, d):
            raise AssertionError("Perron vector failed certification; ring axioms are violated")
    with ring._lock:
        ring._cache["fpdims"] = d
    return d


def fpdim(ring: FusionRing, a: Index) -> AlgebraicReal:
    return fpdims(ring)[ring.index(a)]


def global_dimension(ring: FusionRing) -> AlgebraicReal:
    d = fpdims(ring)
    return sum((x * x for x in d), d[0] * 0)


def is_integral(ring: FusionRing) -> bool:
    return all(x.is_integer() for x in fpdims(ring))


# -- constructors ----------------------------------------------------------------

def _ring(labels, unit, dual, entries, name, dims=None) -> FusionRing:
    r = len(labels)
    N = np.zeros((r, r, r), dtype=np.int64)
    for (a, b, c), m in entries.items():
        N[a, b, c] += m
    return FusionRing(tuple(labels), unit, tuple(dual), N, name=name,
                      dims_hint=tuple(dims) if dims is not None else None)


def su2_level(k: int) -> FusionRing:
    """SU(2)_k: labels ``V0..Vk`` (``Vi`` has spin ``i/2``)."""
    if not isinstance(k, int) or k < 1:
        raise InvalidParameter("level must be a positive integer")
    r = k + 1
    ent = {}
    for i, j in itertools.product(range(r), repeat=2):
        for c in range(abs(i - j), min(i + j, 2 * k - i - j) + 1, 2):
            ent[(i, j, c)] = 1
    dims = [quantum_integer(i + 1, k + 2) for i in range(r)]
    return _ring([f"V{i}" for i in range(r)], 0, range(r), ent, f"su2_{k}", dims)


def psu2_level(k: int) -> FusionRing:
    """PSU(2)_k for odd ``k``: the integer-spin part, labels ``Y0..Y_{(k-1)/2}``."""
    if not isinstance(k, int) or k < 1 or k % 2 == 0:
        raise InvalidParameter("psu2_level needs an odd positive level")
    r = (k + 1) // 2
    ent = {}
    for a, b in itertools.product(range(r), repeat=2):
        for c in range(abs(a - b), min(a + b, k - a - b) + 1):
            ent[(a, b, c)] = 1
    dims = [quantum_integer(2 * a + 1, k + 2) for a in range(r)] if k >= 1 else None
    return _ring([f"Y{a}" for a in range(r)], 0, range(r), ent, f"psu2_{k}", dims)


def _group_elements(orders: Sequence[int]) -> list[tuple[int, ...]]:
    orders = [int(n) for n in orders]
    if any(n < 1 for n in orders):
        raise InvalidParameter("cyclic orders must be positive")
    return list(itertools.product(*[range(n) for n in orders]))


def _glabel(g: tuple[int, ...]) -> str:
    if not any(g):
        return "1"
    return "g" + "_".join(str(x) for x in g) if len(g) > 1 else f"g{g[0]}"


def group_ring(orders: Sequence[int]) -> FusionRing:
    """ZZ[G] for ``G = Z/n_1 x ... x Z/n_k``."""
    orders = list(orders) or [1]
    elems = _group_elements(orders)
    pos = {g: i for i, g in enumerate(elems)}
    add = lambda g, h: tuple((x + y) % n for x, y, n in zip(g, h, orders))
    neg = lambda g: tuple((-x) % n for x, n in zip(g, orders))
    ent = {(pos[g], pos[h], pos[add(g, h)]): 1 for g in elems for h in elems}
    dual = [pos[neg(g)] for g in elems]
    name = "group_" + "x".join(f"Z{n}" for n in orders)
    return _ring([_glabel(g) for g in elems], 0, dual, ent, name, [1] * len(elems))


def haagerup_izumi(orders: Sequence[int]) -> FusionRing:
    """Haagerup-Izumi ring over ``G = Z/n_1 x ...``: simples ``g`` and ``g rho``.

    ``g h = gh``, ``g (h rho) = (gh) rho``, ``(h rho) g = (h g^-1) rho`` and
    ``(g rho)(h rho) = g h^-1 + sum_k k rho``.
    """
    orders = list(orders) or [1]
    elems = _group_elements(orders)
    n = len(elems)
    pos = {g: i for i, g in enumerate(elems)}
    add = lambda g, h: tuple((x + y) % m for x, y, m in zip(g, h, orders))
    neg = lambda g: tuple((-x) % m for x, m in zip(g, orders))
    R = lambda g: n + pos[g]
    ent: dict = {}
    for g in elems:
        for h in elems:
            ent[(pos[g], pos[h], pos[add(g, h)])] = 1
            ent[(pos[g], R(h), R(add(g, h)))] = 1
            ent[(R(h), pos[g], R(add(h, neg(g))))] = 1
            ent[(R(g), R(h), pos[add(g, neg(h))])] = 1
            for k in elems:
                ent[(R(g), R(h), R(k))] = 1
    labels = [_glabel(g) for g in elems] + [("" if _glabel(g) == "1" else _glabel(g)) + "rho" for g in elems]
    dual = [pos[neg(g)] for g in elems] + [R(g) for g in elems]
    phi = phi_G(n)
    dims = [phi.field.one()] * n + [phi] * n
    name = "hi_" + "x".join(f"Z{m}" for m in orders)
    return _ring(labels, 0, dual, ent, name, dims)


def e8_adjoint() -> FusionRing:
    """Adjoint subring of the E8 quantum subgroup: simples ``1, A, B, tau``."""
    one, A, B, t = range(4)
    prod = {
        (A, A): {one: 1, A: 1, B: 1},
        (A, B): {A: 1, B: 2, t: 1},
        (A, t): {B: 1},
        (B, B): {one: 1, A: 2, B: 3, t: 1},
        (B, t): {A: 1, B: 1},
        (t, t): {one: 1, t: 1},
    }
    ent = {}
    for x in range(4):
        ent[(one, x, x)] = ent[(x, one, x)] = 1
    for (a, b), out in prod.items():
        for c, m in out.items():
            ent[(a, b, c)] = m
            ent[(b, a, c)] = m
    return _ring(["1", "A", "B", "tau"], 0, range(4), ent, "e8_adjoint")


def fib() -> FusionRing:
    sqrt_field = phi_G(1)
    ent = {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1, (1, 1, 0): 1, (1, 1, 1): 1}
    return _ring(["1", "tau"], 0, [0, 1], ent, "fib", [sqrt_field.field.one(), sqrt_field])


def product_ring(R1: FusionRing, R2: FusionRing) -> FusionRing:
    """Tensor product ``R1 (x) R2``; labels ``a|b`` in lexicographic order."""
    r1, r2 = R1.rank, R2.rank
    idx = lambda a, b: a * r2 + b
    N = np.einsum("ace,bdf->abcdef", R1.N, R2.N).reshape(r1 * r2, r1 * r2, r1 * r2)
    labels = [f"{x}|{y}" for x in R1.labels for y in R2.labels]
    dual = [idx(R1.dual[a], R2.dual[b]) for a in range(r1) for b in range(r2)]
    dims = None
    try:
        d1, d2 = fpdims(R1), fpdims(R2)
        dims = tuple(x * y for x in d1 for y in d2)
    except Exception:  # fields differ; fall back to the Perron route
        dims = None
    return FusionRing(tuple(labels), idx(R1.unit, R2.unit), tuple(dual), N,
                      name=f"({R1.name})x({R2.name})", dims_hint=dims)


def opposite_ring(R: FusionRing) -> FusionRing:
    """``N^op_{ab}^c = N_{ba}^c``; labels get the suffix ``^mp``."""
    N = np.transpose(R.N, (1, 0, 2))
    dims = None
    try:
        dims = fpdims(R)
    except Exception:
        pass
    return FusionRing(tuple(f"{a}^mp" for a in R.labels), R.unit, R.dual, N,
                      name=f"{R.name}^mp", dims_hint=dims)


def relabel(ring: FusionRing, perm: Sequence[int]) -> FusionRing:
    """Ring with basis reordered so that new index ``i`` is old ``perm[i]``."""
    inv = {p: i for i, p in enumerate(perm)}
    N = ring.N[np.ix_(perm, perm, perm)]
    dual = [inv[ring.dual[p]] for p in perm]
    dims = tuple(ring.dims_hint[p] for p in perm) if ring.dims_hint else None
    return FusionRing(tuple(ring.labels[p] for p in perm), inv[ring.unit], tuple(dual), N,
                      name=ring.name, dims_hint=dims)


def isomorphic_tables(R1: FusionRing, R2: FusionRing) -> Iterable[int] | None:
    """A relabeling ``perm`` with ``relabel(R2, perm)`` equal to ``R1``, if one exists (brute force)."""
    if R1.rank != R2.rank:
        return None
    for perm in itertools.permutations(range(R2.rank)):
        if perm[R1.unit] != R2.unit:
            continue
        if np.array_equal(R2.N[np.ix_(perm, perm, perm)], R1.N):
            return list(perm)
    return None


__all__ = [
    "FusionRing", "VerificationReport", "verify", "fusion_matrix", "word_matrix", "resolve_word",
    "unit_multiplicity", "dual_word", "perron_root", "fpdims", "fpdim", "global_dimension",
    "is_integral", "su2_level", "psu2_level", "haagerup_izumi", "e8_adjoint", "fib", "group_ring",
    "product_ring", "opposite_ring", "relabel", "isomorphic_tables",
]
