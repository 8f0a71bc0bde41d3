"""One-step model of the circle-algebra connecting maps.

Matrices over Laurent polynomials ``QQ[z, 1/z]`` model ``C(T) (x) End(X)``.
:class:`ShiftUnitary` is the twisted cyclic shift on the unit block (size
``l``) and the identity on the remaining blocks.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Mapping, Sequence

import sympy
from mpmath import libmp

from .errors import InvalidParameter, NotSupported


class LaurentPoly:
    """Finite sum ``sum_k c_k z^k`` with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, Fraction | int] | None = None):
        self.terms: dict[int, Fraction] = {int(k): Fraction(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def monomial(cls, k: int, c: Fraction | int = 1) -> "LaurentPoly":
        return cls({k: c})

    @classmethod
    def const(cls, c: Fraction | int) -> "LaurentPoly":
        return cls({0: c})

    def is_zero(self) -> bool:
        return not self.terms

    def window(self) -> tuple[int, int] | None:
        """``(min exponent, max exponent)`` or None for zero."""
        if not self.terms:
            return None
        return min(self.terms), max(self.terms)

    def __add__(self, other):
        other = _lp(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-_lp(other))

    def __mul__(self, other):
        other = _lp(other)
        out: dict[int, Fraction] = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return LaurentPoly(out)

    __rmul__ = __mul__

    def conj(self) -> "LaurentPoly":
        """``z -> 1/z`` (coefficients are real)."""
        return LaurentPoly({-k: v for k, v in self.terms.items()})

    def __eq__(self, other):
        try:
            return self.terms == _lp(other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            c = self.terms[k]
            parts.append(f"{c}" if k == 0 else f"{c}*z^{k}")
        return " + ".join(parts)


def _lp(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as a Laurent polynomial")


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)


class LaurentMatrix:
    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[LaurentPoly | int | Fraction]]):
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise InvalidParameter("Laurent matrices are square")
        self.rows: tuple[tuple[LaurentPoly, ...], ...] = tuple(tuple(_lp(x) for x in r) for r in rows)

    @property
    def size(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int) -> "LaurentMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        n = self.size
        if other.size != n:
            raise InvalidParameter("size mismatch")
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = ZERO
                for k in range(n):
                    a, b = self.rows[i][k], other.rows[k][j]
                    if a.terms and b.terms:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return LaurentMatrix(out)

    def adjoint(self) -> "LaurentMatrix":
        n = self.size
        return LaurentMatrix([[self.rows[j][i].conj() for j in range(n)] for i in range(n)])

    def kron_identity(self, a: int) -> "LaurentMatrix":
        """``self (x) I_a`` with the Kronecker ordering ``(i, s) -> i*a + s``."""
        n = self.size
        out = [[ZERO] * (n * a) for _ in range(n * a)]
        for i in range(n):
            for j in range(n):
                if self.rows[i][j].terms:
                    for s in range(a):
                        out[i * a + s][j * a + s] = self.rows[i][j]
        return LaurentMatrix(out)

    def block(self, start: int, stop: int) -> "LaurentMatrix":
        return LaurentMatrix([r[start:stop] for r in self.rows[start:stop]])

    def trace(self) -> LaurentPoly:
        acc = ZERO
        for i in range(self.size):
            acc = acc + self.rows[i][i]
        return acc

    def is_unitary(self) -> bool:
        return self @ self.adjoint() == LaurentMatrix.identity(self.size)

    def degree_window(self) -> tuple[int, int] | None:
        ws = [x.window() for r in self.rows for x in r if x.terms]
        if not ws:
            return None
        return min(w[0] for w in ws), max(w[1] for w in ws)

    def __eq__(self, other):
        return isinstance(other, LaurentMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "LaurentMatrix(" + "; ".join(", ".join(map(repr, r)) for r in self.rows) + ")"


def determinant(M: LaurentMatrix) -> LaurentPoly:
    """Exact determinant; fast path for monomial-permutation matrices."""
    n = M.size
    supports = [[j for j in range(n) if M.rows[i][j].terms] for i in range(n)]
    if all(len(s) == 1 for s in supports):
        perm = [s[0] for s in supports]
        if sorted(perm) != list(range(n)):
            return ZERO
        sign = 1
        seen = [False] * n
        for i in range(n):
            if not seen[i]:
                j, length = i, 0
                while not seen[j]:
                    seen[j] = True
                    j = perm[j]
                    length += 1
                if length % 2 == 0:
                    sign = -sign
        acc = LaurentPoly.const(sign)
        for i in range(n):
            acc = acc * M.rows[i][perm[i]]
        return acc
    if n <= 6:
        acc = ZERO
        for p in permutations(range(n)):
            term = LaurentPoly.const(_perm_sign(p))
            for i in range(n):
                term = term * M.rows[i][p[i]]
                if not term.terms:
                    break
            acc = acc + term
        return acc
    z = sympy.Symbol("z")
    S = sympy.Matrix(n, n, lambda i, j: sum(sympy.Rational(c.numerator, c.denominator) * z ** k
                                            for k, c in M.rows[i][j].terms.items()))
    d = sympy.expand(S.det(method="berkowitz"))
    out: dict[int, Fraction] = {}
    for term in sympy.Add.make_args(d):
        c, k = term.as_coeff_exponent(z)
        if c != 0:
            out[int(k)] = out.get(int(k), 0) + Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1]))
    return LaurentPoly(out)


def _perm_sign(p: Sequence[int]) -> int:
    s = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


def det_winding(M: LaurentMatrix) -> int:
    """Exponent ``w`` when ``det M = +-z^w``."""
    d = determinant(M)
    if len(d.terms) != 1:
        raise NotSupported(f"determinant {d!r} is not a single monomial")
    (k, c), = d.terms.items()
    if abs(c) != 1:
        raise NotSupported(f"determinant coefficient {c} does not have modulus 1")
    return k


# -- the shift unitary ---------------------------------------------------------

@dataclass(frozen=True)
class ShiftUnitary:
    l: int
    other_blocks: tuple[int, ...] = ()

    def __post_init__(self):
        if self.l < 2:
            raise InvalidParameter("unit block size l must be at least 2")
        if any(m < 1 for m in self.other_blocks):
            raise InvalidParameter("block multiplicities must be positive")

    @property
    def size(self) -> int:
        return self.l + sum(self.other_blocks)


def _shift_power_entries(l: int, k: int) -> dict[tuple[int, int], LaurentPoly]:
    # W^k e_j = z^floor((j+k)/l) e_{(j+k) mod l}
    out = {}
    for j in range(l):
        t = j + k
        out[(t % l, j)] = LaurentPoly.monomial(t // l)
    return out


def w_power(su: ShiftUnitary, k: int) -> LaurentMatrix:
    """Closed-form ``W^k``; negative ``k`` included."""
    n, l = su.size, su.l
    rows = [[ZERO] * n for _ in range(n)]
    for (i, j), v in _shift_power_entries(l, k).items():
        rows[i][j] = v
    for i in range(l, n):
        rows[i][i] = ONE
    return LaurentMatrix(rows)


def w_matrix(su: ShiftUnitary) -> LaurentMatrix:
    """``W(z)``: ``e_{i-1} -> e_i`` on the unit block, ``e_l -> z e_1``, identity elsewhere."""
    n, l = su.size, su.l
    rows = [[ZERO] * n for _ in range(n)]
    for i in range(1, l):
        rows[i][i - 1] = ONE
    rows[0][l - 1] = LaurentPoly.monomial(1)
    for i in range(l, n):
        rows[i][i] = ONE
    return LaurentMatrix(rows)


def nu_generator(su: ShiftUnitary, k: int, a_dim: int = 1) -> LaurentMatrix:
    """Image of ``z^k (x) 1_a``: ``W^k (x) I_a``."""
    if a_dim < 1:
        raise InvalidParameter("a_dim must be positive")
    return w_power(su, k).kron_identity(a_dim)


def unit_block_charpoly(l: int) -> dict[int, LaurentPoly]:
    """Coefficients (by power of ``lambda``) of ``det(lambda I - W_unit)``."""
    W = w_matrix(ShiftUnitary(l)).block(0, l)
    lam, z = sympy.symbols("lam z")
    S = sympy.Matrix(l, l, lambda i, j: sum(sympy.Rational(c.numerator, c.denominator) * z ** e
                                            for e, c in W.rows[i][j].terms.items()))
    cp = sympy.expand((lam * sympy.eye(l) - S).det(method="berkowitz"))
    out: dict[int, LaurentPoly] = {}
    for p, coeff in sympy.Poly(cp, lam).as_dict().items():
        lp: dict[int, Fraction] = {}
        for term in sympy.Add.make_args(sympy.expand(coeff)):
            c, e = term.as_coeff_exponent(z)
            lp[int(e)] = Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1]))
        out[int(p[0])] = LaurentPoly(lp)
    return out


# -- trace recursion -------------------------------------------------------------

def _weights(block_weights: Mapping[str, Fraction | int], unit: str) -> tuple[Fraction, Fraction, Fraction]:
    if unit not in block_weights:
        raise InvalidParameter(f"weights must include the unit block {unit!r}")
    w1 = Fraction(block_weights[unit])
    rest = sum((Fraction(v) for k, v in block_weights.items() if k != unit), Fraction(0))
    total = w1 + rest
    if total == 0:
        raise InvalidParameter("total weight is zero")
    if w1 <= 0:
        raise InvalidParameter("unit-block weight must be positive")
    return w1, rest, total


def trace_recursion(su: ShiftUnitary, block_weights: Mapping[str, Fraction | int], K: int,
                    unit: str = "1") -> dict[int, Fraction]:
    """``mu(z^k)`` for ``|k| <= K`` from the stationary recursion.

    ``mu(z^k) = (sum_{x != 1} w_x + [l | k] w_1 mu(z^{k/l})) / total`` with
    ``mu(1) = 1``.
    """
    w1, rest, total = _weights(block_weights, unit)
    l = su.l
    memo: dict[int, Fraction] = {0: Fraction(1)}

    def mu(k: int) -> Fraction:
        if k in memo:
            return memo[k]
        val = rest
        if k % l == 0:
            val += w1 * mu(k // l)
        memo[k] = val / total
        return memo[k]

    return {k: mu(k) for k in range(-K, K + 1)}


def direct_block_trace(su: ShiftUnitary, block_weights: Mapping[str, Fraction | int], K: int,
                       unit: str = "1") -> dict[int, Fraction]:
    """Oracle: weighted normalized block traces of ``W^k`` built by repeated multiplication.

    Each block contributes ``weight * tr(block)/dim(block)`` with ``mu`` applied
    to the Laurent entries; the constant blocks evaluate ``mu(1) = 1``.
    """
    w1, rest, total = _weights(block_weights, unit)
    if su.size == su.l:
        # the non-unit weights need somewhere to live; add one identity block
        su = ShiftUnitary(su.l, (1,))
    l, n = su.l, su.size
    W = w_matrix(su)
    Winv = W.adjoint()
    powers = {0: LaurentMatrix.identity(n)}
    for k in range(1, K + 1):
        powers[k] = powers[k - 1] @ W
        powers[-k] = powers[-(k - 1)] @ Winv
    memo: dict[int, Fraction] = {0: Fraction(1)}

    def mu_poly(p: LaurentPoly) -> Fraction:
        return sum((c * mu(e) for e, c in p.terms.items()), Fraction(0))

    def mu(k: int) -> Fraction:
        if k in memo:
            return memo[k]
        M = powers[k]
        unit_part = w1 * mu_poly(M.block(0, l).trace()) / l
        # remaining blocks have the constant identity, so their normalized trace is 1
        other_part = rest * mu_poly(M.block(l, n).trace()) / (n - l)
        memo[k] = (unit_part + other_part) / total
        return memo[k]

    # exponents reachable on the unit block have |e| < |k|, so fill in increasing |k|
    out = {}
    for k in sorted(range(-K, K + 1), key=abs):
        out[k] = mu(k)
    return dict(sorted(out.items()))


# -- density -------------------------------------------------------------------

def _pi_bounds(prec: int) -> tuple[Fraction, Fraction]:
    """Rational ``lo < pi < hi`` from directed-rounding evaluations of pi."""
    out = []
    for rnd in (libmp.round_floor, libmp.round_ceiling):
        sign, man, exp, _ = libmp.mpf_pi(prec, rnd)
        x = Fraction(int(man)) * (Fraction(2) ** int(exp))
        out.append(-x if sign else x)
    return out[0], out[1]


def roots_density_check(l: int, depth: int, eps: float | Fraction) -> bool:
    """Decide ``2 pi / l^depth <= eps`` with rational enclosures of ``pi``."""
    if l < 2 or depth < 1:
        raise InvalidParameter("need l >= 2 and depth >= 1")
    e = Fraction(eps)
    if e <= 0:
        raise InvalidParameter("eps must be positive")
    scale = Fraction(2, l ** depth)
    prec = 64
    while prec <= 1 << 16:
        lo, hi = _pi_bounds(prec)
        if scale * hi <= e:
            return True
        if scale * lo > e:
            return False
        prec *= 2
    raise NotSupported("gap is too close to eps to decide")


__all__ = [
    "LaurentPoly", "LaurentMatrix", "determinant", "det_winding", "ShiftUnitary", "w_power", "w_matrix",
    "nu_generator", "unit_block_charpoly", "trace_recursion", "direct_block_trace", "roots_density_check",
]
