"""Exact arithmetic in real algebraic number fields.

A :class:`NumberField` is ``QQ(theta)`` for a real root ``theta`` of an
irreducible integer polynomial, pinned down by a rational isolating
interval. Elements (:class:`AlgebraicReal`) carry rational coordinates in
the power basis ``1, theta, ..., theta^(d-1)``. Zero tests are exact
coordinate comparisons; signs and enclosures come from bisecting the
isolating interval and evaluating with rational interval Horner.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import comb, lcm
from typing import Iterable, Sequence, Union

import sympy

from .errors import FieldMismatch, InvalidParameter, NotIrreducible, UnsupportedFieldPair
from .intlinalg import integer_left_kernel, rational_nullspace, rref

Rational = Union[int, Fraction]
Interval = tuple[Fraction, Fraction]

_X = sympy.Symbol("x")
_Y = sympy.Symbol("y")


# -- small exact helpers -------------------------------------------------------

def _sgn(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _horner(coeffs: Sequence[Rational], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _imul(a: Interval, b: Interval) -> Interval:
    p = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(p), max(p)


def _horner_interval(coeffs: Sequence[Fraction], box: Interval) -> Interval:
    lo = hi = Fraction(0)
    for c in reversed(coeffs):
        lo, hi = _imul((lo, hi), box)
        lo, hi = lo + c, hi + c
    return lo, hi


def _to_sympy_poly(coeffs: Sequence[int], var=_X) -> sympy.Poly:
    return sympy.Poly(list(reversed([int(c) for c in coeffs])), var, domain="ZZ")


def _from_sympy_poly(p: sympy.Poly) -> tuple[int, ...]:
    """Integer coefficients, lowest degree first, primitive with positive lead."""
    p = p.clear_denoms()[1] if p.get_domain() != sympy.ZZ else p
    p = p.primitive()[1]
    if p.LC() < 0:
        p = -p
    return tuple(int(c) for c in reversed(p.all_coeffs()))


def _count_roots(coeffs: Sequence[int], lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots in the closed interval ``[lo, hi]``."""
    p = _to_sympy_poly(coeffs)
    return int(p.count_roots(sympy.Rational(lo.numerator, lo.denominator),
                             sympy.Rational(hi.numerator, hi.denominator)))


@lru_cache(maxsize=512)
def _factor_integer_poly(coeffs: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """Distinct irreducible factors over ZZ (positive leading coefficients)."""
    _, factors = _to_sympy_poly(coeffs).factor_list()
    return tuple(_from_sympy_poly(f) for f, _ in factors if f.degree() > 0)


@lru_cache(maxsize=512)
def _isolating_intervals(coeffs: tuple[int, ...]) -> tuple[Interval, ...]:
    out = []
    for (a, b), _ in _to_sympy_poly(coeffs).intervals():
        out.append((Fraction(int(a.p), int(a.q)), Fraction(int(b.p), int(b.q))))
    return tuple(out)


def _primitive(coeffs: Sequence[int]) -> tuple[int, ...]:
    from math import gcd
    g = 0
    for c in coeffs:
        g = gcd(g, int(c))
    out = [int(c) // g for c in coeffs]
    if out[-1] < 0:
        out = [-c for c in out]
    return tuple(out)


def _fmt_poly(coeffs: Sequence[int], var: str = "x") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        mag = abs(c)
        body = str(mag) if (mag != 1 or not mono) else ""
        body = f"{body}*{mono}" if body and mono else (body or mono)
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        s += f" {sign} {body}"
    return s


# -- number fields -------------------------------------------------------------

class NumberField:
    """``QQ(theta)`` with ``theta`` the unique root of ``minpoly`` in ``root``.

    ``minpoly`` holds integer coefficients lowest degree first. Construction
    checks irreducibility and that the isolating interval holds exactly one
    root with no root on its endpoints.
    """

    def __init__(self, minpoly: Sequence[int], root: tuple[Rational, Rational], *,
                 name: str | None = None, check: bool = True):
        coeffs = _primitive(minpoly)
        if len(coeffs) < 2:
            raise InvalidParameter("minimal polynomial must have positive degree")
        self.minpoly: tuple[int, ...] = coeffs
        self.degree = len(coeffs) - 1
        self.name = name
        lo, hi = Fraction(root[0]), Fraction(root[1])
        if self.degree == 1:
            r = Fraction(-coeffs[0], coeffs[1])
            lo = hi = r
        elif check:
            if lo >= hi:
                raise InvalidParameter("root isolator must satisfy lo < hi")
            if len(_factor_integer_poly(coeffs)) != 1 or _to_sympy_poly(coeffs).sqf_part().degree() != self.degree:
                raise NotIrreducible(f"{_fmt_poly(coeffs)} is reducible over QQ")
            flo, fhi = _horner(coeffs, lo), _horner(coeffs, hi)
            if flo == 0 or fhi == 0 or _count_roots(coeffs, lo, hi) != 1:
                raise InvalidParameter("root isolator must contain exactly one root, none at the endpoints")
        self.root: Interval = (lo, hi)
        self._sign_lo = _sgn(_horner(coeffs, lo)) if self.degree > 1 else 0
        self._chain: list[Interval] = [(lo, hi)]
        self._lock = threading.Lock()
        lead = Fraction(coeffs[-1])
        monic = [Fraction(c) / lead for c in coeffs]
        d = self.degree
        # coordinates of theta^k for k = d .. 2d - 2
        red: list[list[Fraction]] = []
        cur = [-c for c in monic[:d]]
        for _ in range(max(d - 1, 0)):
            red.append(cur)
            top = cur[-1]
            cur = [Fraction(0)] + cur[:-1]
            cur = [a - top * m for a, m in zip(cur, monic[:d])]
        self._reduction = red

    # identity ----------------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, NumberField) or self.minpoly != other.minpoly:
            return False
        if self.degree == 1:
            return True
        lo = max(self.root[0], other.root[0])
        hi = min(self.root[1], other.root[1])
        return lo <= hi and _count_roots(self.minpoly, lo, hi) == 1

    def __hash__(self) -> int:
        return hash(self.minpoly)

    def __repr__(self) -> str:
        label = f"{self.name}: " if self.name else ""
        return f"NumberField({label}{_fmt_poly(self.minpoly)}, root in [{self.root[0]}, {self.root[1]}])"

    # refinement --------------------------------------------------------------
    def interval(self, depth: int) -> Interval:
        """Isolating interval after ``depth`` bisections; nested in ``depth``."""
        if self.degree == 1:
            return self.root
        with self._lock:
            while len(self._chain) <= depth:
                lo, hi = self._chain[-1]
                mid = (lo + hi) / 2
                if _sgn(_horner(self.minpoly, mid)) == self._sign_lo:
                    self._chain.append((mid, hi))
                else:
                    self._chain.append((lo, mid))
            return self._chain[depth]

    # elements ----------------------------------------------------------------
    def element(self, coords: Iterable[Rational]) -> "AlgebraicReal":
        return AlgebraicReal(self, coords)

    def __call__(self, value: Rational) -> "AlgebraicReal":
        return AlgebraicReal(self, [value])

    def zero(self) -> "AlgebraicReal":
        return AlgebraicReal(self, [])

    def one(self) -> "AlgebraicReal":
        return AlgebraicReal(self, [1])

    def generator(self) -> "AlgebraicReal":
        if self.degree == 1:
            return AlgebraicReal(self, [self.root[0]])
        return AlgebraicReal(self, [0, 1])

    def _reduce(self, prod: list[Fraction]) -> tuple[Fraction, ...]:
        d = self.degree
        out = prod[:d] + [Fraction(0)] * (d - len(prod[:d]))
        for k in range(d, len(prod)):
            c = prod[k]
            if c:
                row = self._reduction[k - d]
                for i in range(d):
                    out[i] += c * row[i]
        return tuple(out)


RATIONALS = NumberField([0, 1], (0, 0), name="QQ")


# -- elements ------------------------------------------------------------------

class AlgebraicReal:
    """An element of a real number field in power-basis coordinates."""

    __slots__ = ("field", "coords", "_minpoly")

    def __init__(self, field: NumberField, coords: Iterable[Rational]):
        cs = [Fraction(c) for c in coords]
        d = field.degree
        if len(cs) > d:
            cs = list(field._reduce(cs))
        cs += [Fraction(0)] * (d - len(cs))
        self.field = field
        self.coords: tuple[Fraction, ...] = tuple(cs)
        self._minpoly: tuple[int, ...] | None = None

    # coercion ----------------------------------------------------------------
    def _coerce(self, other) -> "AlgebraicReal":
        if isinstance(other, AlgebraicReal):
            if other.field is self.field or other.field == self.field:
                return other
            if other.is_rational():
                return AlgebraicReal(self.field, [other.coords[0]])
            if self.is_rational():
                return other  # handled by caller via field swap
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}; use field_join first")
        if isinstance(other, (int, Fraction)):
            return AlgebraicReal(self.field, [other])
        raise TypeError(f"cannot combine AlgebraicReal with {type(other).__name__}")

    def _pair(self, other) -> tuple["AlgebraicReal", "AlgebraicReal"] | None:
        try:
            o = self._coerce(other)
        except TypeError:
            return None
        if o.field is not self.field and not (o.field == self.field):
            # self is rational, other lives in a bigger field
            return AlgebraicReal(o.field, [self.coords[0]]), o
        return self, o

    # arithmetic --------------------------------------------------------------
    def __add__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        a, b = pr
        return AlgebraicReal(a.field, [x + y for x, y in zip(a.coords, b.coords)])

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicReal(self.field, [-x for x in self.coords])

    def __sub__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        a, b = pr
        return AlgebraicReal(a.field, [x - y for x, y in zip(a.coords, b.coords)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        a, b = pr
        d = a.field.degree
        if d == 1:
            return AlgebraicReal(a.field, [a.coords[0] * b.coords[0]])
        prod = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a.coords):
            if x:
                for j, y in enumerate(b.coords):
                    if y:
                        prod[i + j] += x * y
        return AlgebraicReal(a.field, a.field._reduce(prod))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def multiplication_matrix(self) -> list[list[Fraction]]:
        """Matrix of ``y -> self * y`` on the power basis (columns = images)."""
        d = self.field.degree
        cols = []
        cur = self
        gen = self.field.generator() if d > 1 else None
        for j in range(d):
            cols.append(cur.coords)
            if j + 1 < d:
                cur = cur * gen
        return [[cols[j][i] for j in range(d)] for i in range(d)]

    def inverse(self) -> "AlgebraicReal":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a number field")
        d = self.field.degree
        M = self.multiplication_matrix()
        aug = [M[i] + [Fraction(int(i == 0))] for i in range(d)]
        R, _ = rref(aug)
        return AlgebraicReal(self.field, [R[i][d] for i in range(d)])

    def __truediv__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        a, b = pr
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    # predicates --------------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def is_integer(self) -> bool:
        return self.is_rational() and self.coords[0].denominator == 1

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is irrational")
        return self.coords[0]

    # enclosures --------------------------------------------------------------
    def enclosure(self, depth: int) -> Interval:
        if self.is_rational():
            c = self.coords[0]
            return c, c
        return _horner_interval(self.coords, self.field.interval(depth))

    def embed_interval(self, p: int) -> Interval:
        """Rational interval of width at most ``2**-p`` containing the element.

        Uses the smallest bisection depth that meets the width bound, so the
        returned intervals are nested as ``p`` grows.
        """
        target = Fraction(1, 2 ** max(p, 0)) if p >= 0 else Fraction(2 ** (-p))

        def ok(depth: int) -> bool:
            lo, hi = self.enclosure(depth)
            return hi - lo <= target

        if ok(0):
            return self.enclosure(0)
        hi = 1
        while not ok(hi):
            hi *= 2
        lo = hi // 2
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if ok(mid):
                hi = mid
            else:
                lo = mid
        return self.enclosure(hi)

    def sign(self) -> int:
        """Exact sign: -1, 0 or 1."""
        if self.is_rational():
            return _sgn(self.coords[0])
        depth = 8
        while True:
            lo, hi = self.enclosure(depth)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            depth *= 2

    def __float__(self) -> float:
        lo, hi = self.embed_interval(60)
        return float((lo + hi) / 2)

    # comparisons -------------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        if not isinstance(other, AlgebraicReal):
            return NotImplemented
        if other.field is self.field or other.field == self.field:
            return self.coords == other.coords
        return same_real(self, other)

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coords[0])
        return hash(minimal_polynomial(self))

    def _cmp(self, other) -> int:
        if isinstance(other, AlgebraicReal) and not (other.field is self.field or other.field == self.field):
            return compare_reals(self, other)
        return (self - other).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __repr__(self) -> str:
        if self.is_rational():
            return f"AlgebraicReal({self.coords[0]})"
        return f"AlgebraicReal(~{float(self):.9g} in QQ[x]/({_fmt_poly(self.field.minpoly)}))"

    def polynomial_str(self, var: str = "t") -> str:
        parts = []
        for i, c in enumerate(self.coords):
            if c:
                mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
                parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts) if parts else "0"

    def embed(self, target: NumberField, generator_image: "AlgebraicReal") -> "AlgebraicReal":
        """Image under the field map sending this field's generator to ``generator_image``."""
        acc = target.zero()
        for c in reversed(self.coords):
            acc = acc * generator_image + c
        return acc


# -- minimal polynomials, kernels, comparisons --------------------------------

def _eval_poly_at(coeffs: Sequence[Rational], a: AlgebraicReal) -> AlgebraicReal:
    acc = a.field.zero()
    for c in reversed(coeffs):
        acc = acc * a + c
    return acc


def minimal_polynomial(a: AlgebraicReal) -> tuple[int, ...]:
    """Primitive integer minimal polynomial of ``a`` (lowest degree first)."""
    if a._minpoly is not None:
        return a._minpoly
    if a.is_rational():
        q = a.coords[0]
        result: tuple[int, ...] = _primitive([-q.numerator, q.denominator])
    else:
        M = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row]
                          for row in a.multiplication_matrix()])
        cp = M.charpoly(_X)
        cp = sympy.Poly(cp.as_expr(), _X, domain="QQ")
        ints = _from_sympy_poly(cp)
        result = None
        for f in _factor_integer_poly(ints):
            if _eval_poly_at(f, a).is_zero():
                result = f
                break
        assert result is not None, "characteristic polynomial has no vanishing factor"
    a._minpoly = result
    return result


def _common_field(elems: Sequence[AlgebraicReal]) -> NumberField:
    fields = [e.field for e in elems if not e.is_rational()]
    if not fields:
        return elems[0].field if elems else RATIONALS
    F = fields[0]
    for G in fields[1:]:
        if not (G is F or G == F):
            raise FieldMismatch("elements live in different fields; join them first")
    return F


def coerce_all(elems: Sequence, field: NumberField | None = None) -> list[AlgebraicReal]:
    """Lift ints, fractions and rational elements into one common field."""
    alg = [e for e in elems if isinstance(e, AlgebraicReal)]
    F = field or (_common_field(alg) if alg else RATIONALS)
    out = []
    for e in elems:
        if isinstance(e, AlgebraicReal):
            if e.field is F or e.field == F:
                out.append(e)
            elif e.is_rational():
                out.append(F(e.coords[0]))
            else:
                raise FieldMismatch("element outside the requested field")
        else:
            out.append(F(e))
    return out


def rational_kernel(elems: Sequence[AlgebraicReal]) -> list[list[int]]:
    """ZZ-basis of integer relations ``sum a_m * elems[m] == 0`` (empty iff QQ-independent)."""
    elems = coerce_all(elems)
    if not elems:
        return []
    den = lcm(*(c.denominator for e in elems for c in e.coords))
    rows = [[int(c * den) for c in e.coords] for e in elems]
    return integer_left_kernel(rows)


def coordinate_rank(elems: Sequence[AlgebraicReal]) -> int:
    """Dimension of the QQ-span of the elements."""
    from .intlinalg import rank
    elems = coerce_all(elems)
    return rank([list(e.coords) for e in elems]) if elems else 0


def same_real(a: AlgebraicReal, b: AlgebraicReal) -> bool:
    """Equality of real numbers across different field presentations."""
    if a.is_rational() or b.is_rational():
        if a.is_rational() and b.is_rational():
            return a.coords[0] == b.coords[0]
        return False
    p = minimal_polynomial(a)
    if p != minimal_polynomial(b):
        return False
    return _root_index(p, a) == _root_index(p, b)


def _root_index(p: tuple[int, ...], a: AlgebraicReal) -> int:
    boxes = _isolating_intervals(p)
    depth = 4
    while True:
        lo, hi = a.enclosure(depth)
        hits = [i for i, (u, v) in enumerate(boxes) if not (hi < u or lo > v)]
        if len(hits) == 1:
            return hits[0]
        depth *= 2


def compare_reals(a: AlgebraicReal, b: AlgebraicReal) -> int:
    if same_real(a, b):
        return 0
    depth = 8
    while True:
        alo, ahi = a.enclosure(depth)
        blo, bhi = b.enclosure(depth)
        if ahi < blo:
            return -1
        if bhi < alo:
            return 1
        depth *= 2


# -- joins ---------------------------------------------------------------------

def _poly_trim(p: list[AlgebraicReal]) -> list[AlgebraicReal]:
    while p and p[-1].is_zero():
        p = p[:-1]
    return p


def _poly_rem(a: list[AlgebraicReal], b: list[AlgebraicReal]) -> list[AlgebraicReal]:
    a = list(a)
    inv_lead = b[-1].inverse()
    while len(a) >= len(b):
        f = a[-1] * inv_lead
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = a[shift + i] - f * c
        a = _poly_trim(a[:-1])
    return a


def _poly_gcd(a: list[AlgebraicReal], b: list[AlgebraicReal]) -> list[AlgebraicReal]:
    a, b = _poly_trim(a), _poly_trim(b)
    while b:
        a, b = b, _poly_rem(a, b)
    inv = a[-1].inverse()
    return [c * inv for c in a]


_join_cache: dict[tuple, tuple] = {}
_join_lock = threading.Lock()


def join_fields(F1: NumberField, F2: NumberField) -> tuple[NumberField, AlgebraicReal, AlgebraicReal]:
    """A field ``K`` and the images in ``K`` of the generators of ``F1`` and ``F2``.

    Primitive element ``gamma = theta1 + s*theta2`` for small shifts ``s``;
    the minimal polynomial of ``gamma`` is the factor of
    ``Res_y(f1(x - s*y), f2(y))`` vanishing at gamma, and ``theta2`` is
    recovered from the (linear) gcd of ``f1(gamma - s*y)`` and ``f2(y)``
    over ``K``.
    """
    if F1 == F2:
        return F1, F1.generator(), F1.generator()
    if F1.degree == 1:
        return F2, F2(F1.root[0]), F2.generator()
    if F2.degree == 1:
        return F1, F1.generator(), F1(F2.root[0])
    key = (F1.minpoly, F1.root, F2.minpoly, F2.root)
    with _join_lock:
        if key in _join_cache:
            return _join_cache[key]
    f1 = _to_sympy_poly(F1.minpoly).as_expr()
    f2 = _to_sympy_poly(F2.minpoly, _Y).as_expr()
    for s in (1, -1, 2, -2, 3, -3, 5, -5, 7, -7):
        R = sympy.resultant(f1.subs(_X, _X - s * _Y), f2, _Y)
        R = sympy.Poly(R, _X, domain="ZZ")
        factors = _factor_integer_poly(_from_sympy_poly(R))
        # locate gamma among the roots of the factors
        depth = 8
        chosen = None
        while chosen is None and depth < 4096:
            i1, i2 = F1.interval(depth), F2.interval(depth)
            s2 = (min(s * i2[0], s * i2[1]), max(s * i2[0], s * i2[1]))
            J = (i1[0] + s2[0], i1[1] + s2[1])
            hits = [(f, box) for f in factors for box in _isolating_intervals(f)
                    if not (J[1] < box[0] or J[0] > box[1])]
            if len(hits) == 1:
                chosen = hits[0]
            depth *= 2
        if chosen is None:
            continue
        h, box = chosen
        K = NumberField(h, box, check=False)
        gamma = K.generator()
        # f1(gamma - s*y) as a polynomial in y over K
        n1 = len(F1.minpoly) - 1
        gpow = [K.one()]
        for _ in range(n1):
            gpow.append(gpow[-1] * gamma)
        P1 = []
        for j in range(n1 + 1):
            acc = K.zero()
            for i in range(j, n1 + 1):
                c = F1.minpoly[i]
                if c:
                    acc = acc + gpow[i - j] * (c * comb(i, j) * (-s) ** j)
            P1.append(acc)
        P2 = [K(c) for c in F2.minpoly]
        g = _poly_gcd(P1, P2)
        if len(g) != 2:
            continue
        theta2 = -g[0]
        theta1 = gamma - theta2 * s
        if not (_eval_poly_at(F1.minpoly, theta1).is_zero() and _eval_poly_at(F2.minpoly, theta2).is_zero()):
            continue
        if not (same_real(theta1, F1.generator()) and same_real(theta2, F2.generator())):
            continue
        result = (K, theta1, theta2)
        with _join_lock:
            _join_cache[key] = result
        return result
    raise UnsupportedFieldPair(f"could not join {F1!r} and {F2!r}")


def field_join(a: AlgebraicReal, b: AlgebraicReal) -> tuple[NumberField, AlgebraicReal, AlgebraicReal]:
    """Common field containing ``a`` and ``b`` together with their images."""
    if a.field is b.field or a.field == b.field:
        return a.field, a, b
    K, g1, g2 = join_fields(a.field, b.field)
    return K, a.embed(K, g1), b.embed(K, g2)


def common_field_all(elems: Sequence[AlgebraicReal]) -> list[AlgebraicReal]:
    """Embed a list of elements from possibly different fields into one field."""
    elems = list(elems)
    nonrat = [e for e in elems if not e.is_rational()]
    if not nonrat:
        return coerce_all(elems)
    K = nonrat[0].field
    fields = [K]
    for e in nonrat[1:]:
        if not any(e.field == F for F in fields):
            fields.append(e.field)
    if len(fields) == 1:
        return coerce_all(elems, K)
    # fold the fields into one, tracking generator images
    K, cur = fields[0], [fields[0].generator()]
    for F in fields[1:]:
        K2, img_old, img_new = join_fields(K, F)
        cur = [c.embed(K2, img_old) for c in cur] + [img_new]
        K = K2
    out = []
    for e in elems:
        if e.is_rational():
            out.append(K(e.coords[0]))
            continue
        idx = next(i for i, F in enumerate(fields) if e.field == F)
        out.append(e.embed(K, cur[idx]))
    return out


# -- named fields and constants ------------------------------------------------

def _chebyshev_qint_polys(N: int) -> list[list[int]]:
    """``P_n`` with ``[n]_q = P_n(q + 1/q)``; returns ``P_0 .. P_N``."""
    P = [[0], [1]]
    for _ in range(1, N):
        a, b = P[-1], P[-2]
        nxt = [0] + a
        for i, c in enumerate(b):
            nxt[i] -= c
        P.append(nxt)
    return P


@lru_cache(maxsize=None)
def cyclotomic_real_field(N: int) -> NumberField:
    """``QQ(2cos(pi/N))``, the field of the quantum integers at ``q = exp(i pi/N)``."""
    if N < 2:
        raise InvalidParameter("N must be at least 2")
    if N == 2:
        return NumberField([0, 1], (0, 0), name="cos_pi_over_2")
    PN = _primitive(tuple(_chebyshev_qint_polys(N)[N]))
    # 2cos(pi/N) is the largest root of P_N; compare each factor's largest root exactly
    best = None
    for f in _factor_integer_poly(PN):
        if len(f) == 2:
            cand = RATIONALS(Fraction(-f[0], f[1]))
        else:
            lo, hi = max(_isolating_intervals(f), key=lambda b: b[1])
            cand = NumberField(f, (lo, hi)).generator()
        if best is None or compare_reals(cand, best) > 0:
            best = cand
    F = best.field
    if F.degree == 1:
        return NumberField([-best.coords[0].numerator, best.coords[0].denominator], (0, 0),
                           name=f"cos_pi_over_{N}")
    return NumberField(F.minpoly, F.root, name=f"cos_pi_over_{N}")


@lru_cache(maxsize=None)
def _qint_table(N: int) -> tuple[AlgebraicReal, ...]:
    K = cyclotomic_real_field(N)
    c = K.generator()
    vals = [K.zero(), K.one()]
    for _ in range(2 * N - 1):
        vals.append(c * vals[-1] - vals[-2])
    return tuple(vals[: 2 * N])


def quantum_integer(n: int, N: int) -> AlgebraicReal:
    """``[n]_q = sin(n pi/N) / sin(pi/N)`` in ``QQ(2cos(pi/N))``."""
    if N < 3:
        raise InvalidParameter("quantum integers need N >= 3")
    return _qint_table(N)[n % (2 * N)]


@lru_cache(maxsize=None)
def _phi_field(g: int) -> NumberField:
    return NumberField([-1, -g, 1], (g, g + 1), name=f"phi_{g}")


def phi_G(g: int) -> AlgebraicReal:
    """Positive root of ``x^2 - g*x - 1`` (the Haagerup-Izumi dimension for ``|G| = g``)."""
    if not isinstance(g, int) or g <= 0:
        raise InvalidParameter("phi_G needs a positive group order")
    return _phi_field(g).generator()


def named_field(name: str) -> NumberField:
    """Resolve presets ``cos_pi_over_N`` and ``phi_g``."""
    if name.startswith("cos_pi_over_"):
        return cyclotomic_real_field(int(name[len("cos_pi_over_"):]))
    if name.startswith("phi_"):
        return _phi_field(int(name[4:]))
    if name == "QQ":
        return RATIONALS
    raise InvalidParameter(f"unknown field preset {name!r}")


def solve_nullspace(rows: Sequence[Sequence[AlgebraicReal]]) -> list[list[AlgebraicReal]]:
    """Nullspace basis of a matrix over a number field (Gauss-Jordan)."""
    A = [list(r) for r in rows]
    m = len(A)
    n = len(A[0])
    K = A[0][0].field
    pivots: list[int] = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if not A[i][c].is_zero()), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = A[r][c].inverse()
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and not A[i][c].is_zero():
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    basis = []
    for f in (c for c in range(n) if c not in pivots):
        v = [K.zero() for _ in range(n)]
        v[f] = K.one()
        for i, p in enumerate(pivots):
            v[p] = -A[i][f]
        basis.append(v)
    return basis


def field_determinant(rows: Sequence[Sequence[AlgebraicReal]]) -> AlgebraicReal:
    A = [list(r) for r in rows]
    n = len(A)
    K = A[0][0].field
    result = K.one()
    for c in range(n):
        p = next((i for i in range(c, n) if not A[i][c].is_zero()), None)
        if p is None:
            return K.zero()
        if p != c:
            A[c], A[p] = A[p], A[c]
            result = -result
        result = result * A[c][c]
        inv = A[c][c].inverse()
        for i in range(c + 1, n):
            if not A[i][c].is_zero():
                f = A[i][c] * inv
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return result



# -- lattices (finitely generated ZZ-submodules of a field) ------------------

def _lattice_rows(elems: Sequence[AlgebraicReal]) -> tuple[NumberField, int, list[list[int]]]:
    elems = coerce_all(list(elems))
    F = elems[0].field
    den = lcm(*(c.denominator for e in elems for c in e.coords))
    return F, den, [[int(c * den) for c in e.coords] for e in elems]


def hermite_reduce(gens: Sequence[AlgebraicReal]) -> list[AlgebraicReal]:
    """Canonical ZZ-basis of the span of ``gens``: Hermite-reduced power-basis coordinates."""
    from .intlinalg import hnf
    gens = [g for g in coerce_all(list(gens))]
    if not gens:
        return []
    F, den, rows = _lattice_rows(gens)
    H = hnf(rows)
    return [AlgebraicReal(F, [Fraction(x, den) for x in row]) for row in H]


def lattice_key(gens: Sequence[AlgebraicReal]) -> tuple:
    """Hashable canonical form: ``(minpoly, root box, rows)`` with rows the HNF of the coordinates."""
    basis = hermite_reduce(gens)
    if not basis:
        return ()
    F = basis[0].field
    return (F.minpoly, tuple(tuple(b.coords) for b in basis))


def lattice_equal(L1: Sequence[AlgebraicReal], L2: Sequence[AlgebraicReal]) -> bool:
    """Equality of ZZ-spans, after embedding both generator lists in one field."""
    both = common_field_all(list(L1) + list(L2))
    a, b = both[: len(L1)], both[len(L1):]
    return [x.coords for x in hermite_reduce(a)] == [x.coords for x in hermite_reduce(b)]


def lattice_contains(L: Sequence[AlgebraicReal], x: AlgebraicReal) -> bool:
    both = common_field_all(list(L) + [x])
    return lattice_equal(both[:-1], both)


def lattice_rank(L: Sequence[AlgebraicReal]) -> int:
    return len(hermite_reduce(L))


def scale_lattice(L: Sequence[AlgebraicReal], mu: AlgebraicReal) -> list[AlgebraicReal]:
    both = common_field_all(list(L) + [mu])
    return [x * both[-1] for x in both[:-1]]

__all__ = [
    "NumberField", "AlgebraicReal", "RATIONALS", "minimal_polynomial", "rational_kernel",
    "coordinate_rank", "field_join", "join_fields", "common_field_all", "coerce_all",
    "same_real", "compare_reals", "cyclotomic_real_field", "quantum_integer", "phi_G",
    "named_field", "solve_nullspace", "field_determinant", "rational_nullspace",
    "hermite_reduce", "lattice_key", "lattice_equal", "lattice_contains", "lattice_rank",
    "scale_lattice",
]
