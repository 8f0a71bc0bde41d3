"""Printed reference data and named presets.

Matrices and vectors are stored exactly as printed, including entries that
the computations disagree with; comparisons against them are the point.
"""
from __future__ import annotations

from .errors import InvalidParameter
from .fusion import FusionRing, e8_adjoint, fib, group_ring, haagerup_izumi, psu2_level, su2_level

E8_CONNECTING = [
    [3, 7, 10, 3],
    [7, 20, 30, 10],
    [10, 30, 50, 17],
    [3, 10, 17, 6],
]

# columns [H^1_C] for C = 1, A, B, tau
E8_CLASS_COLUMNS = [
    [1, 1, 1, 1],
    [1, 3, 4, 1],
    [1, 4, 7, 2],
    [1, 1, 2, 2],
]

E8_CLASS_MATRIX = [
    [1, 1, 1, 1],
    [1, 3, 4, 1],
    [1, 4, 7, 2],
    [1, 1, 2, 2],
]

# lowest degree first
E8_MINPOLYS = {
    "A": (1, 3, -1, -3, 1),
    "B": (1, 1, -4, -4, 1),
    "tau": (-1, -1, 1),
}

# printed upper triangle (1-based) plus the printed (3,2) entry
E8_THETA_PRINTED = {(1, 2): "phi", (1, 3): "alpha", (2, 3): "beta", (3, 2): "+beta"}

PSU15_CONNECTING = [
    [3, 6, 6, 3, 1, 0, 0, 0],
    [6, 15, 15, 10, 4, 1, 0, 0],
    [6, 15, 19, 16, 10, 4, 1, 0],
    [3, 10, 16, 19, 16, 10, 4, 1],
    [1, 4, 10, 16, 19, 16, 10, 1],
    [0, 1, 4, 10, 16, 19, 16, 9],
    [0, 0, 1, 4, 10, 16, 18, 12],
    [0, 0, 0, 1, 4, 9, 12, 9],
]

PSU15_CLASS_COLUMNS = [
    [1, 1, 1, 1, 1, 1, 1, 1],
    [1, 3, 3, 3, 3, 3, 3, 2],
    [1, 3, 5, 5, 5, 5, 4, 2],
    [1, 3, 5, 7, 7, 6, 4, 2],
    [1, 3, 5, 7, 8, 6, 4, 2],
    [1, 3, 5, 6, 6, 6, 4, 2],
    [1, 3, 4, 4, 4, 4, 4, 2],
    [1, 2, 2, 2, 2, 2, 2, 2],
]

# theta_ij = [n]_q with q = exp(i pi / 17), 1-based upper triangle
PSU15_THETA_QINTS = {(1, 2): 2, (1, 3): 8, (1, 4): 14, (2, 3): 6, (2, 4): 10, (3, 4): 4}
PSU15_PFAFFIAN_CLAIM = -12  # printed: pf = -[12]_q

HI_GROUPS = {"Z2": [2], "Z3": [3], "Z4": [4], "Z2xZ2": [2, 2]}


def parse_group(spec: str) -> list[int]:
    """``"3"``, ``"Z3"``, ``"[3]"``, ``"2x2"``, ``"Z2xZ2"`` or ``"2,2"`` to cyclic orders."""
    s = spec.strip().strip("[]()").lower().replace("z/", "").replace("z", "").replace(" ", "")
    if not s:
        return [1]
    parts = [p for p in s.replace(",", "x").split("x") if p]
    try:
        orders = [int(p) for p in parts]
    except ValueError:
        raise InvalidParameter(f"cannot parse group {spec!r}") from None
    if any(o < 1 for o in orders):
        raise InvalidParameter(f"cyclic orders must be positive in {spec!r}")
    return orders


def ring_preset(name: str) -> FusionRing:
    """Resolve ``e8``, ``psu2_15``, ``fib``, ``hi:<group>``, ``su2:<k>``, ``psu2:<k>``, ``group:<group>``."""
    key = name.strip().lower()
    if key in ("e8", "e8_adjoint"):
        return e8_adjoint()
    if key in ("psu2_15",):
        return psu2_level(15)
    if key == "fib":
        return fib()
    head, _, arg = key.partition(":")
    if not arg:
        raise InvalidParameter(f"unknown preset {name!r}")
    if head == "hi":
        return haagerup_izumi(parse_group(arg))
    if head == "group":
        return group_ring(parse_group(arg))
    try:
        k = int(arg)
    except ValueError:
        raise InvalidParameter(f"preset {name!r} needs an integer level") from None
    if head == "su2":
        return su2_level(k)
    if head == "psu2":
        return psu2_level(k)
    raise InvalidParameter(f"unknown preset {name!r}")


def is_preset(name: str) -> bool:
    try:
        ring_preset(name)
    except InvalidParameter:
        return False
    return True
