"""Deterministic check reports (JSON and text)."""
from __future__ import annotations

import math
import platform
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import mpmath

from .numfield import AlgebraicReal
from .serialize import REPORT_SCHEMA, dumps, validate

STATUSES = ("pass", "fail", "error", "assumed")


@dataclass
class Check:
    name: str
    status: str
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")


@dataclass
class Report:
    command: str
    checks: list[Check] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def add(self, name: str, status: str | bool, **details) -> Check:
        if isinstance(status, bool):
            status = "pass" if status else "fail"
        c = Check(name, status, details)
        self.checks.append(c)
        return c

    @property
    def ok(self) -> bool:
        return all(c.status in ("pass", "assumed") for c in self.checks)

    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_dict(self) -> dict:
        names = [c.name for c in self.checks]
        if len(names) != len(set(names)):
            raise ValueError("duplicate check names in report")
        meta = dict(self.metadata)
        meta.setdefault("assumptions", sorted({c.name for c in self.checks if c.status == "assumed"}))
        d = {"command": self.command, "ok": self.ok,
             "checks": [{"name": c.name, "status": c.status, "details": _jsonable(c.details)}
                        for c in sorted(self.checks, key=lambda c: c.name)],
             "metadata": _jsonable(meta)}
        validate(d, REPORT_SCHEMA, "report")
        return d

    def to_json(self) -> str:
        return dumps(self.to_dict())

    def to_text(self) -> str:
        d = self.to_dict()
        lines = [f"{d['command']}: {'OK' if d['ok'] else 'FAILED'}"]
        for c in d["checks"]:
            lines.append(f"  [{c['status'].upper():7}] {c['name']}")
            for k in sorted(c["details"]):
                lines.append(f"            {k}: {_short(c['details'][k])}")
        if d["metadata"].get("assumptions"):
            lines.append("  assumptions: " + ", ".join(d["metadata"]["assumptions"]))
        return "\n".join(lines) + "\n"


def _short(v: Any, limit: int = 160) -> str:
    s = v if isinstance(v, str) else dumps(v).replace("\n", "").replace("  ", "")
    return s if len(s) <= limit else s[: limit - 3] + "..."


def _jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, AlgebraicReal):
        return x.polynomial_str()
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if isinstance(x, float):
        return repr(x)
    return str(x)


def approx(a: AlgebraicReal, bits: int = 53) -> str:
    """Decimal display of an enclosure midpoint; only for humans, never for verdicts."""
    lo, hi = a.embed_interval(bits + 4)
    mid = (lo + hi) / 2
    digits = max(3, int(math.ceil(bits * math.log10(2))))
    with mpmath.workdps(digits + 5):
        return mpmath.nstr(mpmath.mpf(mid.numerator) / mid.denominator, digits)


def base_metadata(**extra) -> dict:
    from . import __version__
    import sympy
    meta = {"tool": "fusiontori", "version": __version__, "sympy": sympy.__version__,
            "python": ".".join(platform.python_version_tuple()[:2])}
    meta.update(extra)
    return meta
