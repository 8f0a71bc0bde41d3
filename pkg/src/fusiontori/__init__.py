"""Exact arithmetic for fusion rings, their modules, and the K-theory of the
AF, AT and noncommutative-torus algebras built from them."""
from __future__ import annotations

__version__ = "0.1.0"

from .errors import (FieldMismatch, FusionToriError, HypothesisViolation, InvalidParameter, NeedsAssumption,
                     NotIrreducible, NotSimple, NotSkew, NotSupported, SchemaError, UnsupportedFieldPair)
from .fusion import (FusionRing, e8_adjoint, fib, fpdim, fpdims, group_ring, haagerup_izumi, psu2_level,
                     su2_level, verify, word_matrix)
from .ktheory import match_invariants, nogo_algebraic, nogo_divisibility, stationary_data, stationary_invariant
from .nctorus import pfaffian, theta_from_upper, torus_invariant, trace_range
from .nimrep import NimRep, hi_rank2, regular
from .numfield import AlgebraicReal, NumberField, cyclotomic_real_field, phi_G, quantum_integer

__all__ = [
    "__version__", "FusionToriError", "InvalidParameter", "FieldMismatch", "UnsupportedFieldPair",
    "NotIrreducible", "NotSkew", "NotSimple", "HypothesisViolation", "NeedsAssumption", "NotSupported",
    "SchemaError", "FusionRing", "verify", "word_matrix", "fpdims", "fpdim", "su2_level", "psu2_level",
    "group_ring", "haagerup_izumi", "e8_adjoint", "fib", "NimRep", "regular", "hi_rank2", "stationary_data",
    "stationary_invariant", "match_invariants", "nogo_divisibility", "nogo_algebraic", "theta_from_upper",
    "pfaffian", "trace_range", "torus_invariant", "NumberField", "AlgebraicReal", "cyclotomic_real_field",
    "quantum_integer", "phi_G",
]
