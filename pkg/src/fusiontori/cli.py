"""``fusiontori`` command line."""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import atmodel, fusion, ktheory, nctorus, nimrep, paperchecks, serialize
from .errors import FusionToriError, InvalidParameter, NeedsAssumption, SchemaError
from .numfield import minimal_polynomial
from .presets import PSU15_PFAFFIAN_CLAIM, parse_group
from .report import Report, approx, base_metadata

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class Ctx:
    def __init__(self, args: argparse.Namespace):
        self.precision: int = args.precision
        self.max_degree: int = args.max_degree
        self.assume_hi_dual: bool = args.assume_hi_dual
        self.input: str | None = args.input

    def approx(self, x) -> str:
        return approx(x, self.precision)

    def check_degree(self, rep: Report, name: str, F) -> bool:
        if F.degree > self.max_degree:
            rep.add(name, "error", error=f"field degree {F.degree} exceeds --max-degree {self.max_degree}")
            return False
        return True


def _source(ctx: Ctx, preset: str | None, what: str):
    if ctx.input and preset:
        raise InvalidParameter(f"give either a {what} preset or --input, not both")
    if ctx.input:
        return serialize.load_json(ctx.input), Path(ctx.input).parent, ctx.input
    if not preset:
        raise InvalidParameter(f"a {what} preset or --input PATH is required")
    return preset, None, preset


# -- rings -------------------------------------------------------------------

def cmd_verify_ring(ctx: Ctx, preset: str | None = None) -> Report:
    obj, _, src = _source(ctx, preset, "ring")
    R = serialize.ring_from_json(obj)
    rep = Report("verify-ring", metadata=base_metadata(source=src, ring=R.name, rank=R.rank))
    vr = fusion.verify(R)
    for axiom in vr.checked:
        rep.add(f"axiom.{axiom}", axiom not in vr.counts, violations=vr.violations.get(axiom, []),
                count=vr.counts.get(axiom, 0))
    return rep


def cmd_dims(ctx: Ctx, preset: str | None = None) -> Report:
    obj, _, src = _source(ctx, preset, "ring")
    R = serialize.ring_from_json(obj)
    rep = Report("dims", metadata=base_metadata(source=src, ring=R.name, rank=R.rank))
    dims = fusion.fpdims(R)
    if not ctx.check_degree(rep, "dims.field", dims[0].field):
        return rep
    ok = True
    # exact eigen-equation M_a d = d_a d
    for a in range(R.rank):
        M = fusion.fusion_matrix(R, a)
        for b in range(R.rank):
            lhs = sum((dims[c] * M[b][c] for c in range(R.rank)), dims[0] * 0)
            ok = ok and lhs == dims[b] * dims[a]
    rep.add("dims.eigen_equation", ok, field_minpoly=list(dims[0].field.minpoly))
    rep.add("dims.values", "pass", dims={R.labels[i]: {"coords": d, "minpoly": list(minimal_polynomial(d)),
                                                       "approx": ctx.approx(d)} for i, d in enumerate(dims)},
            global_dimension=ctx.approx(fusion.global_dimension(R)), integral=fusion.is_integral(R))
    return rep


def cmd_nimrep(ctx: Ctx, preset: str | None = None, weights: Sequence[int] | None = None) -> Report:
    obj, base, src = _source(ctx, preset, "nimrep")
    nr = serialize.nimrep_from_json(obj, base)
    rep = Report("nimrep", metadata=base_metadata(source=src, ring=nr.ring.name, rank=nr.rank))
    vr = nimrep.verify(nr)
    for axiom in vr.checked:
        rep.add(f"axiom.{axiom}", axiom not in vr.counts, violations=vr.violations.get(axiom, []))
    if vr.ok:
        d = nimrep.module_dims(nr)
        rep.add("nimrep.module_dims", "pass", dims={nr.basis[i]: {"coords": x, "approx": ctx.approx(x)}
                                                      for i, x in enumerate(d)})
        if weights is not None:
            C = nimrep.class_matrix(nr, weights)
            square = len(C) == len(C[0])
            from .intlinalg import det
            dC = det(C) if square else None
            rep.add("nimrep.class_basis", square and abs(dC) == 1, class_matrix=C, determinant=dC)
    return rep


# -- stationary data ----------------------------------------------------------

def stationary_preset(name: str, assume: bool) -> ktheory.StationaryData:
    key = name.strip().lower()
    if key in ("e8", "e8_adjoint"):
        return paperchecks.e8_stationary()
    if key == "psu2_15":
        return paperchecks.psu15_stationary()
    head, _, arg = key.partition(":")
    if head == "hi" and arg:
        return paperchecks.hi_stationary(parse_group(arg), assume)
    raise InvalidParameter(f"no stationary preset {name!r} (choose e8, psu2_15 or hi:<group>)")


def _load_stationary(ctx: Ctx, preset: str | None):
    obj, base, src = _source(ctx, preset, "stationary")
    if isinstance(obj, str):
        return stationary_preset(obj, ctx.assume_hi_dual), src
    return serialize.stationary_from_json(obj, base, ctx.assume_hi_dual), src


def cmd_stationary(ctx: Ctx, preset: str | None = None) -> Report:
    sd, src = _load_stationary(ctx, preset)
    rep = Report("stationary", metadata=base_metadata(source=src, ring=sd.nr.ring.name,
                                                      assume_hi_dual=ctx.assume_hi_dual))
    T = ktheory.connecting_matrix(sd)
    prim, power = ktheory.is_primitive(T)
    gl, d = ktheory.is_gl_z(T)
    rep.add("stationary.primitive", prim, positive_power=power)
    rep.add("stationary.gl_z", gl, determinant=d, connecting_matrix=T)
    try:
        l, how = ktheory.unit_multiplicity_for(sd)
    except NeedsAssumption as e:
        rep.add("stationary.unit_multiplicity", "error", error=str(e))
        return rep
    rep.add("stationary.unit_multiplicity", "assumed" if how == "assumed" else l >= 2,
            unit_multiplicity=l, source=how)
    if prim and gl and l >= 2:
        inv = ktheory.stationary_invariant(sd)
        td = ktheory.trace_data(sd)
        rep.add("stationary.invariant", "pass", invariant=serialize.invariant_to_json(inv),
                lattice_approx=[ctx.approx(x) for x in inv.lattice],
                trace_vector_approx=[ctx.approx(x) for x in td.trace_vector],
                class_span_index=inv.meta["class_span_index"])
    return rep


# -- theta ------------------------------------------------------------------------

def theta_preset(name: str) -> nctorus.ThetaMatrix:
    key = name.strip().lower()
    if key in ("e8", "e8_adjoint"):
        return nctorus.theta_e8()
    if key == "psu2_15":
        return nctorus.theta_psu2_15()
    head, _, arg = key.partition(":")
    if head == "hi" and arg:
        return nctorus.theta_hi(parse_group(arg))
    raise InvalidParameter(f"no theta preset {name!r} (choose e8, psu2_15 or hi:<group>)")


def cmd_theta(ctx: Ctx, preset: str | None = None) -> Report:
    obj, _, src = _source(ctx, preset, "theta")
    th = theta_preset(obj) if isinstance(obj, str) else serialize.theta_from_json(obj)
    rep = Report("theta", metadata=base_metadata(source=src, n=th.n))
    if not ctx.check_degree(rep, "theta.field", th.field):
        return rep
    rep.add("theta.skew", "pass", notes=list(th.notes))
    dg = nctorus.is_degenerate(th)
    rep.add("theta.nondegenerate", not dg.degenerate, witness=list(dg.witness) if dg.witness else None)
    if th.n % 2 == 0:
        pf = nctorus.pfaffian(th)
        dt = nctorus.determinant(th)
        rep.add("theta.pfaffian", pf * pf == dt, pfaffian=pf, pfaffian_approx=ctx.approx(pf),
                determinant=dt)
        if isinstance(obj, str) and obj.strip().lower() == "psu2_15":
            from .numfield import quantum_integer
            claim = -quantum_integer(-PSU15_PFAFFIAN_CLAIM, 17)
            rep.add("theta.pfaffian_claim", pf == claim, claimed="-[12]_q", claimed_approx=ctx.approx(claim),
                    pfaffian_approx=ctx.approx(pf))
    if not dg.degenerate:
        inv = nctorus.torus_invariant(th)
        rep.add("theta.trace_range", "pass", lattice=list(inv.lattice),
                lattice_approx=[ctx.approx(x) for x in inv.lattice], k0_rank=inv.k0_rank,
                experimental=inv.meta["experimental"])
    return rep


# -- matching ---------------------------------------------------------------------

def invariant_source(spec: str, ctx: Ctx) -> ktheory.ElliottInvariant:
    """``stationary:<preset>``, ``torus:<preset>`` or a path to invariant, stationary or theta JSON."""
    head, _, arg = spec.partition(":")
    if head == "stationary" and arg:
        return ktheory.stationary_invariant(stationary_preset(arg, ctx.assume_hi_dual))
    if head == "torus" and arg:
        return nctorus.torus_invariant(theta_preset(arg))
    p = Path(spec)
    if not p.exists():
        raise InvalidParameter(f"invariant {spec!r} is neither stationary:<preset>, torus:<preset> nor a file")
    obj = serialize.load_json(p)
    if isinstance(obj, dict) and "entries_upper" in obj:
        return nctorus.torus_invariant(serialize.theta_from_json(obj))
    if isinstance(obj, dict) and "nimrep" in obj:
        return ktheory.stationary_invariant(serialize.stationary_from_json(obj, p.parent, ctx.assume_hi_dual))
    return serialize.invariant_from_json(obj)


def cmd_match(ctx: Ctx, a: str, b: str, expect: str | None = None) -> Report:
    I1, I2 = invariant_source(a, ctx), invariant_source(b, ctx)
    rep = Report("match", metadata=base_metadata(first=a, second=b, assume_hi_dual=ctx.assume_hi_dual))
    m = ktheory.match_invariants(I1, I2)
    d = m.to_dict()
    status = "pass" if expect is None else m.label() == expect
    rep.add("match.verdict", status, expected=expect, **d)
    for side, inv in (("first", I1), ("second", I2)):
        if inv.meta.get("unit_multiplicity_status") == "assumed":
            rep.add(f"match.{side}_unit_multiplicity", "assumed", unit_multiplicity=inv.meta["unit_multiplicity"])
    return rep


# -- no-go ------------------------------------------------------------------------

def cmd_nogo(ctx: Ctx, preset: str | None, n: int) -> Report:
    """``pass`` means no obstruction was found; an obstruction is reported as ``fail``."""
    obj, _, src = _source(ctx, preset, "ring")
    R = serialize.ring_from_json(obj)
    rep = Report("nogo", metadata=base_metadata(source=src, ring=R.name, n=n))
    r1 = ktheory.nogo_divisibility(R, n)
    rep.add("nogo.divisibility", not r1.obstructed, verdict=r1.verdict, **r1.certificate)
    r2 = ktheory.nogo_algebraic(R)
    rep.add("nogo.algebraic", not r2.obstructed, verdict=r2.verdict, **r2.certificate)
    return rep


# -- AT model ----------------------------------------------------------------------

def parse_weights(s: str) -> dict[str, Fraction]:
    out = {}
    for part in filter(None, (p.strip() for p in s.split(","))):
        k, sep, v = part.partition("=")
        if not sep:
            raise InvalidParameter(f"weight {part!r} is not of the form name=value")
        try:
            out[k.strip()] = Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            raise InvalidParameter(f"weight {part!r} has a non-rational value") from None
    return out


def cmd_atmodel(ctx: Ctx, l: int, weights: dict[str, Fraction], K: int, depth: int | None = None,
                eps: Fraction | None = None) -> Report:
    others = tuple(1 for k in weights if k != "1")
    su = atmodel.ShiftUnitary(l, others)
    rep = Report("atmodel", metadata=base_metadata(l=l, K=K, weights={k: str(v) for k, v in weights.items()}))
    W = atmodel.w_matrix(su)
    rep.add("atmodel.unitary", W.is_unitary())
    cp = {k: v for k, v in atmodel.unit_block_charpoly(l).items() if not v.is_zero()}
    rep.add("atmodel.charpoly", cp == {l: atmodel.ONE, 0: -atmodel.LaurentPoly.monomial(1)},
            coefficients={str(k): repr(v) for k, v in sorted(cp.items())})
    rep.add("atmodel.winding", atmodel.det_winding(W) == 1, winding=atmodel.det_winding(W))
    bad = [[j, k] for j in range(-K, K + 1) for k in range(-K, K + 1) if abs(j + k) <= K
           and atmodel.w_power(su, j) @ atmodel.w_power(su, k) != atmodel.w_power(su, j + k)]
    rep.add("atmodel.nu_multiplicative", not bad, failures=bad[:10])
    rec = atmodel.trace_recursion(su, weights, K)
    ora = atmodel.direct_block_trace(su, weights, K)
    rep.add("atmodel.trace_recursion", rec == ora, mu={str(k): v for k, v in rec.items()},
            mismatches=[k for k in rec if rec[k] != ora[k]])
    if depth is not None and eps is not None:
        rep.add("atmodel.density", "pass", dense_within_eps=atmodel.roots_density_check(l, depth, eps),
                depth=depth, eps=eps)
    return rep


# -- reproduce ----------------------------------------------------------------------

def cmd_reproduce_paper(ctx: Ctx) -> Report:
    rep = Report("reproduce-paper", metadata=base_metadata(
        presets=["e8", "psu2_15", "hi:Z2", "hi:Z3", "hi:Z4", "hi:Z2xZ2", "fib", "psu2:5", "group:Z5"],
        assume_hi_dual=True))
    return paperchecks.reproduce(rep)


# -- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", metavar="PATH", help="JSON input instead of a preset")
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--precision", type=int, default=53, metavar="BITS",
                        help="bits for displayed decimal approximations (verdicts are exact)")
    common.add_argument("--max-degree", type=int, default=64, metavar="K",
                        help="refuse number fields of degree above K")
    common.add_argument("--assume-hi-dual", action="store_true",
                        help="take the dual ring of the rank-2 Haagerup-Izumi module to be HI of the dual group")

    p = argparse.ArgumentParser(prog="fusiontori", description="Exact checks for fusion-category data "
                                "and the K-theory of the associated tori and AT algebras.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, helptext in (("verify-ring", "check the fusion-ring axioms"),
                           ("dims", "Frobenius-Perron dimensions"),
                           ("stationary", "K-theory of a stationary inductive limit"),
                           ("theta", "degeneracy, Pfaffians and trace range of a theta matrix")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("preset", nargs="?")
    s = sub.add_parser("nimrep", parents=[common], help="check a module (NIM-rep)")
    s.add_argument("preset", nargs="?")
    s.add_argument("--weights", help="progenerator weights, comma separated, for the class matrix")
    s = sub.add_parser("match", parents=[common], help="compare two invariant records")
    s.add_argument("first")
    s.add_argument("second")
    s.add_argument("--expect", help="expected verdict label")
    s = sub.add_parser("nogo", parents=[common], help="obstructions to actions on an n-torus")
    s.add_argument("preset", nargs="?")
    s.add_argument("--n", type=int, required=True)
    s = sub.add_parser("atmodel", parents=[common], help="shift-unitary model checks")
    s.add_argument("--l", type=int, required=True)
    s.add_argument("--weights", default="1=1/2,x=1/2", help="block weights, e.g. 1=1/2,x=1/2")
    s.add_argument("--K", type=int, default=12)
    s.add_argument("--depth", type=int)
    s.add_argument("--eps", type=Fraction)
    sub.add_parser("reproduce-paper", parents=[common], help="run the full reproduction suite")
    return p


def run(args: argparse.Namespace) -> Report:
    ctx = Ctx(args)
    c = args.command
    if c == "verify-ring":
        return cmd_verify_ring(ctx, args.preset)
    if c == "dims":
        return cmd_dims(ctx, args.preset)
    if c == "nimrep":
        w = [int(x) for x in args.weights.split(",")] if args.weights else None
        return cmd_nimrep(ctx, args.preset, w)
    if c == "stationary":
        return cmd_stationary(ctx, args.preset)
    if c == "theta":
        return cmd_theta(ctx, args.preset)
    if c == "match":
        return cmd_match(ctx, args.first, args.second, args.expect)
    if c == "nogo":
        return cmd_nogo(ctx, args.preset, args.n)
    if c == "atmodel":
        return cmd_atmodel(ctx, args.l, parse_weights(args.weights), args.K, args.depth, args.eps)
    return cmd_reproduce_paper(ctx)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    if args.precision < 1 or args.max_degree < 1:
        print("fusiontori: --precision and --max-degree must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        rep = run(args)
    except (InvalidParameter, SchemaError, ValueError) as e:
        print(f"fusiontori: {e}", file=sys.stderr)
        return EXIT_USAGE
    except FusionToriError as e:
        rep = Report(args.command, metadata=base_metadata())
        rep.add(f"{args.command}.error", "error", error=f"{type(e).__name__}: {e}")
    sys.stdout.write(rep.to_json() if args.format == "json" else rep.to_text())
    return rep.exit_code()


if __name__ == "__main__":
    sys.exit(main())
