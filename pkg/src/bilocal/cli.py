"""Command-line verification harness.

Subcommands: verify, classify, gram, map-irreps, spectrum.  Exit codes:
0 all checks pass, 1 a mathematical check failed (counterexample in the
payload), 2 usage or configuration error.  All output is deterministic;
there is no randomness anywhere (--seed-free is accepted and is a
no-op, recording that fact).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import modes, sectors, young
from .algebra import (
    apply_charge,
    apply_generator,
    apply_generator_unshifted,
    apply_hamiltonian,
    canonical_hamiltonian,
    generators,
    verify_structure_constants,
)
from .fock import (
    COMPLEX,
    REAL,
    FockContext,
    apply_annihilation,
    apply_creation,
    basis_monomials,
    inner_product,
    unit,
    vacuum,
)
from .serialize import dumps, jsonable, parse_rational
from .young import YoungDiagram, complex_sector, real_sector

DEFAULT_LIMITS = {"N": 4, "M": 4, "P": 6}


class UsageError(Exception):
    pass


def _context(args) -> FockContext:
    if args.N < 0 or args.M < 1 or args.P < 0:
        raise UsageError("require N >= 0, M >= 1, P >= 0")
    if not args.unsafe_large:
        for name in ("N", "M", "P"):
            if getattr(args, name) > DEFAULT_LIMITS[name]:
                raise UsageError(
                    f"{name} = {getattr(args, name)} exceeds the guard {DEFAULT_LIMITS[name]}; "
                    "pass --unsafe-large to override"
                )
    return FockContext(args.kind, args.N, args.M, args.P).validate()


def _parse_rows(text: str) -> YoungDiagram:
    text = text.strip()
    if not text:
        return YoungDiagram(())
    try:
        return YoungDiagram(tuple(int(x) for x in text.split(",")))
    except ValueError as exc:
        raise UsageError(f"bad diagram {text!r}: {exc}") from exc


def _emit(args, payload) -> None:
    if args.format == "json":
        print(dumps(payload))
    else:
        _print_table(payload)


def _print_table(payload, indent=0):
    pad = "  " * indent
    if isinstance(payload, dict):
        for k in sorted(payload):
            v = payload[k]
            if isinstance(v, (dict, list)):
                print(f"{pad}{k}:")
                _print_table(v, indent + 1)
            else:
                print(f"{pad}{k}: {jsonable(v)}")
    elif isinstance(payload, list):
        for item in payload:
            _print_table(item, indent)
            if isinstance(item, dict):
                print(f"{pad}-")
    else:
        print(f"{pad}{jsonable(payload)}")


# ---------------------------------------------------------------------------
# verify


def _check_ccr(ctx, margin=2) -> dict:
    slots = ctx.slots()
    basis = list(basis_monomials(ctx, ctx.P - margin))
    failures = []
    for s in slots:
        for t in slots:
            for m in basis:
                v = unit(ctx, m)
                lhs = apply_annihilation(ctx, s, apply_creation(ctx, t, v)) - apply_creation(
                    ctx, t, apply_annihilation(ctx, s, v)
                )
                rhs = v if s == t else v * 0
                if lhs != rhs:
                    failures.append({"slots": [str(s), str(t)], "monomial": str(m)})
    return {"ok": not failures, "failures": failures[:5]}


def _check_adjointness(ctx, margin=2) -> dict:
    from .algebra import dagger_label

    basis = [unit(ctx, m) for m in basis_monomials(ctx, ctx.P - margin)]
    failures = []
    for g in generators(ctx):
        gd = dagger_label(g)
        for v in basis:
            gv = apply_generator(ctx, g, v)
            for w in basis:
                if inner_product(gv, w) != inner_product(v, apply_generator(ctx, gd, w)):
                    failures.append({"generator": str(g)})
                    break
            if failures and failures[-1]["generator"] == str(g):
                break
    return {"ok": not failures, "failures": failures[:5]}


def _check_vacuum_cartan(ctx) -> dict:
    vac = vacuum(ctx)
    failures = []
    half_n = Fraction(ctx.N, 2)
    for g in generators(ctx):
        if g.kind in ("Eplus", "Eminus", "E"):
            img = apply_generator(ctx, g, vac)
            want = vac * (half_n if g.i == g.j else 0)
            if img != want:
                failures.append({"generator": str(g), "got": repr(img), "expected": repr(want)})
    if ctx.field_kind == COMPLEX and not apply_charge(ctx, vac).is_zero():
        failures.append({"charge_on_vacuum": "nonzero"})
    if not apply_hamiltonian(ctx, canonical_hamiltonian(ctx), vac).is_zero():
        failures.append({"canonical_energy_on_vacuum": "nonzero"})
    return {"ok": not failures, "failures": failures}


def _check_charge_commutes(ctx, margin=2) -> dict:
    if ctx.field_kind != COMPLEX:
        return {"ok": True, "skipped": "no charge operator in the real case"}
    failures = []
    for g in generators(ctx):
        for m in basis_monomials(ctx, ctx.P - margin):
            v = unit(ctx, m)
            lhs = apply_charge(ctx, apply_generator(ctx, g, v)) - apply_generator(
                ctx, g, apply_charge(ctx, v)
            )
            if not lhs.is_zero():
                failures.append({"generator": str(g), "monomial": str(m)})
                break
    return {"ok": not failures, "failures": failures[:5]}


def _check_gauge_commutant(ctx, margin=2) -> dict:
    failures = []
    flavors = range(1, ctx.N + 1)
    for p in flavors:
        for q in flavors:
            for g in generators(ctx):
                for m in basis_monomials(ctx, ctx.P - margin):
                    v = unit(ctx, m)
                    lhs = young.apply_gauge_generator(ctx, p, q, apply_generator(ctx, g, v))
                    rhs = apply_generator(ctx, g, young.apply_gauge_generator(ctx, p, q, v))
                    if lhs != rhs:
                        failures.append({"gauge": [p, q], "generator": str(g), "monomial": str(m)})
                        break
                if failures:
                    break
    return {"ok": not failures, "failures": failures[:5]}


def cmd_verify(args) -> int:
    ctx = _context(args)
    if not 2 <= args.margin <= ctx.P:
        raise UsageError(f"margin must lie in 2..P = {ctx.P}")
    realization = apply_generator
    if args.inject_fault == "drop-e-shift":
        realization = apply_generator_unshifted
    checks = {
        "structure_constants": verify_structure_constants(ctx, margin=args.margin,
                                                          realization=realization),
        "ccr": _check_ccr(ctx),
        "adjointness": _check_adjointness(ctx),
        "vacuum_cartan": _check_vacuum_cartan(ctx),
        "charge_commutes": _check_charge_commutes(ctx),
        "gauge_commutant": _check_gauge_commutant(ctx),
    }
    ok = all(c.get("ok") for c in checks.values())
    payload = {"context": {"kind": ctx.field_kind, "N": ctx.N, "M": ctx.M, "P": ctx.P},
               "ok": ok, "checks": checks}
    _emit(args, payload)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# classify


def cmd_classify(args) -> int:
    ctx = _context(args)
    cutoff = parse_rational(args.cutoff)
    spec = modes.appendix_spectrum(ctx, args.D) if args.D else None
    try:
        results = sectors.classify_spectrum(ctx, cutoff, spec)
    except Exception as exc:  # infeasible cutoff or context
        _emit(args, {"ok": False, "error": str(exc)})
        return 1
    rows = []
    ok = True
    for entry in results:
        s = entry["sector"]
        w = entry["weight"]
        row = {
            "tail": w.tail,
            "multiplicity": entry["multiplicity"],
            "energy": entry["energy"],
            "in_bound": s is not None,
        }
        if ctx.field_kind == COMPLEX:
            row["weight_head_plus"] = list(w.head_plus)
            row["weight_head_minus"] = list(w.head_minus)
        else:
            row["weight_head"] = list(w.head_plus)
        if s is None:
            ok = False
        else:
            row.update(young.sector_to_json(s))
            if ctx.field_kind == COMPLEX:
                row["gauge_irrep"] = young.sector_to_irrep_U(s).to_json()
                row["gauge_dimension"] = young.weyl_dimension_U(young.sector_to_irrep_U(s), ctx.N)
            else:
                row["gauge_irrep"] = young.sector_to_irrep_O(s.y, ctx.N).canonical.to_json()
        rows.append(row)
    payload = {"ok": ok, "cutoff": cutoff, "sectors": rows, "count": len(rows)}
    _emit(args, payload)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# gram


def cmd_gram(args) -> int:
    ctx = _context(args)
    if ctx.field_kind == COMPLEX:
        s = complex_sector(_parse_rows(args.yplus), _parse_rows(args.yminus), ctx.N)
    else:
        s = real_sector(_parse_rows(args.y), ctx.N)
    violation = s.bound_violation()
    if violation:
        _emit(args, {"ok": False, "error": f"sector out of bound: {violation}"})
        return 1
    try:
        ground = sectors.build_ground_state(ctx, s)
    except Exception as exc:
        _emit(args, {"ok": False, "error": str(exc)})
        return 1
    from itertools import combinations_with_replacement

    from .algebra import Xstar

    words = list(
        combinations_with_replacement(
            [(i, j) for i in range(1, ctx.M + 1) for j in range(1, ctx.M + 1)], args.level
        )
    )
    vectors = []
    for word in words:
        v = ground
        for i, j in word:
            v = apply_generator(ctx, Xstar(i, j), v)
        vectors.append(v)
    matrix = [[inner_product(v, w) for w in vectors] for v in vectors]
    from .linalg import leading_principal_minors

    minors = leading_principal_minors(matrix)
    psd = all(m >= 0 for m in minors)
    payload = {
        "ok": psd,
        "sector": young.sector_to_json(s),
        "level": args.level,
        "basis": [str(list(w)) for w in words],
        "gram": matrix,
        "leading_principal_minors": minors,
        "positive_semidefinite": psd,
    }
    _emit(args, payload)
    return 0 if psd else 1


# ---------------------------------------------------------------------------
# map-irreps and spectrum


def cmd_map_irreps(args) -> int:
    if args.N < 0:
        raise UsageError("N must be >= 0")
    report = young.bijection_roundtrip_check(args.group, args.N, args.cap)
    payload = {
        "ok": report["ok"],
        "group": args.group,
        "N": args.N,
        "cap": args.cap,
        "entries": report["entries"],
        "failures": report["failures"],
    }
    _emit(args, payload)
    return 0 if report["ok"] else 1


def cmd_spectrum(args) -> int:
    try:
        rows = modes.spectrum_table(args.D, args.count)
    except modes.ModeError as exc:
        raise UsageError(str(exc)) from exc
    _emit(args, {"D": args.D, "count": args.count, "levels": rows})
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bilocal",
        description="Exact verification harness for bilocal field algebras on truncated Fock spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_ctx=True):
        p.add_argument("--format", choices=["json", "table"], default="json")
        p.add_argument("--seed-free", action="store_true",
                       help="accepted for interface stability; computations are always deterministic")
        if with_ctx:
            p.add_argument("--kind", choices=[COMPLEX, REAL], default=COMPLEX)
            p.add_argument("--N", type=int, required=True)
            p.add_argument("--M", type=int, default=2)
            p.add_argument("--P", type=int, default=4)
            p.add_argument("--unsafe-large", action="store_true",
                           help="lift the default N/M/P guards")

    p = sub.add_parser("verify", help="run the algebraic invariant suite")
    add_common(p)
    p.add_argument("--margin", type=int, default=2)
    p.add_argument("--inject-fault", choices=["none", "drop-e-shift"], default="none",
                   help="negative control: corrupt the realization and expect failure")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="enumerate sectors below an energy cutoff")
    add_common(p)
    p.add_argument("--cutoff", required=True, help="energy cutoff, integer or p/q")
    p.add_argument("--D", type=int, default=0,
                   help="use the conformal mode energies for this spacetime dimension")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("gram", help="Gram matrix of level-raised vectors over a ground state")
    add_common(p)
    p.add_argument("--level", type=int, default=1)
    p.add_argument("--yplus", default="", help="comma-separated row lengths, e.g. 2,1")
    p.add_argument("--yminus", default="")
    p.add_argument("--y", default="", help="diagram for real sectors")
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("map-irreps", help="sector <-> gauge irrep dictionary")
    add_common(p, with_ctx=False)
    p.add_argument("--group", choices=["U", "O"], required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--cap", type=int, default=3)
    p.set_defaults(func=cmd_map_irreps)

    p = sub.add_parser("spectrum", help="conformal one-particle spectrum table")
    add_common(p, with_ctx=False)
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.set_defaults(func=cmd_spectrum)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def console_main():
    sys.exit(main())


if __name__ == "__main__":
    console_main()
