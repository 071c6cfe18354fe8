# kaehler_cli.py
"""
Command line front end.

  kaehler_cli.py scheme info FILE
  kaehler_cli.py kaehler hf FILE --m M [--torsion | --euler-kernel | --koszul]
  kaehler_cli.py check smooth FILE | curvilinear FILE | cbp FILE --d D | uniform FILE --i I --j J
  kaehler_cli.py formula hp FILE --m M | local --n N --k K --m M | delta --n N --k K --m M
  kaehler_cli.py verify --sweep {paper-examples,fatpoint-sweep,char-gates}

Exit codes: 0 success, 1 computation or input error, 2 usage error.
Results go to stdout (a table, or JSON with --json); diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, List, Optional

from tqdm import tqdm

import settings
from coeff import FieldSpec
from errors import KaehlerError, ProfileUnavailable, VerificationFailed
from formulas import (
    FatPointParams,
    delta_bruteforce,
    delta_formula,
    dim_omega_local,
    hf_omega_local,
    hp_curvilinear,
    hp_omega_fatpoints,
)
from hilbert import castelnuovo_function
from kaehler import (
    euler_kernel_hilbert,
    koszul_submodule_hilbert,
    local_omega_hilbert,
    omega_ri_bound,
    torsion_hilbert,
)
from report import ResultDocument
from scheme_parser import load_scheme_file
from schemes import (
    FATPOINTS,
    SchemeCtx,
    check_cbp,
    check_smooth,
    check_uniform,
    check_weakly_curvilinear,
    compile_scheme,
    local_profile,
)
from verify_sweep import PRESETS, ensure_passed, run_sweep, write_report

EPILOG = """
Examples:
  python kaehler_cli.py scheme info fixtures/char3/f3.json
  python kaehler_cli.py kaehler hf fixtures/char3/f3.json --m 1 --torsion
  python kaehler_cli.py check cbp fixtures/cbp/collinear3plus1.json --d 1
  python kaehler_cli.py formula local --n 2 --k 3 --m 1
  python kaehler_cli.py --json verify --sweep paper-examples --report
"""


class UsageError(Exception):
    """Arguments that parse but do not make sense together."""


def _stderr(msg: str) -> None:
    print(msg, file=sys.stderr)


def _progress(quiet: bool) -> Optional[Callable]:
    if quiet:
        return None
    return lambda items: tqdm(items, desc="subschemes", file=sys.stderr)


def _load(args) -> SchemeCtx:
    return compile_scheme(load_scheme_file(args.file), args.max_degree)


def _document(args, ctx: Optional[SchemeCtx] = None) -> ResultDocument:
    return ResultDocument(command=list(args.argv), scheme=ctx.summary() if ctx is not None else None)


# --- handlers ---------------------------------------------------------------------------

def cmd_scheme_info(args) -> ResultDocument:
    ctx = _load(args)
    doc = _document(args, ctx)
    doc.add_hilbert("HF_X", ctx.hf)
    doc.add_value("source", ctx.spec.source)
    doc.add_value("castelnuovo", castelnuovo_function(ctx.hf))
    try:
        doc.add_value("local_profile", local_profile(ctx.spec).to_list())
    except ProfileUnavailable as exc:
        doc.add_value("local_profile", f"unavailable: {exc}")
    return doc


def cmd_kaehler_hf(args) -> ResultDocument:
    extras = [flag for flag in ("torsion", "euler_kernel", "koszul") if getattr(args, flag)]
    if extras and args.m != 1:
        raise UsageError(f"--{extras[0].replace('_', '-')} is only defined for --m 1")
    ctx = _load(args)
    doc = _document(args, ctx)
    doc.add_hilbert(f"Ω^{args.m}", ctx.omega(args.m))
    doc.add_value("ri_bound", omega_ri_bound(ctx, args.m))
    if args.torsion:
        doc.add_hilbert("TΩ^1", torsion_hilbert(ctx))
    if args.euler_kernel:
        doc.add_hilbert("Ker ε", euler_kernel_hilbert(ctx))
    if args.koszul:
        doc.add_hilbert("U", koszul_submodule_hilbert(ctx))
    return doc


def cmd_check_smooth(args) -> ResultDocument:
    ctx = _load(args)
    doc = _document(args, ctx)
    verdict = check_smooth(ctx)
    doc.verdict = bool(verdict)
    doc.add_value("smooth", verdict)
    return doc


def cmd_check_curvilinear(args) -> ResultDocument:
    ctx = _load(args)
    doc = _document(args, ctx)
    verdict = check_weakly_curvilinear(ctx)
    doc.verdict = bool(verdict)
    doc.add_value("curvilinear", verdict)
    return doc


def cmd_check_cbp(args) -> ResultDocument:
    ctx = _load(args)
    doc = _document(args, ctx)
    verdict = check_cbp(ctx, args.d, _progress(args.quiet))
    doc.verdict = bool(verdict)
    doc.add_value("cbp", verdict)
    return doc


def cmd_check_uniform(args) -> ResultDocument:
    if args.i < 1:
        raise UsageError("--i must be >= 1")
    ctx = _load(args)
    doc = _document(args, ctx)
    verdict = check_uniform(ctx, args.i, args.j, _progress(args.quiet))
    doc.verdict = bool(verdict)
    doc.add_value("uniform", verdict)
    return doc


def cmd_formula_hp(args) -> ResultDocument:
    if args.m < 1:
        raise UsageError("--m must be >= 1")
    spec = load_scheme_file(args.file)
    ctx = compile_scheme(spec, args.max_degree)
    if spec.source == FATPOINTS:
        value = hp_omega_fatpoints(FatPointParams.from_scheme(spec), args.m)
        route = "fat points"
    else:
        hp1, hp2 = hp_curvilinear(local_profile(spec), spec.field.characteristic(), ctx.deg)
        value = {1: hp1, 2: hp2}.get(args.m, 0)
        route = "weakly curvilinear profile"
    doc = _document(args, ctx)
    doc.add_value("formula", value)
    doc.add_value("route", route)
    if not args.formula_only:
        engine = ctx.omega(args.m).hp
        doc.add_value("engine", engine)
        doc.compare(engine, value)
    return doc


def _field_arg(args) -> FieldSpec:
    return FieldSpec.parse(args.field or settings.DEFAULT_FIELD)


def _check_local_args(args) -> None:
    if args.n < 1 or args.k < 1:
        raise UsageError("--n and --k must be >= 1")


def cmd_formula_local(args) -> ResultDocument:
    _check_local_args(args)
    field = _field_arg(args)
    char = field.characteristic()
    doc = _document(args)
    data = hf_omega_local(args.n, args.k, args.m, char)
    doc.add_hilbert(f"Ω^{args.m}_S formula", data)
    doc.add_value("dim", dim_omega_local(args.n, args.k, args.m, char))
    if not args.formula_only:
        engine = local_omega_hilbert(field, args.n, args.k, args.m)
        doc.add_hilbert(f"Ω^{args.m}_S engine", engine)
        doc.compare(engine.upto(args.m + args.k + 1), data.upto(args.m + args.k + 1))
    return doc


def cmd_formula_delta(args) -> ResultDocument:
    _check_local_args(args)
    field = _field_arg(args)
    doc = _document(args)
    value = delta_formula(args.n, args.k, args.m)
    doc.add_value("formula", value)
    if not args.formula_only:
        engine = delta_bruteforce(args.n, args.k, args.m, field)
        doc.add_value("engine", engine)
        doc.compare(engine, value)
    return doc


def cmd_verify(args) -> int:
    frame = run_sweep(args.sweep, progress=not args.quiet)
    if args.json:
        records = [{"check": r.check, "expected": r.expected, "actual": r.actual, "ok": bool(r.ok)}
                   for r in frame.itertuples()]
        print(json.dumps({"command": list(args.argv), "sweep": args.sweep, "checks": records},
                         sort_keys=True, indent=2))
    else:
        print(frame.to_string(index=False))
    if args.report:
        path = write_report(frame, args.sweep)
        _stderr(f"📝 Wrote {args.sweep} report to {path}")
    try:
        ensure_passed(frame)
    except VerificationFailed as exc:
        _stderr(f"❌ {exc}")
        for failure in exc.failures:
            _stderr(f"   {failure['check']}: expected {failure['expected']}, got {failure['actual']}")
        return 1
    _stderr(f"✅ All {len(frame)} checks passed")
    return 0


# --- parser -----------------------------------------------------------------------------

def _with_file(parser: argparse.ArgumentParser) -> argparse.ArgumentParser:
    parser.add_argument("file", help="scheme file (JSON, format 1)")
    return parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="print JSON instead of a table")
    common.add_argument("--max-degree", type=int, default=argparse.SUPPRESS,
                        help=f"cap for degree-by-degree loops (default {settings.HF_CAP})")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS, help="no progress bars")

    ap = argparse.ArgumentParser(
        prog="kaehler_cli.py",
        description="Hilbert functions of Kähler differential modules of 0-dimensional schemes.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=EPILOG,
    )
    ap.add_argument("--json", action="store_true", default=False, help="print JSON instead of a table")
    ap.add_argument("--max-degree", type=int, default=None, help=f"cap for degree-by-degree loops (default {settings.HF_CAP})")
    ap.add_argument("--quiet", action="store_true", default=False, help="no progress bars")
    groups = ap.add_subparsers(dest="group", required=True)

    scheme = groups.add_parser("scheme", help="scheme data").add_subparsers(dest="action", required=True)
    _with_file(scheme.add_parser("info", parents=[common], help="HF, degree and regularity index")).set_defaults(
        handler=cmd_scheme_info)

    kaehler = groups.add_parser("kaehler", help="Kähler differential modules").add_subparsers(dest="action", required=True)
    hf = _with_file(kaehler.add_parser("hf", parents=[common], help="Hilbert function of Ω^m"))
    hf.add_argument("--m", type=int, required=True, help="form degree m >= 1")
    extra = hf.add_mutually_exclusive_group()
    extra.add_argument("--torsion", action="store_true", help="also the torsion submodule (m = 1)")
    extra.add_argument("--euler-kernel", action="store_true", help="also Ker of the Euler form (m = 1)")
    extra.add_argument("--koszul", action="store_true", help="also the Koszul submodule U (m = 1)")
    hf.set_defaults(handler=cmd_kaehler_hf)

    check = groups.add_parser("check", help="scheme properties").add_subparsers(dest="action", required=True)
    _with_file(check.add_parser("smooth", parents=[common])).set_defaults(handler=cmd_check_smooth)
    _with_file(check.add_parser("curvilinear", parents=[common])).set_defaults(handler=cmd_check_curvilinear)
    cbp = _with_file(check.add_parser("cbp", parents=[common], help="Cayley-Bacharach property CBP(d)"))
    cbp.add_argument("--d", type=int, required=True)
    cbp.set_defaults(handler=cmd_check_cbp)
    uniform = _with_file(check.add_parser("uniform", parents=[common], help="(i, j)-uniformity"))
    uniform.add_argument("--i", type=int, required=True, help="colength")
    uniform.add_argument("--j", type=int, required=True, help="degree")
    uniform.set_defaults(handler=cmd_check_uniform)

    formula = groups.add_parser("formula", help="closed formulas").add_subparsers(dest="action", required=True)
    fhp = _with_file(formula.add_parser("hp", parents=[common], help="HP(Ω^m) of a fat point or curvilinear scheme"))
    fhp.add_argument("--m", type=int, required=True)
    fhp.set_defaults(handler=cmd_formula_hp)
    for name, handler, helptext in (("local", cmd_formula_local, "HF of Ω^m_S for S = K[x1..xn]/q^k"),
                                    ("delta", cmd_formula_delta, "δ(n, k, m)")):
        sub = formula.add_parser(name, parents=[common], help=helptext)
        sub.add_argument("--n", type=int, required=True)
        sub.add_argument("--k", type=int, required=True)
        sub.add_argument("--m", type=int, required=True)
        sub.add_argument("--field", default=None, help=f"coefficient field (default {settings.DEFAULT_FIELD})")
        sub.set_defaults(handler=handler)
    for sub in (fhp,) + tuple(formula.choices[n] for n in ("local", "delta")):
        sub.add_argument("--formula-only", action="store_true", help="skip the engine cross-check")

    verify = groups.add_parser("verify", parents=[common], help="verification sweeps")
    verify.add_argument("--sweep", required=True, choices=sorted(PRESETS))
    verify.add_argument("--report", action="store_true", help=f"write a CSV report into {settings.REPORT_DIR}")
    verify.set_defaults(handler=cmd_verify)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args.argv = argv
    if args.max_degree is not None and args.max_degree < 1:
        parser.error("--max-degree must be positive")
    try:
        result = args.handler(args)
        if isinstance(result, int):
            return result
        print(result.render(args.json))
    except UsageError as exc:
        _stderr(f"usage error: {exc}")
        return 2
    except KaehlerError as exc:
        _stderr(f"❌ {type(exc).__name__}: {exc}")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
