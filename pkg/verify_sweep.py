# verify_sweep.py
"""
Verification sweeps: worked examples, engine-vs-formula grids and
characteristic gates. Each sweep is a list of named checks with an
expected and an actual value; the result is a pandas DataFrame that can be
printed or written as a CSV health report.
"""
from __future__ import annotations

import random
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional, Tuple

import pandas as pd
from tqdm import tqdm

import settings
from coeff import FieldSpec
from errors import CharTooSmall, InvalidParameter, KaehlerError, VerificationFailed
from formulas import (
    FatPointParams,
    binom,
    delta_bruteforce,
    delta_formula,
    dim_omega_local,
    hf_omega_local,
    hp_omega_fatpoints,
    hp_recursion_dims,
)
from hilbert import HilbertData
from kaehler import (
    build_omega_presentation,
    euler_kernel_hilbert,
    euler_koszul_alternating_check,
    in_euler_kernel,
    in_koszul_submodule,
    koszul_submodule_hilbert,
    local_omega_hilbert,
    local_ring_hilbert,
    torsion_hilbert,
    triangular_decompose,
)
from scheme_parser import load_scheme_file
from schemes import (
    CURVILINEAR_NOT_SMOOTH,
    FatPoint,
    SchemeCtx,
    SchemeSpec,
    check_cbp,
    check_weakly_curvilinear,
    compile_scheme,
    explicit_subscheme,
    local_profile,
)

PAPER_EXAMPLES, FATPOINT_SWEEP, CHAR_GATES = "paper-examples", "fatpoint-sweep", "char-gates"
WORKED_EXAMPLES = "worked-examples"  # alias of PAPER_EXAMPLES
COLUMNS = ["preset", "check", "expected", "actual", "ok"]

Thunk = Callable[[], object]


@dataclass(frozen=True)
class Check:
    name: str
    expected: str
    run: Thunk


def _seq(data: HilbertData, top: int) -> str:
    return " ".join(str(v) for v in data.upto(top))


def _fixture(rel: str) -> SchemeCtx:
    return compile_scheme(load_scheme_file(Path(settings.FIXTURES_DIR) / rel))


class _Fixtures:
    """Compiles each fixture at most once per sweep."""

    def __init__(self):
        self._ctx: Dict[str, SchemeCtx] = {}

    def __call__(self, rel: str) -> SchemeCtx:
        if rel not in self._ctx:
            self._ctx[rel] = _fixture(rel)
        return self._ctx[rel]


# --- worked examples ------------------------------------------------------------------

def _five_point_checks(fx: _Fixtures) -> Iterator[Check]:
    tables = {
        "five_points/lines.json": ("0 3 8 10 7 5 5", "0 0 3 5 2 0 0"),
        "five_points/conic.json": ("0 3 8 10 6 5 5", "0 0 3 5 1 0 0"),
    }
    for rel, (omega, torsion) in tables.items():
        yield Check(f"{rel} HF_X", "1 3 5 5", lambda rel=rel: _seq(fx(rel).hf, 3))
        yield Check(f"{rel} HF Ω¹", omega, lambda rel=rel: _seq(fx(rel).omega(1), 6))
        yield Check(f"{rel} ri Ω¹", "5", lambda rel=rel: str(fx(rel).omega(1).ri))
        yield Check(f"{rel} HF TΩ¹", torsion, lambda rel=rel: _seq(torsion_hilbert(fx(rel)), 6))
        yield Check(f"{rel} ri TΩ¹", "5", lambda rel=rel: str(torsion_hilbert(fx(rel)).ri))

    rel = "five_points/y_prime.json"
    yield Check(f"{rel} HF_X", "1 3 6 6", lambda: _seq(fx(rel).hf, 3))
    yield Check(f"{rel} HF Ω¹", "0 3 9 14 9 7 7", lambda: _seq(fx(rel).omega(1), 6))
    yield Check(f"{rel} ri Ω¹", "5", lambda: str(fx(rel).omega(1).ri))
    yield Check(f"{rel} HF TΩ¹", "0 0 2 7 2 0 0", lambda: _seq(torsion_hilbert(fx(rel)), 6))


def _f3_membership(ctx: SchemeCtx) -> str:
    F = build_omega_presentation(ctx, 1).F
    w = triangular_decompose(ctx.ideal.generators[1]).as_form(F)
    return f"kernel={in_euler_kernel(ctx, w)} koszul={in_koszul_submodule(ctx, w)}"


def _f3_checks(fx: _Fixtures) -> Iterator[Check]:
    rel = "char3/f3.json"
    yield Check(f"{rel} HF_X", "1 3 5 6 6", lambda: _seq(fx(rel).hf, 4))
    yield Check(f"{rel} HF Ω¹", "0 3 8 11 10 10", lambda: _seq(fx(rel).omega(1), 5))
    yield Check(f"{rel} ri Ω¹", "4", lambda: str(fx(rel).omega(1).ri))
    yield Check(f"{rel} HF TΩ¹", "0 0 0 1 0 0", lambda: _seq(torsion_hilbert(fx(rel)), 5))
    yield Check(f"{rel} HF U", "0 0 3 4 4 4", lambda: _seq(koszul_submodule_hilbert(fx(rel)), 5))
    yield Check(f"{rel} HF Ker ε", "0 0 3 5 4 4", lambda: _seq(euler_kernel_hilbert(fx(rel)), 5))
    yield Check(f"{rel} γθ(G2) in Ker ε, not in U", "kernel=True koszul=False", lambda: _f3_membership(fx(rel)))


def _top_form_support(data: HilbertData) -> str:
    return " ".join(f"{i}:{v}" for i, v in enumerate(data.values) if v) or "-"


def _coordinate_point_checks(fx: _Fixtures) -> Iterator[Check]:
    for n in (2, 3):
        rel = f"coordinate_points/coordinate_n{n}.json"
        for m in range(1, n + 1):
            yield Check(f"{rel} ri Ω^{m}", str(m + 2), lambda rel=rel, m=m: str(fx(rel).omega(m).ri))
        yield Check(f"{rel} ri Ω^{n + 1}", str(n + 2), lambda rel=rel, n=n: str(fx(rel).omega(n + 1).ri))
        yield Check(f"{rel} HF Ω^{n + 1} support", f"{n + 1}:1",
                    lambda rel=rel, n=n: _top_form_support(fx(rel).omega(n + 1)))


def _curvilinear_checks(fx: _Fixtures) -> Iterator[Check]:
    rel = "curvilinear/curvilinear.json"
    yield Check(f"{rel} verdict", CURVILINEAR_NOT_SMOOTH, lambda: check_weakly_curvilinear(fx(rel)).kind)
    yield Check(f"{rel} profile", "4:2", lambda: " ".join(f"{k}:{v}" for k, v in local_profile(fx(rel).spec).entries))


def _f2_checks(fx: _Fixtures) -> Iterator[Check]:
    F2 = FieldSpec.prime_field(2)
    yield Check("F2 local HF_S", "1 2 0", lambda: _seq(local_ring_hilbert(F2, 2, 2), 2))
    yield Check("F2 local HF Ω¹_S", "0 2 3 0", lambda: _seq(local_omega_hilbert(F2, 2, 2, 1), 3))
    yield Check("F2 local HF Ω²_S", "0 0 1 0", lambda: _seq(local_omega_hilbert(F2, 2, 2, 2), 3))
    yield Check("F2 dim Ω¹_S of the double point", "5", lambda: str(fx("double_points/f2_double_point.json").affine_dim(1)))
    yield Check("F2 δ brute force", "1", lambda: str(delta_bruteforce(2, 2, 1, F2)))
    yield Check("F2 alternating sum at degree 2 vanishes", "False",
                lambda: str(euler_koszul_alternating_check(2, 2, 2, F2) == 0))


def _irrational_support_checks(fx: _Fixtures) -> Iterator[Check]:
    rel = "irrational_support/x.json"

    def subscheme():
        X = fx(rel)
        return explicit_subscheme(X, load_scheme_file(Path(settings.FIXTURES_DIR) / "irrational_support/y.json"))

    yield Check(f"{rel} deg, r", "6 3", lambda: f"{fx(rel).deg} {fx(rel).r}")
    yield Check(f"{rel} HF Ω¹", "0 3 8 12 12 10 9 9", lambda: _seq(fx(rel).omega(1), 7))
    yield Check("irrational_support/y.json HF Ω¹", "0 2 4 5 4 3 3", lambda: _seq(subscheme().ctx.omega(1), 6))
    yield Check("irrational_support degree 2 mismatch", "8 != 4",
                lambda: f"{fx(rel).omega(1).value(2)} != {subscheme().ctx.omega(1).value(2)}")


def _cbp_checks(fx: _Fixtures) -> Iterator[Check]:
    yield Check("cbp/ci4.json CBP(1)", "True", lambda: str(bool(check_cbp(fx("cbp/ci4.json"), 1))))
    yield Check("cbp/collinear3plus1.json CBP(1)", "False",
                lambda: str(bool(check_cbp(fx("cbp/collinear3plus1.json"), 1))))


def worked_example_checks() -> List[Check]:
    fx = _Fixtures()
    out: List[Check] = []
    for part in (_five_point_checks, _f3_checks, _coordinate_point_checks, _curvilinear_checks,
                 _f2_checks, _irrational_support_checks, _cbp_checks):
        out.extend(part(fx))
    return out


# --- engine vs formula ------------------------------------------------------------------

def local_grid_checks(max_n: int = 3, max_k: int = 4) -> List[Check]:
    Q = FieldSpec.rationals()
    out: List[Check] = []
    for n in range(1, max_n + 1):
        for k in range(1, max_k + 1):
            for m in range(1, n + 1):
                top = m + k
                tag = f"n={n} k={k} m={m}"
                out.append(Check(f"{tag} HF Ω^m_S", _seq(hf_omega_local(n, k, m), top),
                                 lambda n=n, k=k, m=m, top=top: _seq(local_omega_hilbert(Q, n, k, m), top)))
                if k >= 2:
                    out.append(Check(f"{tag} δ brute force", str(delta_formula(n, k, m)),
                                     lambda n=n, k=k, m=m: str(delta_bruteforce(n, k, m))))
                    full = binom(n, m) * binom(n + k - 2, n - 1)
                    out.append(Check(f"{tag} δ symbolic", str(delta_formula(n, k, m)),
                                     lambda n=n, k=k, m=m, full=full:
                                     str(full - local_omega_hilbert(Q, n, k, m).value(m + k - 1))))
                out.append(Check(f"{tag} dim Ω^m_S", str(dim_omega_local(n, k, m)),
                                 lambda n=n, k=k, m=m: str(local_omega_hilbert(Q, n, k, m).total())))
            for i in range(1, k + 2):
                out.append(Check(f"n={n} k={k} alternating sum at {i}", "0",
                                 lambda n=n, k=k, i=i: str(euler_koszul_alternating_check(n, k, i))))
    return out


def random_fat_points(rng: random.Random, max_n: int = 3, max_points: int = 3, max_mult: int = 3) -> SchemeSpec:
    Q = FieldSpec.rationals()
    n = rng.randint(1, max_n)
    t = rng.randint(1, max_points)
    seen = set()
    while len(seen) < t:
        seen.add(tuple(rng.randint(-3, 3) for _ in range(n)))
    points = tuple(
        FatPoint((Q.one,) + tuple(Q.from_integer(a) for a in coords), rng.randint(1, max_mult))
        for coords in sorted(seen)
    )
    label = "random " + " ".join(f"{p.multiplicity}x{tuple(int(Q.to_fraction(c)) for c in p.coords)}" for p in points)
    return SchemeSpec(Q, n, fat_points=points, label=label)


def _fat_point_checks(spec: SchemeSpec) -> Iterator[Check]:
    params = FatPointParams.from_scheme(spec)
    holder: Dict[str, SchemeCtx] = {}

    def ctx() -> SchemeCtx:
        if "ctx" not in holder:
            holder["ctx"] = compile_scheme(spec)
        return holder["ctx"]

    hps = [hp_omega_fatpoints(params, m) for m in range(1, spec.n + 2)]
    for m, hp in enumerate(hps, start=1):
        yield Check(f"{spec.label} HP Ω^{m}", str(hp), lambda m=m: str(ctx().omega(m).hp))
    dims = hp_recursion_dims(hps[:spec.n], sum(binom(spec.n + k - 1, spec.n) for k in params.mults))
    yield Check(f"{spec.label} dim Ω^m_S", " ".join(map(str, dims)),
                lambda: " ".join(str(ctx().affine_dim(m)) for m in range(spec.n + 1)))


def fatpoint_sweep_checks(max_n: int = 3, max_k: int = 4, samples: Optional[int] = None,
                          seed: Optional[int] = None) -> List[Check]:
    samples = settings.SWEEP_SAMPLES if samples is None else samples
    rng = random.Random(settings.SWEEP_SEED if seed is None else seed)
    out = local_grid_checks(max_n, max_k)
    for _ in range(samples):
        out.extend(_fat_point_checks(random_fat_points(rng, max_n)))
    return out


# --- characteristic gates -------------------------------------------------------------------

def _raises(fn: Thunk, exc: type) -> Thunk:
    def run() -> str:
        try:
            fn()
        except exc:
            return exc.__name__
        return "no error"

    return run


def char_gate_checks() -> List[Check]:
    F2 = FieldSpec.prime_field(2)
    fx = _Fixtures()
    engine_dim = lambda: local_omega_hilbert(F2, 2, 2, 1).total()
    return [
        Check("F2 dim Ω¹_S vs char-0 formula", "5 != 3",
              lambda: f"{engine_dim()} != {dim_omega_local(2, 2, 1)}"),
        Check("F2 δ brute force vs char-0 formula", "1 != 3",
              lambda: f"{delta_bruteforce(2, 2, 1, F2)} != {delta_formula(2, 2, 1)}"),
        Check("F2 local HF formula refuses char 2", "CharTooSmall",
              _raises(lambda: hf_omega_local(2, 2, 1, char=2), CharTooSmall)),
        Check("F2 local dimension formula refuses char 2", "CharTooSmall",
              _raises(lambda: dim_omega_local(2, 2, 1, char=2), CharTooSmall)),
        Check("F2 fat point HP formula refuses char 2", "CharTooSmall",
              _raises(lambda: hp_omega_fatpoints(FatPointParams(2, (2,), 2), 1), CharTooSmall)),
        Check("F2 alternating sum at degree 2", "nonzero",
              lambda: "zero" if euler_koszul_alternating_check(2, 2, 2, F2) == 0 else "nonzero"),
        Check("F3 U differs from Ker ε in degree 3", "4 != 5",
              lambda: f"{koszul_submodule_hilbert(fx('char3/f3.json')).value(3)} != "
                      f"{euler_kernel_hilbert(fx('char3/f3.json')).value(3)}"),
        Check("Q reduced scheme: torsion equals Ker ε", "True",
              lambda: str(torsion_hilbert(fx("five_points/lines.json")) == euler_kernel_hilbert(fx("five_points/lines.json")))),
    ]


PRESETS: Dict[str, Callable[[], List[Check]]] = {
    PAPER_EXAMPLES: worked_example_checks,
    WORKED_EXAMPLES: worked_example_checks,
    FATPOINT_SWEEP: fatpoint_sweep_checks,
    CHAR_GATES: char_gate_checks,
}


# --- running ----------------------------------------------------------------------------------

def _evaluate(check: Check) -> Tuple[str, bool]:
    try:
        actual = str(check.run())
    except KaehlerError as exc:
        actual = f"{type(exc).__name__}: {exc}"
    return actual, actual == check.expected


def run_checks(preset: str, checks: List[Check], progress: bool = True) -> pd.DataFrame:
    rows = []
    for check in tqdm(checks, desc=preset, file=sys.stderr, disable=not progress):
        actual, ok = _evaluate(check)
        rows.append((preset, check.name, check.expected, actual, ok))
    return pd.DataFrame(rows, columns=COLUMNS)


def run_sweep(preset: str, progress: bool = True) -> pd.DataFrame:
    if preset not in PRESETS:
        raise InvalidParameter(f"unknown sweep {preset!r}; choose from {', '.join(PRESETS)}")
    return run_checks(preset, PRESETS[preset](), progress)


def write_report(frame: pd.DataFrame, preset: str, report_dir: Optional[Path] = None) -> Path:
    report_dir = Path(report_dir or settings.REPORT_DIR)
    report_dir.mkdir(parents=True, exist_ok=True)
    path = report_dir / f"sweep_{preset}.csv"
    frame.to_csv(path, index=False)
    return path


def ensure_passed(frame: pd.DataFrame) -> None:
    failed = frame[~frame["ok"]]
    if len(failed):
        raise VerificationFailed(f"{len(failed)} of {len(frame)} checks failed",
                                 failed[["check", "expected", "actual"]].to_dict("records"))
