# schemes.py
"""
0-dimensional schemes X in P^n: specification, compilation to a saturated
vanishing ideal with its Hilbert function, subschemes and separators, and
the property checks built on Kähler differentials (smoothness, weak
curvilinearity, Cayley–Bacharach, uniformity).
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property, reduce
from itertools import combinations
from math import comb
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyRing

from coeff import FieldElem, FieldSpec
from errors import (
    CharTooSmall,
    DuplicatePoint,
    InfiniteDimensional,
    InternalInconsistency,
    InvalidParameter,
    NonHomogeneousInput,
    PointAtInfinity,
    ProfileUnavailable,
    UnsupportedScheme,
    X0ZeroDivisor,
)
from groebner import Ideal, ideal_power, ideal_sum, intersect, normal_form, saturate
from hilbert import HilbertData, affine_ring_dimension, hf_module_quotient, hf_x_autostop, stabilize
from kaehler import (
    build_omega_presentation,
    omega_affine_dim,
    omega_hilbert,
    wedge_with_differential,
)
from poly import Polynomial, Ring, dehomogenize, exponents_of_degree, homogeneous_degree

FATPOINTS, IDEAL, COMPONENTS = "fat_points", "ideal", "components"


# --- specification -------------------------------------------------------------

@dataclass(frozen=True)
class FatPoint:
    coords: Tuple[FieldElem, ...]
    multiplicity: int = 1


@dataclass(frozen=True)
class SchemeSpec:
    """User-level description of X: exactly one of the three sources is given."""

    field: FieldSpec
    n: int
    fat_points: Tuple[FatPoint, ...] = ()
    ideal_generators: Tuple[Polynomial, ...] = ()
    components: Tuple[Tuple[Polynomial, ...], ...] = ()
    profile: Optional[Tuple[Tuple[int, int], ...]] = None
    label: str = ""

    def __post_init__(self):
        problems = []
        if self.n < 1:
            problems.append(f"n must be >= 1, got {self.n}")
        given = [s for s, v in ((FATPOINTS, self.fat_points), (IDEAL, self.ideal_generators),
                                (COMPONENTS, self.components)) if v]
        if len(given) != 1:
            problems.append(f"exactly one of points / ideal / components is required, got {given or 'none'}")
        for k, p in enumerate(self.fat_points):
            if len(p.coords) != self.n + 1:
                problems.append(f"point {k} has {len(p.coords)} coordinates, expected {self.n + 1}")
            if p.multiplicity < 1:
                problems.append(f"point {k} has multiplicity {p.multiplicity}")
        if self.profile is not None and any(kappa < 1 or nu < 1 for kappa, nu in self.profile):
            problems.append("profile entries need kappa >= 1 and nu >= 1")
        if problems:
            raise InvalidParameter("; ".join(problems))
        if self.fat_points:
            points = tuple(FatPoint(normalize_point(self.field, p.coords), p.multiplicity) for p in self.fat_points)
            seen = set()
            for k, p in enumerate(points):
                if p.coords in seen:
                    raise DuplicatePoint(f"point {k} repeats an earlier point")
                seen.add(p.coords)
            object.__setattr__(self, "fat_points", points)

    @property
    def source(self) -> str:
        if self.fat_points:
            return FATPOINTS
        return IDEAL if self.ideal_generators else COMPONENTS

    @property
    def ring(self) -> Ring:
        return Ring(self.field, self.n)

    @property
    def is_reduced_rational(self) -> bool:
        return self.source == FATPOINTS and all(p.multiplicity == 1 for p in self.fat_points)

    def without(self, removed: Iterable[int]) -> "SchemeSpec":
        drop = set(removed)
        kept = tuple(p for k, p in enumerate(self.fat_points) if k not in drop)
        return SchemeSpec(self.field, self.n, fat_points=kept, label=f"{self.label} minus {sorted(drop)}".strip())


def normalize_point(field: FieldSpec, coords: Sequence[FieldElem]) -> Tuple[FieldElem, ...]:
    if not coords[0]:
        raise PointAtInfinity(f"point {tuple(field.to_str(c) for c in coords)} lies on Z(X0)")
    inv = field.inv(coords[0])
    return tuple(c * inv for c in coords)


@dataclass
class SchemeCtx:
    """Compiled scheme: saturated ideal, HF_X, deg X = hp and r_X = ri."""

    spec: SchemeSpec
    ring: Ring
    ideal: Ideal
    hf: HilbertData
    cap: Optional[int] = None
    _omega: Dict[int, HilbertData] = dc_field(default_factory=dict, repr=False)
    _affine: Dict[int, int] = dc_field(default_factory=dict, repr=False)
    presentations: Dict[int, object] = dc_field(default_factory=dict, repr=False)

    @property
    def field(self) -> FieldSpec:
        return self.spec.field

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def deg(self) -> int:
        return self.hf.hp

    @property
    def r(self) -> int:
        return self.hf.ri

    def omega(self, m: int) -> HilbertData:
        if m not in self._omega:
            self._omega[m] = omega_hilbert(self, m)
        return self._omega[m]

    def affine_dim(self, m: int) -> int:
        if m not in self._affine:
            self._affine[m] = omega_affine_dim(self, m)
        return self._affine[m]

    def summary(self) -> dict:
        return {"label": self.spec.label, "field": self.field.label, "n": self.n,
                "deg": self.deg, "r": self.r, "hf": self.hf.to_dict()}


# --- construction --------------------------------------------------------------

def point_ideal(coords: Sequence[FieldElem], ring: Ring) -> Ideal:
    """⟨X_i − a_i·X0⟩ for p = (1 : a_1 : … : a_n)."""
    if not coords[0]:
        raise PointAtInfinity("the point lies on Z(X0)")
    inv = ring.field.inv(coords[0])
    x0 = ring.var(0)
    return Ideal(ring, [ring.var(i) - x0 * (coords[i] * inv) for i in range(1, ring.n + 1)])


def _check_homogeneous(gens: Sequence[Polynomial]) -> None:
    bad = [str(g) for g in gens if g and homogeneous_degree(g) is None]
    if bad:
        raise NonHomogeneousInput(f"not homogeneous: {', '.join(bad)}")


def _check_saturated(I: Ideal) -> None:
    if not saturate(I, I.ring.var(0)).same_as(I):
        raise X0ZeroDivisor("x0 is a zero divisor modulo the ideal; apply a change of coordinates first")


def compile_scheme(spec: SchemeSpec, cap: Optional[int] = None) -> SchemeCtx:
    """Saturated ideal and HF_X of a scheme; `cap` bounds the auto-stop loop (default settings.HF_CAP)."""
    ring = spec.ring
    if spec.source == FATPOINTS:
        parts = [ideal_power(point_ideal(p.coords, ring), p.multiplicity) for p in spec.fat_points]
        I = reduce(intersect, parts)
    elif spec.source == IDEAL:
        _check_homogeneous(spec.ideal_generators)
        I = Ideal(ring, spec.ideal_generators)
        _check_saturated(I)
    else:
        parts = []
        for gens in spec.components:
            _check_homogeneous(gens)
            J = Ideal(ring, gens)
            _check_saturated(J)
            parts.append(J)
        I = reduce(intersect, parts)
    hf = hf_x_autostop(I, cap)
    if spec.source == FATPOINTS:
        expected = sum(comb(spec.n + p.multiplicity - 1, spec.n) for p in spec.fat_points)
        if hf.hp != expected:
            raise InternalInconsistency(f"fat point scheme has degree {hf.hp}, expected {expected}")
    return SchemeCtx(spec, ring, I, hf, cap)


# --- subschemes and separators ---------------------------------------------------

@dataclass
class SubschemeRef:
    parent: SchemeCtx
    removed: Tuple[int, ...]
    ctx: SchemeCtx

    @property
    def ideal(self) -> Ideal:
        return self.ctx.ideal

    @property
    def colength(self) -> int:
        return self.parent.deg - self.ctx.deg

    @cached_property
    def alpha(self) -> int:
        return separator_degree(self)


def _require_reduced_rational(ctx: SchemeCtx) -> None:
    if not ctx.spec.is_reduced_rational:
        raise UnsupportedScheme("subscheme enumeration needs a reduced scheme given by rational points")


def colength_subschemes(ctx: SchemeCtx, i: int,
                        progress: Optional[Callable[[Iterable], Iterable]] = None) -> List[SubschemeRef]:
    """All subschemes of degree deg X − i, i.e. all ways of dropping i points."""
    _require_reduced_rational(ctx)
    if not 1 <= i < ctx.deg:
        raise InvalidParameter(f"colength must lie in [1, {ctx.deg - 1}], got {i}")
    subsets = list(combinations(range(len(ctx.spec.fat_points)), i))
    if progress is not None:
        subsets = progress(subsets)
    return [SubschemeRef(ctx, removed, compile_scheme(ctx.spec.without(removed), ctx.cap)) for removed in subsets]


def explicit_subscheme(ctx: SchemeCtx, spec_y: SchemeSpec) -> SubschemeRef:
    Y = compile_scheme(spec_y, ctx.cap)
    if Y.ring != ctx.ring:
        raise UnsupportedScheme("subscheme lives in a different ring")
    if not Y.ideal.contains_ideal(ctx.ideal):
        raise UnsupportedScheme("I_X is not contained in I_Y")
    return SubschemeRef(ctx, (), Y)


def separator_degree(Y: SubschemeRef) -> int:
    """First degree where HF_Y drops below HF_X."""
    X = Y.parent
    upto = max(X.r, Y.ctx.r) + 1
    diffs = [i for i in range(upto + 1) if Y.ctx.hf.value(i) != X.hf.value(i)]
    if not diffs:
        raise InternalInconsistency("Y and X have the same Hilbert function")
    alpha = diffs[0]
    if Y.colength == 1:
        step = all(Y.ctx.hf.value(i) == X.hf.value(i) - (i >= alpha) for i in range(upto + 1))
        if not step or alpha > X.r:
            raise InternalInconsistency(f"HF_Y is not a unit step below HF_X from degree {alpha}")
    return alpha


def minimal_separator(Y: SubschemeRef) -> Polynomial:
    """A form of degree α in I_Y outside I_X, reduced modulo I_X."""
    alpha = Y.alpha
    ring = Y.parent.ring
    gb_x = Y.parent.ideal.groebner()
    for g in Y.ideal.groebner():
        d = homogeneous_degree(g)
        if d is None or d > alpha:
            continue
        for e in exponents_of_degree(ring.nvars, alpha - d):
            f = normal_form(ring.monomial(e) * g, gb_x)
            if f:
                return f.monic()
    raise InternalInconsistency(f"no separator of degree {alpha} found")


def separator_omega_hilbert(Y: SubschemeRef) -> HilbertData:
    """HF of Ω¹_R / ⟨df*, f*·dx0⟩, a presentation of Ω¹ of a colength-one subscheme."""
    if Y.colength != 1:
        raise UnsupportedScheme("separator presentation needs a subscheme of colength 1")
    X = Y.parent
    f = minimal_separator(Y)
    pres = build_omega_presentation(X, 1)
    F = pres.F
    extra = [wedge_with_differential(F, f, ()), F.element({F.label_index((0,)): f})]
    bound = 2 * X.r + 1
    return stabilize(hf_module_quotient(F, pres.N.plus(extra), bound + 1), bound)


# --- smoothness and curvilinearity -------------------------------------------------

@dataclass(frozen=True)
class SmoothVerdict:
    smooth: bool
    dim_omega1_s: int
    hp: Dict[int, int]

    def __bool__(self) -> bool:
        return self.smooth

    def to_dict(self) -> dict:
        return {"smooth": self.smooth, "dim_omega1_s": self.dim_omega1_s,
                "hp": {str(m): v for m, v in sorted(self.hp.items())}}


def check_smooth(ctx: SchemeCtx) -> SmoothVerdict:
    d1 = ctx.affine_dim(1)
    hp = {m: ctx.omega(m).hp for m in range(1, ctx.n + 2)}
    by_affine = d1 == 0
    by_hp = hp[1] == ctx.deg and all(hp[m] == 0 for m in hp if m >= 2)
    if by_affine != by_hp:
        raise InternalInconsistency(f"smoothness criteria disagree (dim Ω¹_S = {d1}, HP = {hp})")
    return SmoothVerdict(by_affine, d1, hp)


SMOOTH, CURVILINEAR_NOT_SMOOTH, NOT_CURVILINEAR = "Smooth", "CurvilinearNotSmooth", "No"


@dataclass(frozen=True)
class CurvilinearVerdict:
    kind: str
    affine_dims: Dict[int, int]
    hp: Dict[int, int]

    def __bool__(self) -> bool:
        return self.kind != NOT_CURVILINEAR

    def to_dict(self) -> dict:
        return {"verdict": self.kind,
                "affine_dims": {str(m): v for m, v in sorted(self.affine_dims.items())},
                "hp": {str(m): v for m, v in sorted(self.hp.items())}}


def check_weakly_curvilinear(ctx: SchemeCtx) -> CurvilinearVerdict:
    dims = {m: ctx.affine_dim(m) for m in range(1, ctx.n + 1)}
    hp = {m: ctx.omega(m).hp for m in range(1, ctx.n + 2)}
    deg = ctx.deg

    if dims[1] == 0:
        by_affine = SMOOTH
    elif all(dims[m] == 0 for m in dims if m >= 2):
        by_affine = CURVILINEAR_NOT_SMOOTH
    else:
        by_affine = NOT_CURVILINEAR

    higher_vanish = all(hp[m] == 0 for m in hp if m > 2)
    if hp[1] == deg and hp.get(2, 0) == 0 and higher_vanish:
        by_hp = SMOOTH
    elif hp[1] > deg and hp.get(2, 0) == hp[1] - deg and higher_vanish:
        by_hp = CURVILINEAR_NOT_SMOOTH
    else:
        by_hp = NOT_CURVILINEAR

    if by_affine != by_hp:
        raise InternalInconsistency(f"curvilinearity criteria disagree ({by_affine} vs {by_hp})")
    return CurvilinearVerdict(by_affine, dims, hp)


# --- Cayley–Bacharach and uniformity ------------------------------------------------

def differential_form_allowed(ctx: SchemeCtx) -> bool:
    p = ctx.field.characteristic()
    return p == 0 or p > ctx.r


@dataclass(frozen=True)
class UniformityVerdict:
    holds: bool
    i: int
    j: int
    separator_form: bool
    differential_form: Optional[bool]
    failing: Tuple[Tuple[int, ...], ...] = ()

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        return {"holds": self.holds, "i": self.i, "j": self.j,
                "separator_form": self.separator_form,
                "differential_form": self.differential_form,
                "failing": [list(f) for f in self.failing]}


def _differential_agrees(ctx: SchemeCtx, subschemes: Sequence[SubschemeRef], j: int) -> bool:
    base = ctx.omega(1).value(j)
    return all(Y.ctx.omega(1).value(j) == base for Y in subschemes)


def differential_uniformity(ctx: SchemeCtx, i: int, j: int,
                            subschemes: Optional[Sequence[SubschemeRef]] = None) -> bool:
    """HF_{Ω¹_R}(j) = HF_{Ω¹_{R_Y}}(j) for every Y of colength i."""
    if not differential_form_allowed(ctx):
        raise CharTooSmall(f"the differential criterion needs char 0 or char > r_X = {ctx.r}")
    subschemes = colength_subschemes(ctx, i) if subschemes is None else subschemes
    return _differential_agrees(ctx, subschemes, j)


def check_uniform(ctx: SchemeCtx, i: int, j: int,
                  progress: Optional[Callable[[Iterable], Iterable]] = None) -> UniformityVerdict:
    """(i, j)-uniformity: every Y of degree deg X − i has HF_Y(j) = HF_X(j)."""
    _require_reduced_rational(ctx)
    if j <= 0:
        return UniformityVerdict(True, i, j, True, True if differential_form_allowed(ctx) else None)
    subschemes = colength_subschemes(ctx, i, progress)
    target = ctx.hf.value(j)
    failing = tuple(Y.removed for Y in subschemes if Y.ctx.hf.value(j) != target)
    by_hf = not failing
    by_omega = None
    if differential_form_allowed(ctx):
        by_omega = _differential_agrees(ctx, subschemes, j)
        if by_omega != by_hf:
            raise InternalInconsistency(f"({i},{j})-uniformity: Hilbert function and Ω¹ criteria disagree")
    return UniformityVerdict(by_hf, i, j, by_hf, by_omega, failing)


def check_cbp(ctx: SchemeCtx, d: int,
              progress: Optional[Callable[[Iterable], Iterable]] = None) -> UniformityVerdict:
    """CBP(d): every colength-one subscheme has separator degree >= d + 1."""
    _require_reduced_rational(ctx)
    if d <= 0:
        return UniformityVerdict(True, 1, d, True, True if differential_form_allowed(ctx) else None)
    subschemes = colength_subschemes(ctx, 1, progress)
    failing = tuple(Y.removed for Y in subschemes if Y.alpha < d + 1)
    by_sep = not failing
    by_omega = None
    if differential_form_allowed(ctx):
        by_omega = _differential_agrees(ctx, subschemes, d)
        if by_omega != by_sep:
            raise InternalInconsistency(f"CBP({d}): separator and Ω¹ criteria disagree")
    return UniformityVerdict(by_sep, 1, d, by_sep, by_omega, failing)


# --- local ring profiles -------------------------------------------------------------

@dataclass(frozen=True)
class LocalRingProfile:
    """(κ, ν) per local block: residue field dimension and nilpotency index."""

    entries: Tuple[Tuple[int, int], ...]

    @property
    def degree(self) -> int:
        return sum(kappa * nu for kappa, nu in self.entries)

    def to_list(self) -> List[dict]:
        return [{"kappa": kappa, "nu": nu} for kappa, nu in self.entries]


def _minimal_polynomial(I: Ideal, i: int) -> Dict[int, FieldElem]:
    """Coefficients {exponent: c} of the monic minimal polynomial of x_i in A/I."""
    A = I.ring
    K = A.field.domain
    gb = I.groebner()
    x = A.var(i)
    forms: List[Polynomial] = []
    power = A.one
    while True:
        forms.append(normal_form(power, gb))
        support = sorted({m for f in forms for m in f.keys()})
        k = len(forms) - 1
        if not support:
            return {0: K.one}
        rows = [[f.get(m, K.zero) for f in forms] for m in support]
        rref, pivots = DomainMatrix(rows, (len(support), k + 1), K).rref()
        if k not in pivots:
            coeffs = {k: K.one}
            for row, col in enumerate(pivots):
                coeffs[col] = -rref[row, k].element
            return coeffs
        power = power * x


def radical(I: Ideal) -> Ideal:
    """√I of a 0-dimensional affine ideal: add squarefree parts of minimal polynomials."""
    A = I.ring
    if A.projective:
        raise InvalidParameter("radical expects an ideal of the affine ring")
    K = A.field.domain
    U = PolyRing("t", K)
    extra = []
    for i in A.variable_indices():
        mu = U.from_dict({(e,): c for e, c in _minimal_polynomial(I, i).items() if c})
        sqf = mu.sqf_part()
        x = A.var(i)
        extra.append(sum((x ** e * c for (e,), c in sqf.items()), A.zero))
    return Ideal(A, I.generators + tuple(extra))


def block_profile(J: Ideal) -> Tuple[int, int]:
    """(κ, ν) of an affine 0-dimensional block whose local rings are curvilinear with a common ν."""
    total = affine_ring_dimension(J)
    root = radical(J)
    kappa = affine_ring_dimension(root)
    if total % kappa:
        raise ProfileUnavailable(f"dim {total} is not a multiple of the residue dimension {kappa}")
    nu = total // kappa
    for j in range(1, nu + 1):
        layer = affine_ring_dimension(ideal_sum(J, ideal_power(root, j)))
        if layer != j * kappa:
            raise ProfileUnavailable(f"dim A/(J + n^{j}) = {layer}, expected {j * kappa}: not curvilinear")
    return kappa, nu


def local_profile(spec: SchemeSpec) -> LocalRingProfile:
    if spec.profile is not None:
        return LocalRingProfile(tuple(spec.profile))
    if spec.source == FATPOINTS:
        out = []
        for p in spec.fat_points:
            if p.multiplicity == 1:
                out.append((1, 1))
            elif spec.n == 1:
                out.append((1, p.multiplicity))
            else:
                raise ProfileUnavailable(f"a fat point of multiplicity {p.multiplicity} in P^{spec.n} is not curvilinear")
        return LocalRingProfile(tuple(out))
    A = spec.ring.affine()
    blocks = spec.components if spec.source == COMPONENTS else (spec.ideal_generators,)
    out = []
    for gens in blocks:
        J = Ideal(A, [g for g in (dehomogenize(f) for f in gens) if g])
        try:
            out.append(block_profile(J))
        except InfiniteDimensional as exc:
            raise ProfileUnavailable(f"block is not 0-dimensional: {exc}") from exc
    return LocalRingProfile(tuple(out))
