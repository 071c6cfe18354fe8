# kaehler.py
"""
Kähler differential modules of a 0-dimensional scheme X in P^n.

Ω^m_{R/K} is presented as the free module on dX_L (L an m-subset of
{0..n}, all twists m) modulo I_X·Ω^m + dI_X ∧ Ω^{m−1}; Ω^m_{S/K} for the
affine coordinate ring S = P/I_X^deh the same way over K[x1..xn].
Everything downstream (Hilbert data, torsion, Euler kernel, Koszul
submodule) is read off these presentations.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import TYPE_CHECKING, Dict, List, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from coeff import FieldSpec
from errors import (
    FormDegreeOutOfRange,
    InternalInconsistency,
    InvalidParameter,
    NonzeroConstantTerm,
    StabilizationViolated,
)
from groebner import GradedFreeModule, Ideal, ModuleElement, Submodule, ideal_power, module_reducer
from hilbert import HilbertData, affine_hilbert, affine_k_dimension, hf_module_quotient, stabilize, standard_terms
from poly import Polynomial, Ring, dehomogenize, partial_derivative, ring_of

if TYPE_CHECKING:  # pragma: no cover
    from schemes import SchemeCtx


@dataclass(frozen=True)
class KaehlerPresentation:
    m: int
    F: GradedFreeModule
    N: Submodule

    def hilbert(self, upto: int) -> List[int]:
        return hf_module_quotient(self.F, self.N, upto)


@dataclass(frozen=True)
class TriangularDecomposition:
    """F = Σ F_i·X_i with F_i in K[X_i..X_n] (least-index convention)."""

    components: Tuple[Polynomial, ...]

    def reconstruct(self) -> Polynomial:
        ring = ring_of(self.components[0])
        out = ring.zero
        for i, f in zip(ring.variable_indices(), self.components):
            out += f * ring.var(i)
        return out

    def as_form(self, F: GradedFreeModule) -> ModuleElement:
        """γ(θ(G)) = Σ F_i dX_i in the degree-one free module."""
        return F.element({F.label_index((i,)): f for i, f in zip(F.ring.variable_indices(), self.components)})


# --- presentations -----------------------------------------------------------

def wedge_with_differential(F: GradedFreeModule, G: Polynomial, J: Tuple[int, ...]) -> ModuleElement:
    """dG ∧ dX_J expanded on the sorted basis of F.

    dX_l ∧ dX_J picks up the sign (−1)^#{j in J : j < l} when dX_l is moved
    into its sorted slot.
    """
    ring = F.ring
    coords: Dict[int, Polynomial] = {}
    for l in ring.variable_indices():
        if l in J:
            continue
        dG = partial_derivative(G, l)
        if not dG:
            continue
        if sum(1 for j in J if j < l) % 2:
            dG = -dG
        idx = F.label_index(tuple(sorted(J + (l,))))
        coords[idx] = coords.get(idx, ring.zero) + dG
    return F.element(coords)


def presentation(ring: Ring, generators: Sequence[Polynomial], m: int) -> KaehlerPresentation:
    """Ω^m of ring/⟨generators⟩: free module modulo G·dX_L and dG ∧ dX_J."""
    if m < 1:
        raise FormDegreeOutOfRange(f"form degree must be >= 1, got {m}")
    indices = ring.variable_indices()
    F = GradedFreeModule.exterior(ring, m, indices)
    relations = []
    for G in generators:
        relations.extend(F.element({L: G}) for L in range(F.rank))
        relations.extend(wedge_with_differential(F, G, J) for J in combinations(indices, m - 1))
    return KaehlerPresentation(m, F, Submodule(F, relations))


def build_omega_presentation(ctx: "SchemeCtx", m: int) -> KaehlerPresentation:
    """Presentation of Ω^m_R, kept on the context so its Groebner bases are reused."""
    if m not in ctx.presentations:
        ctx.presentations[m] = presentation(ctx.ring, ctx.ideal.groebner(), m)
    return ctx.presentations[m]


def affine_presentation(ctx: "SchemeCtx", m: int) -> KaehlerPresentation:
    gens = [dehomogenize(g) for g in ctx.ideal.groebner()]
    return presentation(ctx.ring.affine(), [g for g in gens if g], m)


# --- Hilbert data of Ω^m -----------------------------------------------------

def omega_ri_bound(ctx: "SchemeCtx", m: int) -> int:
    bound = 2 * ctx.r + m
    if m == ctx.n + 1:
        p = ctx.field.characteristic()
        if p == 0 or (2 * ctx.r + ctx.n + 1) % p:
            bound = 2 * ctx.r + ctx.n
    return bound


def omega_hilbert(ctx: "SchemeCtx", m: int) -> HilbertData:
    if m < 1:
        raise FormDegreeOutOfRange(f"form degree must be >= 1, got {m}")
    if m >= ctx.n + 2:
        return HilbertData((0,), 0, 0)
    pres = build_omega_presentation(ctx, m)
    bound = 2 * ctx.r + m
    return stabilize(pres.hilbert(bound + 1), bound)


def omega_affine_dim(ctx: "SchemeCtx", m: int) -> int:
    """dim_K Ω^m_{S/K}; m = 0 gives deg X."""
    if m < 0:
        raise FormDegreeOutOfRange(f"form degree must be >= 0, got {m}")
    if m == 0:
        return ctx.deg
    if m > ctx.n:
        return 0
    pres = affine_presentation(ctx, m)
    return affine_k_dimension(pres.F, pres.N)


# --- torsion, Euler kernel, Koszul submodule ---------------------------------

def _kernel_dimension(F: GradedFreeModule, reduce, leads, d: int, shift: int) -> int:
    """dim ker( (F/N)_d --·X0^shift--> (F/N)_{d+shift} )."""
    source = standard_terms(F, leads, d)
    if not source:
        return 0
    target = {t: k for k, t in enumerate(standard_terms(F, leads, d + shift))}
    if not target:
        return len(source)
    ring = F.ring
    K = ring.field.domain
    x0 = ring.position(0)
    rows = [[K.zero] * len(source) for _ in range(len(target))]
    for col, (pos, mon) in enumerate(source):
        lifted = mon[:x0] + (mon[x0] + shift,) + mon[x0 + 1:]
        image = reduce(F.element({pos: ring.monomial(lifted)}))
        for i, m, c in image.terms():
            rows[target[(i, m)]][col] = c
    rank = DomainMatrix(rows, (len(target), len(source)), K).rank()
    return len(source) - rank


def torsion_hilbert(ctx: "SchemeCtx") -> HilbertData:
    """HF of TΩ¹ = {w : x0^j·w = 0 for some j}, degree by degree.

    Torsion vanishes from degree 2r+1 on, so multiplication by
    x0^max(1, 2r+1−d) already kills it in degree d; the kernel is
    recomputed with one more factor of x0 as a consistency check.
    """
    pres = build_omega_presentation(ctx, 1)
    top = 2 * ctx.r + 2
    reach = 2 * ctx.r + 4
    leads = pres.N.leading_terms(max_degree=reach)
    reduce = module_reducer(pres.N.groebner(max_degree=reach))
    values = []
    for d in range(top + 1):
        shift = max(1, 2 * ctx.r + 1 - d)
        k = _kernel_dimension(pres.F, reduce, leads, d, shift)
        if k != _kernel_dimension(pres.F, reduce, leads, d, shift + 1):
            raise StabilizationViolated(f"x0-torsion in degree {d} is not killed by x0^{shift}")
        values.append(k)
    data = stabilize(values, 2 * ctx.r + 1)
    if data.hp:
        raise StabilizationViolated(f"torsion does not vanish in degree {2 * ctx.r + 1}")
    return data


def is_torsion(ctx: "SchemeCtx", w: ModuleElement) -> bool:
    """x0^(2r+1)·w ∈ N, which covers every degree since torsion dies at 2r+1."""
    pres = build_omega_presentation(ctx, 1)
    return pres.N.contains(w.scale(ctx.ring.var(0) ** (2 * ctx.r + 1)))


def euler_kernel_hilbert(ctx: "SchemeCtx") -> HilbertData:
    """HF of Ker(ε: Ω¹ → 𝔪), using surjectivity of ε."""
    omega = omega_hilbert(ctx, 1)
    top = 2 * ctx.r + 2
    values = [0]
    for i in range(1, top + 1):
        diff = omega.value(i) - ctx.hf.value(i)
        if diff < 0:
            raise InternalInconsistency(f"HF of Ω¹ below HF of X in degree {i}")
        values.append(diff)
    return stabilize(values, 2 * ctx.r + 1)


def koszul_generators(F: GradedFreeModule) -> List[ModuleElement]:
    ring = F.ring
    out = []
    for i, j in combinations(ring.variable_indices(), 2):
        ei, ej = F.label_index((i,)), F.label_index((j,))
        out.append(F.element({ej: ring.var(i), ei: -ring.var(j)}))
    return out


def submodule_hilbert(pres: KaehlerPresentation, extra: Sequence[ModuleElement], upto: int) -> List[int]:
    """HF of (N + ⟨extra⟩)/N, i.e. of the image of ⟨extra⟩ in F/N."""
    whole = pres.hilbert(upto)
    smaller = hf_module_quotient(pres.F, pres.N.plus(extra), upto)
    return [a - b for a, b in zip(whole, smaller)]


def koszul_submodule_hilbert(ctx: "SchemeCtx") -> HilbertData:
    pres = build_omega_presentation(ctx, 1)
    values = submodule_hilbert(pres, koszul_generators(pres.F), 2 * ctx.r + 2)
    return stabilize(values, 2 * ctx.r + 1)


def euler_form(F: GradedFreeModule, w: ModuleElement) -> Polynomial:
    """ε(Σ w_i dX_i) = Σ w_i X_i."""
    ring = F.ring
    return sum((w.component(F.label_index((i,))) * ring.var(i) for i in ring.variable_indices()), ring.zero)


def in_euler_kernel(ctx: "SchemeCtx", w: ModuleElement) -> bool:
    pres = build_omega_presentation(ctx, 1)
    return ctx.ideal.contains(euler_form(pres.F, w))


def in_koszul_submodule(ctx: "SchemeCtx", w: ModuleElement) -> bool:
    """Whether the class of w in Ω¹ lies in U."""
    pres = build_omega_presentation(ctx, 1)
    return pres.N.plus(koszul_generators(pres.F)).contains(w)


def triangular_decompose(f: Polynomial) -> TriangularDecomposition:
    ring = ring_of(f)
    zero_exp = (0,) * ring.nvars
    if f.get(zero_exp):
        raise NonzeroConstantTerm(f"{f} has a nonzero constant term")
    indices = ring.variable_indices()
    parts: Dict[int, Dict] = {i: {} for i in indices}
    for m, c in f.items():
        i = next(k for k in indices if m[ring.position(k)])
        pos = ring.position(i)
        parts[i][m[:pos] + (m[pos] - 1,) + m[pos + 1:]] = c
    return TriangularDecomposition(tuple(ring.from_terms(parts[i]) for i in indices))


def ker_epsilon_generators(ctx: "SchemeCtx") -> List[ModuleElement]:
    """Koszul forms X_i dX_j − X_j dX_i together with γθ(G) for each generator G."""
    F = GradedFreeModule.exterior(ctx.ring, 1, ctx.ring.variable_indices())
    extra = [triangular_decompose(G).as_form(F) for G in ctx.ideal.generators]
    return koszul_generators(F) + extra


# --- graded local rings S = A/q^k --------------------------------------------

def _local_ideal(field: FieldSpec, n: int, k: int) -> Ideal:
    A = Ring(field, n, projective=False)
    return ideal_power(Ideal(A, [A.var(i) for i in A.variable_indices()]), k)


def local_ring_hilbert(field: FieldSpec, n: int, k: int) -> HilbertData:
    """HF of S = K[x1..xn]/⟨x1..xn⟩^k."""
    if k < 1:
        raise InvalidParameter("k must be >= 1")
    return stabilize(affine_hilbert(_local_ideal(field, n, k), upto=k + 1), k)


def local_omega_hilbert(field: FieldSpec, n: int, k: int, m: int) -> HilbertData:
    """HF of Ω^m_{S/K} for S = A/q^k; m = 0 gives S itself."""
    if m == 0:
        return local_ring_hilbert(field, n, k)
    if m > n:
        return HilbertData((0,), 0, 0)
    q = _local_ideal(field, n, k)
    pres = presentation(q.ring, q.groebner(), m)
    bound = m + k
    return stabilize(pres.hilbert(bound + 1), bound)


def euler_koszul_alternating_check(n: int, k: int, i: int, field: FieldSpec | None = None) -> int:
    """Σ_m (−1)^m HF_{Ω^m_S}(i) with Ω^0_S read as q/q^k; zero where the Euler–Koszul sequence is exact."""
    if i < 1:
        raise InvalidParameter("degree must be >= 1")
    field = field or FieldSpec.rationals()
    return sum((-1) ** m * local_omega_hilbert(field, n, k, m).value(i) for m in range(n + 1))
