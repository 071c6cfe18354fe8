# formulas.py
"""
Closed formulas for fat point schemes and their local rings S = A/q^k,
plus a brute-force rank computation of δ used as an oracle for them.

Everything except delta_bruteforce is integer arithmetic with the binomial
convention C(a, b) = 0 whenever b < 0 or a < b.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import List, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from coeff import FieldSpec
from errors import CharTooSmall, FormDegreeOutOfRange, InvalidParameter
from groebner import GradedFreeModule
from hilbert import HilbertData, stabilize
from kaehler import wedge_with_differential
from poly import Ring, exponents_of_degree
from schemes import LocalRingProfile


def binom(a: int, b: int) -> int:
    if b < 0 or a < b:
        return 0
    return comb(a, b)


def _require_char(char: int, above: int, what: str) -> None:
    if char and char <= above:
        raise CharTooSmall(f"{what} needs char 0 or char > {above}, got {char}")


@dataclass(frozen=True)
class FatPointParams:
    n: int
    mults: Tuple[int, ...]
    char: int = 0

    def __post_init__(self):
        object.__setattr__(self, "mults", tuple(int(m) for m in self.mults))
        problems = []
        if self.n < 1:
            problems.append(f"n must be >= 1, got {self.n}")
        if not self.mults or any(m < 1 for m in self.mults):
            problems.append(f"multiplicities must be >= 1, got {list(self.mults)}")
        if self.char < 0:
            problems.append(f"characteristic must be >= 0, got {self.char}")
        if problems:
            raise InvalidParameter("; ".join(problems))

    @classmethod
    def from_scheme(cls, spec) -> "FatPointParams":
        return cls(spec.n, tuple(p.multiplicity for p in spec.fat_points), spec.field.characteristic())


def deg_fat_points(params: FatPointParams) -> int:
    return sum(binom(params.n + m - 1, params.n) for m in params.mults)


# --- local rings S = A/q^k --------------------------------------------------------

def delta_formula(n: int, k: int, m: int) -> int:
    """dim (dq^k ∧ Ω^{m−1}_A) in degree m+k−1, valid for char 0 or char > k."""
    return binom(n, m) * binom(n + k - 2, n - 1) - binom(m + k - 2, m) * binom(n + k - 2, n - m - 1)


def hf_omega_local(n: int, k: int, m: int, char: int = 0) -> HilbertData:
    if not 1 <= m <= n:
        raise FormDegreeOutOfRange(f"need 1 <= m <= n, got m = {m}, n = {n}")
    _require_char(char, k, "the local Hilbert function formula")
    top = m + k - 1
    values = [binom(n, m) * binom(n + i - m - 1, n - 1) for i in range(top)]
    values.append(binom(n, m) * binom(n + k - 2, n - 1) - delta_formula(n, k, m))
    values += [0, 0]
    return stabilize(values, top + 1)


def dim_omega_local(n: int, k: int, m: int, char: int = 0) -> int:
    if m < 0:
        raise FormDegreeOutOfRange(f"form degree must be >= 0, got {m}")
    if m == 0:
        return binom(n + k - 1, n)
    if m > n:
        return 0
    _require_char(char, k, "the local dimension formula")
    return binom(n, m) * binom(n + k - 2, n) + binom(m + k - 2, m) * binom(n + k - 2, n - m - 1)


def delta_bruteforce(n: int, k: int, m: int, field: FieldSpec | None = None) -> int:
    """Rank of all ρ(dt ∧ dX_J), t of degree k, J an (m−1)-subset, in degree m+k−1."""
    field = field or FieldSpec.rationals()
    A = Ring(field, n, projective=False)
    F = GradedFreeModule.exterior(A, m, A.variable_indices())
    K = field.domain
    columns = {(pos, e): c for c, (pos, e) in enumerate(
        (pos, e) for pos in range(F.rank) for e in exponents_of_degree(n, k - 1))}
    rows = []
    for t in exponents_of_degree(n, k):
        for J in combinations(A.variable_indices(), m - 1):
            v = wedge_with_differential(F, A.monomial(t), J)
            row = [K.zero] * len(columns)
            for pos, e, c in v.terms():
                row[columns[(pos, e)]] = c
            rows.append(row)
    if not rows or not columns:
        return 0
    return DomainMatrix(rows, (len(rows), len(columns)), K).rank()


def euler_koszul_top_value(n: int, k: int, m: int) -> int:
    """Σ_{j=1}^{n−m} (−1)^{j+1} C(n, m+j) C(n+k−j−2, n−1)."""
    return sum((-1) ** (j + 1) * binom(n, m + j) * binom(n + k - j - 2, n - 1) for j in range(1, n - m + 1))


# --- projective fat point schemes --------------------------------------------------

def hp_omega_fatpoints(params: FatPointParams, m: int) -> int:
    n = params.n
    if not 1 <= m <= n + 1:
        raise FormDegreeOutOfRange(f"need 1 <= m <= n+1 = {n + 1}, got {m}")
    _require_char(params.char, max(params.mults), "the fat point Hilbert polynomial formula")
    if m == 1:
        return sum(binom(n + k - 1, n) + (k - 1) * binom(n + k - 1, n - 1) for k in params.mults)
    if m == n + 1:
        return sum(binom(n + k - 2, n) for k in params.mults)
    total = 0
    for k in params.mults:
        delta = binom(m + k - 2, m) * binom(n + k - 2, n - m - 1) + binom(m + k - 3, m - 1) * binom(n + k - 2, n - m)
        total += binom(n + 1, m) * binom(n + k - 2, n) + delta
    return total


def hp_curvilinear(profile: LocalRingProfile | Sequence[Tuple[int, int]], char: int, deg: int) -> Tuple[int, int]:
    """(HP(Ω¹), HP(Ω²)) of a weakly curvilinear scheme from its (κ, ν) profile."""
    entries = profile.entries if isinstance(profile, LocalRingProfile) else profile
    counted = sum(kappa for kappa, nu in entries if not char or nu % char)
    return 2 * deg - counted, deg - counted


def hf_omega_rtilde(deg: int, dim_omega1_s: int) -> HilbertData:
    if deg < 0 or dim_omega1_s < 0:
        raise InvalidParameter("degree and dimension must be non-negative")
    hp = deg + dim_omega1_s
    return stabilize([dim_omega1_s, hp, hp], 1)


def hp_recursion_dims(hps: Sequence[int], deg: int) -> List[int]:
    """dim Ω^m_S for m = 0.., from HP(Ω^m) = dim Ω^m_S + dim Ω^{m−1}_S; hps[0] is HP(Ω¹)."""
    dims = [deg]
    for hp in hps:
        dims.append(hp - dims[-1])
    return dims
