# hilbert.py
"""
Hilbert functions of graded quotients P/I and F/N, counted as standard terms
against the leading-term ideal/module, plus stable values (Hilbert
polynomials of 0-dimensional schemes are constants), regularity indices and
K-dimensions of affine quotients.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from sympy.polys.monomials import monomial_divides

import settings
from errors import (
    InfiniteDimensional,
    InvalidParameter,
    NonHomogeneousInput,
    NotZeroDimensional,
    RingMismatch,
    StabilizationViolated,
    X0ZeroDivisor,
)
from groebner import TOP, GradedFreeModule, Ideal, ModuleOrder, Submodule, Term
from poly import DEGREVLEX, Monomial, MonomialOrder, exponents_of_degree


@dataclass(frozen=True)
class HilbertData:
    """Recorded prefix of a Hilbert function, its stable value and regularity index."""

    values: Tuple[int, ...]
    hp: int
    ri: int

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        problems = []
        if any(v < 0 for v in self.values):
            problems.append("negative Hilbert function value")
        if self.ri < 0:
            problems.append(f"ri must be >= 0, got {self.ri}")
        if any(v != self.hp for v in self.values[self.ri:]):
            problems.append(f"values from degree {self.ri} on are not all {self.hp}")
        if 0 < self.ri <= len(self.values) and self.values[self.ri - 1] == self.hp:
            problems.append(f"value at degree {self.ri - 1} already equals hp {self.hp}")
        if problems:
            raise InvalidParameter("; ".join(problems))

    def value(self, i: int) -> int:
        if i < 0:
            return 0
        return self.values[i] if i < len(self.values) else self.hp

    def __getitem__(self, i: int) -> int:
        return self.value(i)

    def upto(self, d: int) -> List[int]:
        return [self.value(i) for i in range(d + 1)]

    def total(self) -> int:
        """Sum of all values; only finite for modules of finite length."""
        if self.hp:
            raise InfiniteDimensional(f"Hilbert polynomial is {self.hp}, not 0")
        return sum(self.values)

    def to_dict(self) -> dict:
        return {"values": list(self.values), "hp": self.hp, "ri": self.ri}

    def __str__(self) -> str:
        return " ".join(str(v) for v in self.values)


# --- standard terms ----------------------------------------------------------

def _divisible(m: Monomial, leads: Sequence[Monomial]) -> bool:
    return any(monomial_divides(lead, m) for lead in leads)


def _layers(nvars: int, leads: Sequence[Monomial]) -> Iterator[List[Monomial]]:
    """Standard terms degree by degree: 0, 1, 2, ...

    Standard terms form an order ideal, so each layer is obtained from the
    previous one by multiplying with a variable and filtering.
    """
    zero = (0,) * nvars
    layer = [] if _divisible(zero, leads) else [zero]
    while True:
        yield layer
        nxt = set()
        for m in layer:
            for v in range(nvars):
                t = m[:v] + (m[v] + 1,) + m[v + 1:]
                if t not in nxt and not _divisible(t, leads):
                    nxt.add(t)
        layer = sorted(nxt, reverse=True)


def _by_position(leads: Sequence[Term]) -> Dict[int, List[Monomial]]:
    out: Dict[int, List[Monomial]] = {}
    for pos, m in leads:
        out.setdefault(pos, []).append(m)
    return out


def standard_terms(home: GradedFreeModule, leads: Sequence[Term], d: int) -> List[Term]:
    """Module terms of (twisted) degree d outside the given leading terms."""
    by_pos = _by_position(leads)
    nvars = home.ring.nvars
    out = []
    for pos, w in enumerate(home.twists):
        if d - w < 0:
            continue
        lp = by_pos.get(pos, [])
        out.extend((pos, m) for m in exponents_of_degree(nvars, d - w) if not _divisible(m, lp))
    return out


def _count_ring(nvars: int, leads: Sequence[Monomial], upto: int) -> List[int]:
    layers = _layers(nvars, leads)
    return [len(next(layers)) for _ in range(upto + 1)]


def _count_module(home: GradedFreeModule, leads: Sequence[Term], upto: int) -> List[int]:
    by_pos = _by_position(leads)
    values = [0] * (upto + 1)
    for pos, w in enumerate(home.twists):
        layers = _layers(home.ring.nvars, by_pos.get(pos, []))
        for rel in range(upto - w + 1):
            layer = next(layers)
            if rel + w >= 0:
                values[rel + w] += len(layer)
    return values


# --- graded quotients ---------------------------------------------------------

def hf_ring_quotient(I: Ideal, upto: int, order: MonomialOrder = DEGREVLEX) -> List[int]:
    """HF of P/I in degrees 0..upto."""
    if not I.is_homogeneous():
        raise NonHomogeneousInput("Hilbert functions need a homogeneous ideal")
    if not order.graded:
        raise InvalidParameter(f"{order.kind} is not degree-compatible")
    key = order.sympy_order
    leads = [max(g.keys(), key=key) for g in I.groebner(order, max_degree=upto)]
    return _count_ring(I.ring.nvars, leads, upto)


def hf_module_quotient(F: GradedFreeModule, N: Submodule, upto: int, order: ModuleOrder = TOP) -> List[int]:
    """HF of F/N in degrees 0..upto, twists included."""
    if N.home != F:
        raise RingMismatch("submodule does not live in the given free module")
    if not N.is_homogeneous():
        raise NonHomogeneousInput("Hilbert functions need a homogeneous submodule")
    if F.rank == 0:
        return [0] * (upto + 1)
    return _count_module(F, N.leading_terms(order, upto), upto)


def stabilize(values: Sequence[int], guaranteed_bound: int) -> HilbertData:
    """Hilbert data of a function known to be constant from `guaranteed_bound` on."""
    values = [int(v) for v in values]
    if guaranteed_bound < 0 or len(values) < guaranteed_bound + 2:
        raise InvalidParameter(f"need values up to degree {guaranteed_bound + 1}, got {len(values)}")
    hp = values[guaranteed_bound]
    late = [i for i in range(guaranteed_bound, len(values)) if values[i] != hp]
    if late:
        raise StabilizationViolated(
            f"value {values[late[0]]} at degree {late[0]} differs from {hp} at the bound {guaranteed_bound}"
        )
    ri = guaranteed_bound
    while ri > 0 and values[ri - 1] == hp:
        ri -= 1
    return HilbertData(tuple(values), hp, ri)


def hf_x_autostop(I: Ideal, cap: Optional[int] = None) -> HilbertData:
    """HF of a 0-dimensional scheme, computed until the first repeated value."""
    cap = settings.HF_CAP if cap is None else cap
    if not I.is_homogeneous():
        raise NonHomogeneousInput("the vanishing ideal must be homogeneous")
    key = DEGREVLEX.sympy_order
    leads = [max(g.keys(), key=key) for g in I.groebner(DEGREVLEX)]
    layers = _layers(I.ring.nvars, leads)
    values = [len(next(layers))]
    if values[0] == 0:
        raise NotZeroDimensional("the unit ideal defines the empty scheme")
    for i in range(1, cap + 1):
        v = len(next(layers))
        if v < values[-1]:
            raise X0ZeroDivisor(f"HF drops from {values[-1]} to {v} in degree {i}; the ideal is not saturated")
        values.append(v)
        if v == values[-2]:
            return HilbertData(tuple(values), v, i - 1)
    raise NotZeroDimensional(f"HF still growing at degree {cap} (last values {values[-3:]})")


def castelnuovo_function(hf: HilbertData) -> List[int]:
    """First differences HF(i) − HF(i−1) up to the regularity index."""
    return [hf.value(i) - hf.value(i - 1) for i in range(hf.ri + 1)]


# --- affine quotients --------------------------------------------------------

def _finite_count(nvars: int, leads: Sequence[Monomial]) -> int:
    total = 0
    for layer in _layers(nvars, leads):
        if not layer:
            return total
        total += len(layer)
    return total  # pragma: no cover


def _pure_power_missing(nvars: int, leads: Sequence[Monomial]) -> Optional[int]:
    for v in range(nvars):
        if not any(all(e == 0 for j, e in enumerate(m) if j != v) for m in leads):
            return v
    return None


def affine_k_dimension(F_aff: GradedFreeModule, N_aff: Submodule, order: ModuleOrder = TOP) -> int:
    """dim_K of F_aff / N_aff over A = K[x1..xn]; inputs need not be homogeneous."""
    if N_aff.home != F_aff:
        raise RingMismatch("submodule does not live in the given free module")
    if F_aff.rank == 0:
        return 0
    by_pos = _by_position(N_aff.leading_terms(order))
    nvars = F_aff.ring.nvars
    total = 0
    for pos in range(F_aff.rank):
        leads = by_pos.get(pos, [])
        missing = _pure_power_missing(nvars, leads)
        if missing is not None:
            name = F_aff.ring.names[missing]
            raise InfiniteDimensional(f"no power of {name} is a leading term in component {pos}")
        total += _finite_count(nvars, leads)
    return total


def affine_ring_dimension(I: Ideal) -> int:
    """dim_K of A/I."""
    key = DEGREVLEX.sympy_order
    leads = [max(g.keys(), key=key) for g in I.groebner(DEGREVLEX)]
    missing = _pure_power_missing(I.ring.nvars, leads)
    if missing is not None:
        raise InfiniteDimensional(f"no power of {I.ring.names[missing]} is a leading term")
    return _finite_count(I.ring.nvars, leads)


def affine_hilbert(I: Ideal, upto: Optional[int] = None) -> List[int]:
    """Standard terms of A/I per degree; for homogeneous I this is the HF of A/I."""
    key = DEGREVLEX.sympy_order
    leads = [max(g.keys(), key=key) for g in I.groebner(DEGREVLEX)]
    if upto is None and _pure_power_missing(I.ring.nvars, leads) is not None:
        raise InfiniteDimensional("A/I is not finite-dimensional")
    out = []
    for d, layer in enumerate(_layers(I.ring.nvars, leads)):
        if (upto is None and not layer) or (upto is not None and d > upto):
            break
        out.append(len(layer))
    return out
