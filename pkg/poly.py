# poly.py
"""
Polynomial rings P = K[X0..Xn] (projective) and A = K[x1..xn] (affine).

Polynomials are sympy ``PolyElement`` objects; a ``Ring`` describes where
they live (field, ambient dimension, projective/affine, monomial order) and
owns the underlying sympy ring.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from itertools import combinations_with_replacement
from operator import itemgetter
from typing import Dict, List, Optional, Tuple

from sympy.polys.orderings import ProductOrder, grevlex, grlex, lex
from sympy.polys.rings import PolyElement, PolyRing

from coeff import FieldElem, FieldSpec
from errors import DegreeTooSmall, InvalidParameter, RingMismatch

Monomial = Tuple[int, ...]
Polynomial = PolyElement


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = "DegRevLex"
    block: int = 0  # elimination only: variables [0, block) form the first block

    @property
    def sympy_order(self):
        if self.kind == "DegRevLex":
            return grevlex
        if self.kind == "Lex":
            return lex
        if self.kind == "DegLex":
            return grlex
        return _elimination_order(self.block)

    @property
    def graded(self) -> bool:
        return self.kind in ("DegRevLex", "DegLex")


DEGREVLEX = MonomialOrder("DegRevLex")
LEX = MonomialOrder("Lex")
DEGLEX = MonomialOrder("DegLex")


def elimination(block: int) -> MonomialOrder:
    return MonomialOrder("Elimination", block)


@lru_cache(maxsize=None)
def _elimination_order(block: int) -> ProductOrder:
    return ProductOrder(
        (grevlex, itemgetter(slice(0, block))),
        (grevlex, itemgetter(slice(block, None))),
    )


_REGISTRY: Dict[PolyRing, "Ring"] = {}


@lru_cache(maxsize=None)
def _sympy_ring(names: Tuple[str, ...], domain, order) -> PolyRing:
    return PolyRing(",".join(names), domain, order)


@dataclass(frozen=True)
class Ring:
    field: FieldSpec
    n: int
    projective: bool = True
    order: MonomialOrder = DEGREVLEX
    extra: Tuple[str, ...] = ()  # auxiliary variables placed before X0 (elimination)

    @property
    def nvars(self) -> int:
        return len(self.extra) + (self.n + 1 if self.projective else self.n)

    @property
    def names(self) -> Tuple[str, ...]:
        if self.projective:
            base = tuple(f"X{i}" for i in range(self.n + 1))
        else:
            base = tuple(f"x{i}" for i in range(1, self.n + 1))
        return self.extra + base

    @property
    def sympy(self) -> PolyRing:
        R = _sympy_ring(self.names, self.field.domain, self.order.sympy_order)
        _REGISTRY.setdefault(R, self)
        return R

    @property
    def zero(self) -> Polynomial:
        return self.sympy.zero

    @property
    def one(self) -> Polynomial:
        return self.sympy.one

    def position(self, i: int) -> int:
        """Exponent-vector slot of the variable with index i (X_i or x_i)."""
        pos = len(self.extra) + (i if self.projective else i - 1)
        if not len(self.extra) <= pos < self.nvars:
            raise IndexError(f"variable index {i} out of range for {self}")
        return pos

    def var(self, i: int) -> Polynomial:
        return self.sympy.gens[self.position(i)]

    def variable_indices(self) -> List[int]:
        return list(range(self.n + 1)) if self.projective else list(range(1, self.n + 1))

    def affine(self) -> "Ring":
        return Ring(self.field, self.n, False, self.order)

    def projective_ring(self) -> "Ring":
        return Ring(self.field, self.n, True, self.order)

    def with_order(self, order: MonomialOrder) -> "Ring":
        return replace(self, order=order)

    def from_terms(self, terms: Dict[Monomial, FieldElem]) -> Polynomial:
        return self.sympy.from_dict(dict(terms))

    def monomial(self, exponents: Monomial, coeff: FieldElem | None = None) -> Polynomial:
        c = self.field.one if coeff is None else coeff
        return self.from_terms({tuple(exponents): c})

    def owns(self, f: Polynomial) -> bool:
        return f.ring == self.sympy

    def __str__(self) -> str:
        return f"{self.field.label}[{','.join(self.names)}]"


def ring_of(f: Polynomial) -> Ring:
    try:
        return _REGISTRY[f.ring]
    except KeyError:
        raise RingMismatch(f"polynomial {f} does not belong to a known ring") from None


def _check(f: Polynomial, g: Polynomial) -> None:
    if f.ring != g.ring:
        raise RingMismatch(f"{f.ring} vs {g.ring}")


def add(f: Polynomial, g: Polynomial) -> Polynomial:
    _check(f, g)
    return f + g


def sub(f: Polynomial, g: Polynomial) -> Polynomial:
    _check(f, g)
    return f - g


def mul(f: Polynomial, g: Polynomial) -> Polynomial:
    _check(f, g)
    return f * g


def scale(f: Polynomial, c: FieldElem) -> Polynomial:
    return f.mul_ground(c) if c else f.ring.zero


def monic(f: Polynomial) -> Polynomial:
    return f.monic() if f else f


# --- degrees -----------------------------------------------------------------

def total_degree(f: Polynomial) -> int:
    return max((sum(m) for m in f.keys()), default=-1)


def homogeneous_degree(f: Polynomial) -> Optional[int]:
    """Degree shared by all terms, or None (also for the zero polynomial)."""
    degrees = {sum(m) for m in f.keys()}
    return degrees.pop() if len(degrees) == 1 else None


def is_homogeneous(f: Polynomial) -> bool:
    return not f or homogeneous_degree(f) is not None


def leading_term(f: Polynomial) -> Tuple[Monomial, FieldElem]:
    m = max(f.keys(), key=f.ring.order)
    return m, f[m]


# --- calculus ----------------------------------------------------------------

def partial_derivative(f: Polynomial, i: int) -> Polynomial:
    """d f / d X_i (or x_i in the affine ring); coefficients live in K."""
    ring = ring_of(f)
    pos = ring.position(i)
    K = ring.field.domain
    terms = {}
    for m, c in f.items():
        e = m[pos]
        if e:
            d = list(m)
            d[pos] -= 1
            terms[tuple(d)] = c * K.convert(e)
    return ring.from_terms(terms)


def dehomogenize(f: Polynomial) -> Polynomial:
    """X0 -> 1, landing in K[x1..xn]."""
    ring = ring_of(f)
    if not ring.projective or ring.extra:
        raise RingMismatch("dehomogenize expects a polynomial of K[X0..Xn]")
    target = ring.affine()
    terms: Dict[Monomial, FieldElem] = {}
    zero = ring.field.zero
    for m, c in f.items():
        key = m[1:]
        terms[key] = terms.get(key, zero) + c
    return target.from_terms(terms)


def homogenize(f: Polynomial, d: int) -> Polynomial:
    ring = ring_of(f)
    if ring.projective:
        raise RingMismatch("homogenize expects a polynomial of K[x1..xn]")
    deg = total_degree(f)
    if deg > d:
        raise DegreeTooSmall(f"target degree {d} is below deg(f) = {deg}")
    target = ring.projective_ring()
    return target.from_terms({(d - sum(m),) + m: c for m, c in f.items()})


# --- terms -------------------------------------------------------------------

@lru_cache(maxsize=None)
def exponents_of_degree(nvars: int, d: int) -> Tuple[Monomial, ...]:
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return tuple(out)


def terms_of_degree(ring: Ring, d: int) -> List[Monomial]:
    """All terms of degree d, strictly decreasing in the ring's order."""
    if d < 0:
        raise InvalidParameter("degree must be non-negative")
    return sorted(exponents_of_degree(ring.nvars, d), key=ring.sympy.order, reverse=True)
