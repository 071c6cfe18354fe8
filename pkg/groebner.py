# groebner.py
"""
Buchberger's algorithm for ideals of K[X0..Xn] / K[x1..xn] and for submodules
of graded free modules, plus the operations built on it: normal forms,
intersection by elimination, powers, colon ideals, saturation and syzygies.

Ideals are handled as rank-1 modules, so a single engine does all the work.
Vectors inside the engine are plain dicts {(position, monomial): coeff}.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import gcd, lcm
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.monomials import monomial_divides, monomial_div, monomial_lcm, monomial_mul

from errors import InternalInconsistency, InvalidParameter, NonHomogeneousInput, RingMismatch
from poly import (
    DEGREVLEX,
    Monomial,
    MonomialOrder,
    Polynomial,
    Ring,
    elimination,
    homogeneous_degree,
    is_homogeneous,
    ring_of,
)

Term = Tuple[int, Monomial]
Vec = Dict[Term, object]


# --- free modules and their elements ----------------------------------------

@dataclass(frozen=True)
class GradedFreeModule:
    ring: Ring
    twists: Tuple[int, ...]
    labels: Tuple[Tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.labels and len(self.labels) != len(self.twists):
            raise InvalidParameter("rank and label count differ")

    @classmethod
    def exterior(cls, ring: Ring, m: int, indices: Sequence[int]) -> "GradedFreeModule":
        """Free module on dX_L for all m-subsets L of `indices`, every twist m."""
        labels = tuple(combinations(indices, m))
        return cls(ring, (m,) * len(labels), labels)

    @property
    def rank(self) -> int:
        return len(self.twists)

    def label_index(self, label: Tuple[int, ...]) -> int:
        return self.labels.index(tuple(label))

    def zero(self) -> "ModuleElement":
        return ModuleElement(self, {})

    def basis(self, i: int) -> "ModuleElement":
        return ModuleElement(self, {i: self.ring.one})

    def element(self, coords: Mapping[int, Polynomial]) -> "ModuleElement":
        return ModuleElement(self, coords)


class ModuleElement:
    """Vector of a graded free module, stored as {basis index: polynomial}."""

    __slots__ = ("module", "coords")

    def __init__(self, module: GradedFreeModule, coords: Mapping[int, Polynomial]):
        R = module.ring.sympy
        clean = {}
        for i, f in sorted(coords.items()):
            if not 0 <= i < module.rank:
                raise IndexError(f"basis index {i} out of range (rank {module.rank})")
            if f:
                if f.ring != R:
                    raise RingMismatch(f"coordinate {i} lives in {f.ring}, module over {R}")
                clean[i] = f
        object.__setattr__(self, "module", module)
        object.__setattr__(self, "coords", clean)

    def __setattr__(self, name, value):
        raise AttributeError("ModuleElement is immutable")

    def __bool__(self) -> bool:
        return bool(self.coords)

    def __eq__(self, other) -> bool:
        return isinstance(other, ModuleElement) and self.module == other.module and self.coords == other.coords

    def __hash__(self):
        return hash((self.module, tuple((i, tuple(sorted(f.items()))) for i, f in self.coords.items())))

    def _same(self, other: "ModuleElement") -> None:
        if self.module != other.module:
            raise RingMismatch("elements of different free modules")

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        self._same(other)
        out = dict(self.coords)
        for i, f in other.coords.items():
            out[i] = out[i] + f if i in out else f
        return ModuleElement(self.module, out)

    def __neg__(self) -> "ModuleElement":
        return ModuleElement(self.module, {i: -f for i, f in self.coords.items()})

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        return self + (-other)

    def scale(self, f: Polynomial) -> "ModuleElement":
        return ModuleElement(self.module, {i: f * g for i, g in self.coords.items()})

    def component(self, i: int) -> Polynomial:
        return self.coords.get(i, self.module.ring.zero)

    def terms(self) -> Iterable[Tuple[int, Monomial, object]]:
        for i, f in self.coords.items():
            for m, c in f.items():
                yield i, m, c

    def degree(self) -> Optional[int]:
        """Homogeneous degree including twists, or None."""
        degrees = set()
        for i, f in self.coords.items():
            d = homogeneous_degree(f)
            if d is None:
                return None
            degrees.add(d + self.module.twists[i])
        return degrees.pop() if len(degrees) == 1 else None

    def is_homogeneous(self) -> bool:
        return not self.coords or self.degree() is not None

    def __repr__(self) -> str:
        parts = [f"({f})*e{i}" for i, f in self.coords.items()]
        return " + ".join(parts) if parts else "0"


# --- orders ------------------------------------------------------------------

@dataclass(frozen=True)
class ModuleOrder:
    """Term-over-position order: twisted degree, ring order, then e_0 > e_1 > ...

    With ``split > 0`` every term in positions < split beats every term in
    positions >= split (the block order used to read off syzygies).
    """

    ring_order: MonomialOrder = DEGREVLEX
    position: str = "TOP"
    split: int = 0

    def key_function(self, twists: Tuple[int, ...]) -> Callable[[Term], tuple]:
        return _term_key(self.ring_order, twists, self.split, self.position)


TOP = ModuleOrder()


@lru_cache(maxsize=64)
def _term_key(ring_order: MonomialOrder, twists: Tuple[int, ...], split: int, position: str = "TOP"):
    ro = ring_order.sympy_order
    graded = ring_order.graded
    sign = 1 if position == "TOP_REV" else -1

    @lru_cache(maxsize=1 << 16)
    def key(term: Term) -> tuple:
        pos, m = term
        base = (sum(m) + twists[pos], ro(m), sign * pos) if graded else (ro(m), sign * pos)
        return ((pos < split),) + base if split else base

    return key


# --- the engine --------------------------------------------------------------

class _Engine:
    def __init__(self, K, key, twists: Tuple[int, ...], rank1: bool, max_degree: Optional[int]):
        self.K = K
        self.key = key
        self.twists = twists
        self.rank1 = rank1
        self.max_degree = max_degree
        self.basis: List[Vec] = []
        self.leads: List[Term] = []

    # vector helpers
    def lead(self, vec: Vec) -> Term:
        return max(vec, key=self.key)

    def degree(self, term: Term) -> int:
        return sum(term[1]) + self.twists[term[0]]

    def monic(self, vec: Vec) -> Vec:
        c = vec[self.lead(vec)]
        if c == self.K.one:
            return vec
        inv = self.K.revert(c)
        return {t: a * inv for t, a in vec.items()}

    def primitive(self, vec: Vec) -> Vec:
        """Integer coefficients with gcd 1 and positive lead over Q; monic otherwise."""
        if not self.K.is_QQ:
            return self.monic(vec)
        den = lcm(*(int(self.K.denom(a)) for a in vec.values()))
        g = gcd(*(int(self.K.numer(a)) * (den // int(self.K.denom(a))) for a in vec.values()))
        if vec[self.lead(vec)] < 0:
            g = -g
        if den == g:
            return vec
        scale = self.K(den, g)
        return {t: a * scale for t, a in vec.items()}

    @staticmethod
    def sub_multiple(vec: Vec, other: Vec, mon: Monomial, c) -> None:
        """vec -= c * mon * other, in place."""
        for (pos, m), a in other.items():
            t = (pos, monomial_mul(m, mon))
            v = vec.get(t)
            nv = v - c * a if v is not None else -(c * a)
            if nv:
                vec[t] = nv
            else:
                vec.pop(t, None)

    def reducer(self, term: Term, candidates: Iterable[int]) -> Optional[int]:
        pos, mon = term
        for i in candidates:
            lp, lm = self.leads[i]
            if lp == pos and monomial_divides(lm, mon):
                return i
        return None

    def top_reduce(self, vec: Vec, candidates: Sequence[int]) -> Vec:
        vec = dict(vec)
        while vec:
            t = self.lead(vec)
            i = self.reducer(t, candidates)
            if i is None:
                return vec
            g = self.basis[i]
            c = vec[t] / g[self.leads[i]]
            self.sub_multiple(vec, g, monomial_div(t[1], self.leads[i][1]), c)
        return vec

    def full_reduce(self, vec: Vec, candidates: Sequence[int]) -> Vec:
        vec = dict(vec)
        rem: Vec = {}
        while vec:
            t = self.lead(vec)
            i = self.reducer(t, candidates)
            if i is None:
                rem[t] = vec.pop(t)
                continue
            g = self.basis[i]
            c = vec[t] / g[self.leads[i]]
            self.sub_multiple(vec, g, monomial_div(t[1], self.leads[i][1]), c)
        return rem

    def s_vector(self, i: int, j: int) -> Vec:
        (pi, mi), (pj, mj) = self.leads[i], self.leads[j]
        lcm = monomial_lcm(mi, mj)
        gi, gj = self.basis[i], self.basis[j]
        s: Vec = {}
        self.sub_multiple(s, gi, monomial_div(lcm, mi), -(self.K.one / gi[self.leads[i]]))
        self.sub_multiple(s, gj, monomial_div(lcm, mj), self.K.one / gj[self.leads[j]])
        return s

    # Buchberger
    def run(self, inputs: Iterable[Vec]) -> List[Vec]:
        pending: set = set()
        heap: list = []

        def add(vec: Vec) -> None:
            vec = self.primitive(vec)
            k = len(self.basis)
            self.basis.append(vec)
            self.leads.append(self.lead(vec))
            pk, mk = self.leads[k]
            for i in range(k):
                pi, mi = self.leads[i]
                if pi != pk:
                    continue
                t = (pk, monomial_lcm(mi, mk))
                if self.max_degree is not None and self.degree(t) > self.max_degree:
                    continue
                pending.add((i, k))
                heapq.heappush(heap, (self.key(t), i, k))

        vectors = [v for v in inputs if v]
        if self.max_degree is not None:
            vectors = [v for v in vectors if self.degree(self.lead(v)) <= self.max_degree]
        for vec in sorted(vectors, key=lambda v: self.key(self.lead(v))):
            r = self.top_reduce(vec, range(len(self.basis)))
            if r:
                add(r)

        while heap:
            _, i, j = heapq.heappop(heap)
            if (i, j) not in pending:
                continue
            pending.discard((i, j))
            if self._skip(i, j, pending):
                continue
            r = self.top_reduce(self.s_vector(i, j), range(len(self.basis)))
            if r:
                add(r)
        return self.reduced()

    def _skip(self, i: int, j: int, pending: set) -> bool:
        (pos, mi), (_, mj) = self.leads[i], self.leads[j]
        lcm = monomial_lcm(mi, mj)
        if self.rank1 and all(a == 0 or b == 0 for a, b in zip(mi, mj)):
            return True
        for k in range(len(self.basis)):
            if k in (i, j):
                continue
            pk, mk = self.leads[k]
            if pk != pos or not monomial_divides(mk, lcm):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                return True
        return False

    def reduced(self) -> List[Vec]:
        order = sorted(range(len(self.basis)), key=lambda i: self.key(self.leads[i]))
        keep: List[int] = []
        for i in order:
            pi, mi = self.leads[i]
            if not any(self.leads[j][0] == pi and monomial_divides(self.leads[j][1], mi) for j in keep):
                keep.append(i)
        out = []
        for i in keep:
            others = [j for j in keep if j != i]
            out.append(self.monic(self.full_reduce(self.basis[i], others)))
        return out

    def load(self, basis: Iterable[Vec]) -> None:
        for vec in basis:
            self.basis.append(vec)
            self.leads.append(self.lead(vec))


# --- conversions -------------------------------------------------------------

def _poly_vec(f: Polynomial) -> Vec:
    return {(0, m): c for m, c in f.items()}


def _vec_poly(R, vec: Vec) -> Polynomial:
    return R.from_dict({m: c for (_, m), c in vec.items()})


def _elem_vec(w: ModuleElement) -> Vec:
    return {(i, m): c for i, m, c in w.terms()}


def _vec_elem(F: GradedFreeModule, vec: Vec, shift: int = 0) -> ModuleElement:
    comps: Dict[int, Dict[Monomial, object]] = {}
    for (i, m), c in vec.items():
        comps.setdefault(i - shift, {})[m] = c
    R = F.ring.sympy
    return ModuleElement(F, {i: R.from_dict(d) for i, d in comps.items()})


def _ideal_key(order: MonomialOrder):
    return _term_key(order, (0,), 0)


# --- ideals ------------------------------------------------------------------

def buchberger(gens: Sequence[Polynomial], order: MonomialOrder = DEGREVLEX,
               max_degree: Optional[int] = None) -> List[Polynomial]:
    """Reduced Groebner basis (leading coefficients 1, sorted by leading term)."""
    gens = [g for g in gens if g]
    if not gens:
        return []
    R = gens[0].ring
    if any(g.ring != R for g in gens):
        raise RingMismatch("generators live in different rings")
    if max_degree is not None and not all(is_homogeneous(g) for g in gens):
        raise NonHomogeneousInput("degree-truncated bases need homogeneous generators")
    engine = _Engine(R.domain, _ideal_key(order), (0,), True, max_degree)
    return [_vec_poly(R, v) for v in engine.run(_poly_vec(g) for g in gens)]


def normal_form(f: Polynomial, gb: Sequence[Polynomial], order: MonomialOrder = DEGREVLEX) -> Polynomial:
    if not f or not gb:
        return f
    engine = _Engine(f.ring.domain, _ideal_key(order), (0,), True, None)
    engine.load(_poly_vec(g) for g in gb)
    return _vec_poly(f.ring, engine.full_reduce(_poly_vec(f), range(len(engine.basis))))


def is_groebner_basis(gb: Sequence[Polynomial], order: MonomialOrder = DEGREVLEX) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    if not gb:
        return True
    engine = _Engine(gb[0].ring.domain, _ideal_key(order), (0,), True, None)
    engine.load(_poly_vec(g) for g in gb)
    return _all_s_vectors_vanish(engine)


def _all_s_vectors_vanish(engine: _Engine) -> bool:
    idx = range(len(engine.basis))
    for i, j in combinations(idx, 2):
        if engine.leads[i][0] != engine.leads[j][0]:
            continue
        if engine.full_reduce(engine.s_vector(i, j), idx):
            return False
    return True


class Ideal:
    """Ideal given by generators; reduced Groebner bases are cached per order."""

    def __init__(self, ring: Ring, generators: Iterable[Polynomial]):
        R = ring.sympy
        gens = []
        for g in generators:
            if g.ring != R:
                raise RingMismatch(f"generator {g} is not in {ring}")
            if g:
                gens.append(g)
        self.ring = ring
        self.generators: Tuple[Polynomial, ...] = tuple(gens)
        self._gb: Dict[MonomialOrder, Tuple[float, List[Polynomial]]] = {}

    def groebner(self, order: MonomialOrder = DEGREVLEX, max_degree: Optional[int] = None) -> List[Polynomial]:
        bound = float("inf") if max_degree is None else max_degree
        cached = self._gb.get(order)
        if cached and cached[0] >= bound:
            return cached[1]
        gb = buchberger(self.generators, order, max_degree)
        self._gb[order] = (bound, gb)
        return gb

    def is_homogeneous(self) -> bool:
        return all(is_homogeneous(g) for g in self.generators)

    def contains(self, f: Polynomial) -> bool:
        return not normal_form(f, self.groebner())

    def contains_ideal(self, other: "Ideal") -> bool:
        gb = self.groebner()
        return all(not normal_form(g, gb) for g in other.generators)

    def same_as(self, other: "Ideal") -> bool:
        return self.ring == other.ring and self.groebner() == other.groebner()

    def leading_monomials(self, order: MonomialOrder = DEGREVLEX) -> List[Monomial]:
        key = order.sympy_order
        return [max(g.keys(), key=key) for g in self.groebner(order)]

    def __repr__(self) -> str:
        return f"Ideal<{', '.join(str(g) for g in self.generators)}>"


def _elimination_ring(ring: Ring) -> Ring:
    return Ring(ring.field, ring.n, ring.projective, elimination(1), extra=("T",))


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J = (T·I + (1−T)·J) ∩ K[X], eliminating the auxiliary T."""
    if I.ring != J.ring:
        raise RingMismatch("intersect needs ideals of the same ring")
    ring = I.ring
    if not I.generators or not J.generators:
        return Ideal(ring, [])
    E = _elimination_ring(ring).sympy
    t = E.gens[0]

    def lift(f: Polynomial) -> Polynomial:
        return E.from_dict({(0,) + m: c for m, c in f.items()})

    gens = [t * lift(f) for f in I.generators] + [(E.one - t) * lift(g) for g in J.generators]
    gb = buchberger(gens, elimination(1))
    R = ring.sympy
    out = [R.from_dict({m[1:]: c for m, c in g.items()}) for g in gb if all(m[0] == 0 for m in g.keys())]
    return Ideal(ring, out)


def ideal_power(I: Ideal, m: int) -> Ideal:
    if m < 1:
        raise InvalidParameter("power must be at least 1")
    if m == 1:
        return Ideal(I.ring, I.generators)
    products = []
    for combo in combinations_with_replacement(I.generators, m):
        p = I.ring.one
        for g in combo:
            p = p * g
        products.append(p)
    return Ideal(I.ring, products)


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    return Ideal(I.ring, I.generators + J.generators)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    return Ideal(I.ring, [f * g for f in I.generators for g in J.generators])


def colon(I: Ideal, f: Polynomial) -> Ideal:
    """I : f, read off from I ∩ <f>."""
    inter = intersect(I, Ideal(I.ring, [f]))
    quotients = []
    for h in inter.generators:
        q, r = h.div(f)
        if r:
            raise InternalInconsistency(f"{f} does not divide {h}")
        quotients.append(q)
    return Ideal(I.ring, quotients)


def saturate(I: Ideal, f: Polynomial, max_rounds: int = 256) -> Ideal:
    """I : f^∞ by iterated colon ideals."""
    if not f:
        raise InvalidParameter("cannot saturate by the zero polynomial")
    current = I
    for _ in range(max_rounds):
        nxt = colon(current, f)
        if nxt.same_as(current):
            return nxt
        current = nxt
    raise InternalInconsistency(f"saturation did not stabilise after {max_rounds} rounds")


# --- submodules --------------------------------------------------------------

class Submodule:
    """Submodule of a graded free module given by generators."""

    def __init__(self, home: GradedFreeModule, generators: Iterable[ModuleElement]):
        gens = []
        for g in generators:
            if g.module != home:
                raise RingMismatch("generator from a different free module")
            if g:
                gens.append(g)
        self.home = home
        self.generators: Tuple[ModuleElement, ...] = tuple(gens)
        self._gb: Dict[ModuleOrder, Tuple[float, List[ModuleElement]]] = {}

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def groebner(self, order: ModuleOrder = TOP, max_degree: Optional[int] = None) -> List[ModuleElement]:
        bound = float("inf") if max_degree is None else max_degree
        cached = self._gb.get(order)
        if cached and cached[0] >= bound:
            return cached[1]
        gb = module_buchberger(self, order, max_degree)
        self._gb[order] = (bound, gb)
        return gb

    def plus(self, extra: Iterable[ModuleElement]) -> "Submodule":
        return Submodule(self.home, self.generators + tuple(extra))

    def contains(self, w: ModuleElement, max_degree: Optional[int] = None) -> bool:
        return not module_normal_form(w, self.groebner(TOP, max_degree))

    def contains_submodule(self, other: "Submodule") -> bool:
        gb = self.groebner()
        return all(not module_normal_form(g, gb) for g in other.generators)

    def leading_terms(self, order: ModuleOrder = TOP, max_degree: Optional[int] = None) -> List[Term]:
        key = order.key_function(self.home.twists)
        return [max(_elem_vec(g), key=key) for g in self.groebner(order, max_degree)]


def module_buchberger(N: Submodule, order: ModuleOrder = TOP,
                      max_degree: Optional[int] = None) -> List[ModuleElement]:
    F = N.home
    if max_degree is not None and not N.is_homogeneous():
        raise NonHomogeneousInput("degree-truncated bases need homogeneous generators")
    engine = _Engine(F.ring.field.domain, order.key_function(F.twists), F.twists, F.rank == 1, max_degree)
    return [_vec_elem(F, v) for v in engine.run(_elem_vec(g) for g in N.generators)]


def module_normal_form(w: ModuleElement, gb: Sequence[ModuleElement], order: ModuleOrder = TOP) -> ModuleElement:
    if not w or not gb:
        return w
    return module_reducer(gb, order)(w)


def module_reducer(gb: Sequence[ModuleElement], order: ModuleOrder = TOP) -> Callable[[ModuleElement], ModuleElement]:
    """Normal form map against a fixed basis, sharing one loaded engine."""
    if not gb:
        return lambda w: w
    F = gb[0].module
    engine = _Engine(F.ring.field.domain, order.key_function(F.twists), F.twists, F.rank == 1, None)
    engine.load(_elem_vec(g) for g in gb)
    idx = range(len(engine.basis))

    def reduce(w: ModuleElement) -> ModuleElement:
        if w.module != F:
            raise RingMismatch("element from a different free module")
        return _vec_elem(F, engine.full_reduce(_elem_vec(w), idx))

    return reduce


def is_module_groebner_basis(gb: Sequence[ModuleElement], order: ModuleOrder = TOP) -> bool:
    if not gb:
        return True
    F = gb[0].module
    engine = _Engine(F.ring.field.domain, order.key_function(F.twists), F.twists, F.rank == 1, None)
    engine.load(_elem_vec(g) for g in gb)
    return _all_s_vectors_vanish(engine)


def syzygies(gens: Sequence, max_degree: Optional[int] = None) -> Submodule:
    """First syzygy module of a list of module elements (or polynomials).

    The generators are tagged with fresh basis vectors and a Groebner basis is
    taken in a block order that favours the original positions; the basis
    elements living purely in the tag block generate the syzygies.
    """
    elems = list(gens)
    if not elems:
        raise InvalidParameter("syzygies of an empty list")
    if not isinstance(elems[0], ModuleElement):
        ring = ring_of(elems[0])
        F1 = GradedFreeModule(ring, (0,))
        elems = [F1.element({0: f}) for f in elems]
    F = elems[0].module
    r, s = F.rank, len(elems)
    tags = tuple(g.degree() if g.degree() is not None else 0 for g in elems)
    E = GradedFreeModule(F.ring, F.twists + tags)
    S = GradedFreeModule(F.ring, tags)
    order = ModuleOrder(split=r)
    one = F.ring.one
    lifted = [E.element({**{i: f for i, f in g.coords.items()}, r + k: one}) for k, g in enumerate(elems)]
    engine = _Engine(F.ring.field.domain, order.key_function(E.twists), E.twists, False, max_degree)
    basis = engine.run(_elem_vec(v) for v in lifted)
    syz = [_vec_elem(S, v, shift=r) for v in basis if all(pos >= r for pos, _ in v)]
    return Submodule(S, syz)


def module_colon(N: Submodule, f: Polynomial, max_degree: Optional[int] = None) -> Submodule:
    """N :_F f = { v in F : f·v in N }, via syzygies of f·e_1..f·e_r, N's generators."""
    F = N.home
    gens = [F.basis(i).scale(f) for i in range(F.rank)] + list(N.generators)
    syz = syzygies(gens, max_degree)
    out = [F.element({i: v.component(i) for i in range(F.rank)}) for v in syz.generators]
    return Submodule(F, list(N.generators) + out)


def saturate_submodule(N: Submodule, f: Polynomial, F: Optional[GradedFreeModule] = None,
                       max_rounds: int = 256) -> Submodule:
    """N :_F f^∞ by iterated quotients until nothing new appears."""
    if F is not None and F != N.home:
        raise RingMismatch("submodule does not live in the given free module")
    if not f:
        raise InvalidParameter("cannot saturate by the zero polynomial")
    current = N
    for _ in range(max_rounds):
        nxt = module_colon(current, f)
        if current.contains_submodule(nxt):
            return current
        current = nxt
    raise InternalInconsistency(f"module saturation did not stabilise after {max_rounds} rounds")
