# coeff.py
"""
Exact coefficient fields: the rationals and prime fields F_p.

Elements are sympy domain elements (QQ / GF(p)); FieldSpec is the one
interface the rest of the code uses to create, combine and print them.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any

from sympy import Rational, isprime
from sympy.polys.domains import GF, QQ

from errors import DivisionByZero, InvalidField

RATIONALS = "Q"
PRIME_FIELD = "Fp"

FieldElem = Any  # PythonMPQ / mpq for QQ, ModularInteger for GF(p)

_LITERAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?$")
_LABEL = re.compile(r"^(?:F|GF|Fp)\s*\(?\s*(\d+)\s*\)?$", re.IGNORECASE)


@lru_cache(maxsize=None)
def _prime_domain(p: int):
    return GF(p, symmetric=False)


@dataclass(frozen=True)
class FieldSpec:
    kind: str = RATIONALS
    p: int | None = None

    def __post_init__(self):
        problems = []
        if self.kind not in (RATIONALS, PRIME_FIELD):
            problems.append(f"unknown field kind {self.kind!r}")
        elif self.kind == RATIONALS and self.p is not None:
            problems.append("the rationals take no modulus")
        elif self.kind == PRIME_FIELD:
            if not isinstance(self.p, int) or self.p < 2:
                problems.append(f"modulus must be an integer >= 2, got {self.p!r}")
            elif not isprime(self.p):
                problems.append(f"modulus {self.p} is not prime")
        if problems:
            raise InvalidField("; ".join(problems))

    # --- construction -------------------------------------------------------
    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(RATIONALS)

    @classmethod
    def prime_field(cls, p: int) -> "FieldSpec":
        return cls(PRIME_FIELD, p)

    @classmethod
    def parse(cls, label: str, p: int | None = None) -> "FieldSpec":
        """Accepts "Q", "QQ", "F3", "GF(3)", or "Fp" together with an explicit p."""
        text = str(label).strip()
        if text.upper() in ("Q", "QQ"):
            return cls.rationals()
        if text == PRIME_FIELD and p is not None:
            return cls.prime_field(int(p))
        m = _LABEL.match(text)
        if m:
            return cls.prime_field(int(m.group(1)))
        raise InvalidField(f"cannot read field {label!r} (use 'Q', 'F<p>' or 'Fp' with p)")

    # --- properties ---------------------------------------------------------
    @property
    def domain(self):
        return QQ if self.kind == RATIONALS else _prime_domain(self.p)

    def characteristic(self) -> int:
        return 0 if self.kind == RATIONALS else self.p

    @property
    def label(self) -> str:
        return "Q" if self.kind == RATIONALS else f"F{self.p}"

    def __str__(self) -> str:
        return self.label

    # --- elements -----------------------------------------------------------
    @property
    def zero(self) -> FieldElem:
        return self.domain.zero

    @property
    def one(self) -> FieldElem:
        return self.domain.one

    def from_integer(self, n: int) -> FieldElem:
        return self.domain.convert(int(n))

    def from_fraction(self, num: int, den: int = 1) -> FieldElem:
        if den == 0:
            raise DivisionByZero("zero denominator")
        if self.kind == RATIONALS:
            return QQ(int(num), int(den))
        return self.div(self.from_integer(num), self.from_integer(den))

    def from_sympy(self, value) -> FieldElem:
        r = Rational(value)
        return self.from_fraction(int(r.p), int(r.q))

    def parse_literal(self, text: str) -> FieldElem:
        m = _LITERAL.match(str(text))
        if not m:
            raise InvalidField(f"not a field literal: {text!r}")
        return self.from_fraction(int(m.group(1)), int(m.group(2) or 1))

    def to_fraction(self, a: FieldElem) -> Fraction:
        if self.kind == RATIONALS:
            r = QQ.to_sympy(a)
            return Fraction(int(r.p), int(r.q))
        return Fraction(int(a) % self.p)

    def to_str(self, a: FieldElem) -> str:
        return str(self.to_fraction(a))

    # --- arithmetic ---------------------------------------------------------
    def add(self, a: FieldElem, b: FieldElem) -> FieldElem:
        return a + b

    def sub(self, a: FieldElem, b: FieldElem) -> FieldElem:
        return a - b

    def mul(self, a: FieldElem, b: FieldElem) -> FieldElem:
        return a * b

    def neg(self, a: FieldElem) -> FieldElem:
        return -a

    def is_zero(self, a: FieldElem) -> bool:
        return not a

    def eq(self, a: FieldElem, b: FieldElem) -> bool:
        return a == b

    def inv(self, a: FieldElem) -> FieldElem:
        if not a:
            raise DivisionByZero(f"inverse of zero in {self.label}")
        return self.domain.revert(a)

    def div(self, a: FieldElem, b: FieldElem) -> FieldElem:
        if not b:
            raise DivisionByZero(f"division by zero in {self.label}")
        return self.domain.quo(a, b)


def char(field: FieldSpec) -> int:
    return field.characteristic()
