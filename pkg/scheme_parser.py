# scheme_parser.py
from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from sympy import Symbol
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from sympy.polys.domains import QQ
from sympy.polys.rings import PolyRing

import settings
from coeff import FieldSpec
from errors import KaehlerError, PolynomialSyntaxError, SchemeFileError, UnknownVariable, WrongRing
from poly import Polynomial, Ring, ring_of
from schemes import FatPoint, SchemeSpec

FORMAT_HELP = """\
Expected scheme file (JSON):
{
  "format": 1,
  "label": "optional name",
  "field": "Q" | "F3" | "Fp",          # "Fp" needs an extra "p": 3
  "n": 2,
  and exactly one of
  "points": [{"coords": ["1", "2/3", "0"], "multiplicity": 1}, ...]
  "ideal": ["X1^2 + X0^2", "(X2^2 - 2*X0^2)^2"]
  "components": [["X1 - X0", "X2^2"], ["X1", "X2"], ...]
  optional "profile": [{"kappa": 4, "nu": 2}, ...]
}
Polynomials use X0..Xn, integer or a/b coefficients, + - * ^ and parentheses.
"""

TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>\*\*|[-+*/^()]))")
RUN_OF_VARIABLES = re.compile(r"^(?:[Xx]\d+){2,}$")
PROJECTIVE_NAME = re.compile(r"^X(\d+)$")
AFFINE_NAME = re.compile(r"^x(\d+)$")
TRANSFORMS = standard_transformations + (convert_xor,)


# --- polynomials ---------------------------------------------------------------

def _tokens(text: str) -> List[Tuple[str, str, int]]:
    out = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        m = TOKEN.match(stripped, pos)
        if not m or m.end() == pos:
            bad = pos + len(stripped[pos:]) - len(stripped[pos:].lstrip())
            raise PolynomialSyntaxError(f"unexpected character {stripped[bad]!r}", bad)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return out


def _check_name(name: str, at: int, ring: Ring) -> None:
    if RUN_OF_VARIABLES.match(name):
        raise PolynomialSyntaxError(f"implicit multiplication in {name!r}; write the factors with '*'", at)
    proj, aff = PROJECTIVE_NAME.match(name), AFFINE_NAME.match(name)
    if name in ring.names:
        return
    if (proj and not ring.projective) or (aff and ring.projective):
        raise WrongRing(f"{name} does not belong to {ring} (position {at})")
    raise UnknownVariable(f"unknown variable {name!r} at position {at}; {ring} has {', '.join(ring.names)}")


def _check_grammar(tokens: List[Tuple[str, str, int]], ring: Ring) -> None:
    depth = 0
    want_operand = True
    prev = None
    for kind, value, at in tokens:
        if prev in ("^", "**"):
            if kind != "num":
                raise PolynomialSyntaxError("exponent must be a non-negative integer", at)
            if int(value) > settings.MAX_EXPONENT:
                raise PolynomialSyntaxError(f"exponent {value} exceeds {settings.MAX_EXPONENT}", at)
        if kind in ("num", "name") or value == "(":
            if not want_operand:
                raise PolynomialSyntaxError("missing operator (implicit multiplication is not allowed)", at)
            if kind == "name":
                _check_name(value, at, ring)
            if value == "(":
                depth += 1
            want_operand = value == "("
        elif value in ("+", "-"):
            # a sign may only open the polynomial or a parenthesis
            if want_operand and prev not in (None, "("):
                raise PolynomialSyntaxError(f"dangling operator {value!r}", at)
            want_operand = True
        elif value == ")":
            if want_operand:
                raise PolynomialSyntaxError("missing operand before ')'", at)
            depth -= 1
            if depth < 0:
                raise PolynomialSyntaxError("unbalanced ')'", at)
        else:
            if want_operand:
                raise PolynomialSyntaxError(f"dangling operator {value!r}", at)
            want_operand = True
        prev = value
    if want_operand:
        raise PolynomialSyntaxError(f"polynomial ends with {tokens[-1][1]!r}", tokens[-1][2])
    if depth:
        raise PolynomialSyntaxError("unclosed '('", tokens[-1][2])


def _degree_bound(expr) -> int:
    if expr.is_Symbol:
        return 1
    if expr.is_Number:
        return 0
    if expr.is_Pow and expr.exp.is_Integer:
        return _degree_bound(expr.base) * max(int(expr.exp), 0)
    if expr.is_Mul:
        return sum(_degree_bound(a) for a in expr.args)
    if expr.is_Add:
        return max(_degree_bound(a) for a in expr.args)
    return 0


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    """Exact polynomial of `ring` from text such as "X1^2 + 2/3*X0*X2"."""
    tokens = _tokens(text)
    if not tokens:
        raise PolynomialSyntaxError("empty polynomial", 0)
    _check_grammar(tokens, ring)
    symbols = {name: Symbol(name) for name in ring.names}
    try:
        expr = parse_expr(text.strip(), local_dict=symbols, transformations=TRANSFORMS, evaluate=True)
        if _degree_bound(expr) > settings.MAX_EXPONENT:
            raise PolynomialSyntaxError(f"degree of {text.strip()!r} exceeds {settings.MAX_EXPONENT}")
        rational = PolyRing(",".join(ring.names), QQ, ring.order.sympy_order).from_expr(expr)
    except KaehlerError:
        raise
    except Exception as exc:  # sympy raises several unrelated types here
        raise PolynomialSyntaxError(f"not a polynomial: {text.strip()!r} ({exc})") from None
    field = ring.field
    return ring.from_terms({m: field.from_sympy(QQ.to_sympy(c)) for m, c in rational.items()})


def render_polynomial(f: Polynomial, ring: Optional[Ring] = None) -> str:
    """Text form that parse_polynomial reads back to the same polynomial."""
    ring = ring or ring_of(f)
    if not f:
        return "0"
    field = ring.field
    parts = []
    for m in sorted(f.keys(), key=ring.sympy.order, reverse=True):
        c = field.to_fraction(f[m])
        factors = [f"{name}^{e}" if e > 1 else name for name, e in zip(ring.names, m) if e]
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if factors:
            body = "*".join(factors) if mag == 1 else f"{mag}*{'*'.join(factors)}"
        else:
            body = str(mag)
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# --- scheme files ------------------------------------------------------------------

def _field_of(doc: Dict[str, Any]) -> FieldSpec:
    return FieldSpec.parse(str(doc.get("field", "Q")), doc.get("p"))


def scheme_from_dict(doc: Dict[str, Any], label: str = "") -> SchemeSpec:
    problems = []
    if doc.get("format") != 1:
        problems.append(f"unsupported format {doc.get('format')!r} (expected 1)")
    n = doc.get("n")
    if not isinstance(n, int) or n < 1:
        problems.append(f"'n' must be a positive integer, got {n!r}")
    sources = [k for k in ("points", "ideal", "components") if k in doc]
    if len(sources) != 1:
        problems.append(f"exactly one of points / ideal / components is required, got {sources or 'none'}")
    if problems:
        raise SchemeFileError("; ".join(problems) + "\n\n" + FORMAT_HELP)

    try:
        field = _field_of(doc)
        ring = Ring(field, n)
        kwargs: Dict[str, Any] = {}
        if "points" in doc:
            kwargs["fat_points"] = tuple(
                FatPoint(tuple(field.parse_literal(str(c)) for c in p["coords"]), int(p.get("multiplicity", 1)))
                for p in doc["points"]
            )
        elif "ideal" in doc:
            kwargs["ideal_generators"] = tuple(parse_polynomial(s, ring) for s in doc["ideal"])
        else:
            kwargs["components"] = tuple(
                tuple(parse_polynomial(s, ring) for s in comp) for comp in doc["components"]
            )
        if "profile" in doc:
            kwargs["profile"] = tuple((int(e["kappa"]), int(e["nu"])) for e in doc["profile"])
    except KaehlerError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemeFileError(f"malformed entry: {exc}\n\n{FORMAT_HELP}") from None
    try:
        return SchemeSpec(field, n, label=str(doc.get("label", label)), **kwargs)
    except ValueError as exc:
        raise SchemeFileError(f"{exc}\n\n{FORMAT_HELP}") from None


def load_scheme_file(path: str | Path) -> SchemeSpec:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise SchemeFileError(f"no such scheme file: {path}") from None
    except json.JSONDecodeError as exc:
        raise SchemeFileError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(doc, dict):
        raise SchemeFileError(f"{path}: top level must be an object\n\n{FORMAT_HELP}")
    return scheme_from_dict(doc, label=path.stem)
