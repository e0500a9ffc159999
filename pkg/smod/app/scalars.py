"""
Exact scalars: Q, Q[u] and Q(u)

Purpose: Field arithmetic of the parameter field k(u) with k = Q, plus
evaluation at substitution points alpha in Q^m.

Representation:
- Rational:  element of sympy's QQ (always reduced, positive denominator)
- ParamPoly: sympy PolyElement over QQ in the parameters u1..um (lex order)
- RatFun:    sympy FracElement of QQ(u1..um); sympy cancels numerator and
             denominator on construction and makes the denominator's lex
             leading coefficient positive

All values are immutable once built and safe to share between threads.
"""

import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterable, List, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.fields import FracElement, FracField
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyElement, PolyRing

from .errors import BadSubstitution, DivisionByZero, ParseError
from .parser import ExpressionParser

logger = logging.getLogger(__name__)

Rational = Any      # QQ.dtype (gmpy2.mpq or PythonMPQ)
ParamPoly = PolyElement
RatFun = FracElement

_RATIONAL_RE = re.compile(r'^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$')


# ====================
# Rationals
# ====================

def rational(numerator: int, denominator: int = 1) -> Rational:
    """Build a normalized rational"""
    if denominator == 0:
        raise DivisionByZero(f"{numerator}/0")
    return QQ(numerator, denominator)


def format_rational(value: Rational) -> str:
    """Textual form: `n` or `n/d`"""
    num, den = QQ.numer(value), QQ.denom(value)
    return str(num) if den == 1 else f"{num}/{den}"


def parse_rational(text: str) -> Rational:
    """Parse `n` or `n/d` (optional sign on n)"""
    match = _RATIONAL_RE.match(text)
    if not match:
        raise ParseError(0, "rational literal n or n/d", text)
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) else 1
    if den == 0:
        raise ParseError(text.index('/') + 1, "nonzero denominator", text)
    return QQ(num, den)


# ====================
# Parameter ring and field
# ====================

@lru_cache(maxsize=None)
def param_field(names: Tuple[str, ...]) -> FracField:
    """Q(u1..um); cached so equal name tuples share one field object"""
    return FracField(names, QQ, lex)


def param_ring(names: Tuple[str, ...]) -> PolyRing:
    """Q[u1..um] underlying param_field(names)"""
    return param_field(names).ring


@dataclass(frozen=True)
class SubstPoint:
    """
    Substitution point alpha = (alpha_1, ..., alpha_m)

    Attributes:
        values: Rationals, one per parameter
    """
    values: Tuple[Rational, ...]

    def __post_init__(self):
        object.__setattr__(self, 'values', tuple(QQ.convert(v) for v in self.values))

    def __len__(self) -> int:
        return len(self.values)

    @classmethod
    def parse(cls, text: str, m: int) -> 'SubstPoint':
        """Parse a comma-separated list such as `2,-1/3`"""
        parts = [p for p in text.split(',')] if text.strip() else []
        if len(parts) != m:
            raise ParseError(0, f"{m} comma-separated rationals", text)
        return cls(tuple(parse_rational(p) for p in parts))

    def to_strings(self) -> List[str]:
        return [format_rational(v) for v in self.values]

    def __str__(self) -> str:
        return "(" + ", ".join(self.to_strings()) + ")"


# ====================
# Evaluation
# ====================

def param_eval(p: ParamPoly, alpha: SubstPoint) -> Rational:
    """Evaluate a parameter polynomial at alpha"""
    ring = p.ring
    if len(alpha) != ring.ngens:
        raise ValueError(f"alpha has {len(alpha)} coordinates, ring has {ring.ngens} parameters")
    if ring.ngens == 0 or p.is_ground:
        return QQ.convert(p.LC) if p else QQ.zero
    return p.evaluate(list(zip(ring.gens, alpha.values)))


def ratfun_eval(a: RatFun, alpha: SubstPoint) -> Rational:
    """
    Evaluate a(u) = p(u)/q(u) at alpha

    Raises:
        BadSubstitution: q(alpha) = 0, i.e. alpha lies in the exceptional locus
    """
    den = param_eval(a.denom, alpha)
    if den == 0:
        raise BadSubstitution(format_param_poly(a.denom))
    return param_eval(a.numer, alpha) / den


# ====================
# Arithmetic
# ====================

def ratfun_arith(op: str, a: RatFun, b: RatFun) -> RatFun:
    """
    Field arithmetic of Q(u)

    Args:
        op: one of add, mul, div, neg (neg ignores b)

    Raises:
        DivisionByZero: op is div and b = 0
    """
    if op == 'add':
        return a + b
    if op == 'mul':
        return a * b
    if op == 'neg':
        return -a
    if op == 'div':
        if not b:
            raise DivisionByZero(f"({format_ratfun(a)}) / 0")
        return a / b
    raise ValueError(f"unknown operation: {op}")


def param_gcd(p: ParamPoly, q: ParamPoly) -> ParamPoly:
    """Monic gcd in Q[u]; gcd(0, q) is q made monic"""
    g = p.gcd(q)
    # sympy keeps the coefficient gcd when both inputs are monomials
    return g.monic() if g else g


def monic_factors(p: ParamPoly) -> List[ParamPoly]:
    """Distinct monic irreducible factors of a nonzero parameter polynomial"""
    if p.is_ground:
        return []
    _, factors = p.factor_list()
    return [f.monic() for f, _ in factors if not f.is_ground]


# ====================
# Text forms
# ====================

def format_monomial(monom: Sequence[int], names: Sequence[str]) -> str:
    """`x1^2*x2`; empty string for the unit monomial"""
    parts = []
    for name, exp in zip(names, monom):
        if exp == 1:
            parts.append(name)
        elif exp > 1:
            parts.append(f"{name}^{exp}")
    return "*".join(parts)


def join_terms(pieces: Iterable[str]) -> str:
    """Join signed term strings into `a + b - c`"""
    out = ""
    for piece in pieces:
        if not out:
            out = piece
        elif piece.startswith('-'):
            out += " - " + piece[1:]
        else:
            out += " + " + piece
    return out or "0"


def attach_coefficient(coeff: str, monom: str) -> str:
    """Glue a printed coefficient to a printed monomial"""
    if not monom:
        return coeff
    if coeff == "1":
        return monom
    if coeff == "-1":
        return "-" + monom
    return f"{coeff}*{monom}"


def format_param_poly(p: ParamPoly) -> str:
    names = [str(s) for s in p.ring.symbols]
    return join_terms(
        attach_coefficient(format_rational(c), format_monomial(m, names))
        for m, c in p.terms()
    )


def format_ratfun(a: RatFun) -> str:
    """`p` when the denominator is 1, else `(p)/(q)`"""
    if a.denom == 1:
        return format_param_poly(a.numer)
    if a.denom.is_ground:
        return format_param_poly(a.numer.quo_ground(a.denom.LC))
    return f"({format_param_poly(a.numer)})/({format_param_poly(a.denom)})"


def parse_param_poly(text: str, names: Tuple[str, ...]) -> ParamPoly:
    """Parse a polynomial in the parameters with rational coefficients"""
    ring = param_ring(tuple(names))
    symbols = {name: gen for name, gen in zip(names, ring.gens)}

    def divide(a, b, position):
        if not b.is_ground:
            raise ParseError(position, "constant divisor", text)
        if not b:
            raise ParseError(position, "nonzero divisor", text)
        return a.quo_ground(b.LC)

    parser = ExpressionParser(text, symbols, ring.ground_new, divide)
    return parser.parse()


def parse_ratfun(text: str, names: Tuple[str, ...]) -> RatFun:
    """Parse an element of Q(u) such as `(u1)/(u1+1)`"""
    field = param_field(tuple(names))
    symbols = {name: gen for name, gen in zip(names, field.gens)}

    def divide(a, b, position):
        if not b:
            raise ParseError(position, "nonzero divisor", text)
        return a / b

    parser = ExpressionParser(text, symbols, field.ground_new, divide)
    return parser.parse()
