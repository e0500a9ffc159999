"""
Polynomial rings R = Q(u)[x] and R_alpha = Q[x]

Purpose: Describe a ring once (RingDescriptor) and hand out the sympy sparse
polynomial ring that realizes it. Polynomials are sympy PolyElements; the
coefficient domain is QQ (rational mode) or the field Q(u1..um) (ratfun mode).

Monomial orders:
- grevlex: total degree, then reverse-lex on the last nonzero difference
- lex:     exponents compared left to right
- block k: lex on the first k variables, then grevlex on the rest

Rings are built through a cache keyed on the descriptor fields: sympy
compares orders by identity for product orders, so two independently built
block rings would not be equal.
"""

import logging
from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.orderings import MonomialOrder, ProductOrder, grevlex, lex
from sympy.polys.polyerrors import CoercionFailed, GeneratorsError
from sympy.polys.rings import PolyElement, PolyRing

from .errors import ParseError, RingMismatch
from .parser import ExpressionParser
from .scalars import (
    attach_coefficient,
    format_monomial,
    format_rational,
    format_ratfun,
    join_terms,
    param_field,
)

logger = logging.getLogger(__name__)

Poly = PolyElement
Monomial = Tuple[int, ...]

ORDERS = ('grevlex', 'lex', 'block')
RATIONAL = 'rational'
RATFUN = 'ratfun'


class Cmp(str, Enum):
    """Outcome of a monomial comparison"""
    LT = "LT"
    EQ = "EQ"
    GT = "GT"


@lru_cache(maxsize=None)
def monomial_order(order: str, elim_count: int = 0) -> MonomialOrder:
    """sympy order object; one shared instance per (order, elim_count)"""
    if order == 'grevlex':
        return grevlex
    if order == 'lex':
        return lex
    if order == 'block':
        k = elim_count
        return ProductOrder((lex, lambda m: m[:k]), (grevlex, lambda m: m[k:]))
    raise ValueError(f"unknown monomial order: {order}")


@lru_cache(maxsize=None)
def _build_ring(var_names: Tuple[str, ...], param_names: Tuple[str, ...],
                order: str, elim_count: int, mode: str) -> PolyRing:
    if mode == RATIONAL:
        domain = QQ
    else:
        domain = param_field(param_names).to_domain()
    return PolyRing(var_names, domain, monomial_order(order, elim_count))


@dataclass(frozen=True)
class RingDescriptor:
    """
    Description of k(u)[x1..xn] with a monomial order

    Attributes:
        param_names: parameter names u (empty for R_alpha)
        var_names: variable names x
        order: grevlex | lex | block
        elim_count: number of leading variables eliminated by the block order
        coefficient_mode: rational | ratfun (derived from param_names when omitted)
    """
    param_names: Tuple[str, ...]
    var_names: Tuple[str, ...]
    order: str = 'grevlex'
    elim_count: int = 0
    coefficient_mode: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, 'param_names', tuple(self.param_names))
        object.__setattr__(self, 'var_names', tuple(self.var_names))
        if self.coefficient_mode is None:
            mode = RATFUN if self.param_names else RATIONAL
            object.__setattr__(self, 'coefficient_mode', mode)
        self._validate()

    def _validate(self):
        names = self.param_names + self.var_names
        if len(set(names)) != len(names):
            raise ValueError(f"ring names must be unique: {', '.join(names)}")
        if not self.var_names:
            raise ValueError("ring needs at least one variable")
        if self.order not in ORDERS:
            raise ValueError(f"unknown monomial order: {self.order}")
        if self.order == 'block' and not 0 < self.elim_count < self.n:
            raise ValueError(f"block order needs 0 < elim_count < {self.n}, got {self.elim_count}")
        if self.order != 'block' and self.elim_count:
            raise ValueError("elim_count is only meaningful for block orders")
        if self.coefficient_mode not in (RATIONAL, RATFUN):
            raise ValueError(f"unknown coefficient mode: {self.coefficient_mode}")
        if (self.coefficient_mode == RATFUN) != bool(self.param_names):
            raise ValueError("ratfun coefficients require parameters and rational ones forbid them")

    # ====================
    # Derived objects
    # ====================

    @property
    def n(self) -> int:
        return len(self.var_names)

    @property
    def m(self) -> int:
        return len(self.param_names)

    @property
    def is_parametric(self) -> bool:
        return self.coefficient_mode == RATFUN

    @property
    def ring(self) -> PolyRing:
        return _build_ring(self.var_names, self.param_names, self.order,
                           self.elim_count, self.coefficient_mode)

    @property
    def domain(self):
        return self.ring.domain

    @property
    def field(self):
        """Q(u) as a sympy FracField, None in rational mode"""
        return param_field(self.param_names) if self.is_parametric else None

    @property
    def zero(self) -> Poly:
        return self.ring.zero

    @property
    def one(self) -> Poly:
        return self.ring.one

    def gens(self) -> Dict[str, Poly]:
        return dict(zip(self.var_names, self.ring.gens))

    def const(self, value) -> Poly:
        return self.ring.ground_new(value)

    def key(self, monom: Monomial):
        return self.ring.order(monom)

    # ====================
    # Related rings
    # ====================

    def specialized(self) -> 'RingDescriptor':
        """R_alpha: same variables and order, rational coefficients"""
        return RingDescriptor((), self.var_names, self.order, self.elim_count, RATIONAL)

    def with_order(self, order: str, elim_count: int = 0) -> 'RingDescriptor':
        return replace(self, order=order, elim_count=elim_count)

    def prepend_vars(self, names: Sequence[str]) -> 'RingDescriptor':
        """New leading variables, eliminated first by a block order"""
        return replace(self, var_names=tuple(names) + self.var_names,
                       order='block', elim_count=len(names))

    def drop_leading(self, k: int, order: str = 'grevlex') -> 'RingDescriptor':
        return replace(self, var_names=self.var_names[k:], order=order, elim_count=0)

    def describe(self) -> str:
        order = f"block {self.elim_count}" if self.order == 'block' else self.order
        params = ",".join(self.param_names) or "-"
        return f"params: {params}; vars: {','.join(self.var_names)}; order: {order}"


# ====================
# Monomials
# ====================

def monomial_cmp(order: str, a: Monomial, b: Monomial, elim_count: int = 0) -> Cmp:
    if len(a) != len(b):
        raise ValueError("monomials of different lengths")
    key = monomial_order(order, elim_count)
    ka, kb = key(a), key(b)
    if ka == kb:
        return Cmp.EQ
    return Cmp.GT if ka > kb else Cmp.LT


# ====================
# Arithmetic
# ====================

def check_same_ring(f: Poly, g: Poly) -> None:
    if f.ring != g.ring:
        raise RingMismatch(f"{f.ring} vs {g.ring}")


def poly_arith(op: str, f: Poly, g) -> Poly:
    """
    Ring arithmetic

    Args:
        op: add | sub | mul | scale (g is a coefficient for scale)
    """
    if op == 'scale':
        return f.mul_ground(f.ring.domain.convert(g))
    check_same_ring(f, g)
    if op == 'add':
        return f + g
    if op == 'sub':
        return f - g
    if op == 'mul':
        return f * g
    raise ValueError(f"unknown operation: {op}")


def change_ring(f: Poly, target: RingDescriptor) -> Poly:
    """Move f into target, matching variables by name"""
    try:
        return f.set_ring(target.ring)
    except (GeneratorsError, CoercionFailed) as exc:
        raise RingMismatch(f"cannot move {poly_format(f)} into ring ({target.describe()})") from exc


def coefficient_denominators(f: Poly) -> List:
    """Denominators q(u) of the coefficients of a ratfun-mode polynomial"""
    if f.ring.domain == QQ:
        return []
    return [c.denom for c in f.itercoeffs() if not c.denom.is_ground]


# ====================
# Text forms
# ====================

def format_coefficient(c, domain) -> str:
    if domain == QQ:
        return format_rational(c)
    return format_ratfun(c)


def _is_single_term(text: str) -> bool:
    body = text[1:] if text.startswith('-') else text
    return ' + ' not in body and ' - ' not in body


def poly_format(f: Poly) -> str:
    """Canonical text: terms in decreasing monomial order"""
    ring = f.ring
    names = [str(s) for s in ring.symbols]
    pieces = []
    for monom, coeff in f.terms():
        text = format_coefficient(coeff, ring.domain)
        mono = format_monomial(monom, names)
        if mono and not _is_single_term(text):
            text = f"({text})"
        pieces.append(attach_coefficient(text, mono))
    return join_terms(pieces)


def poly_parse(text: str, ring: RingDescriptor) -> Poly:
    """
    Parse a polynomial of ring

    Raises:
        ParseError: malformed text or division by a non-constant
        UnknownSymbol: a name that is neither a variable nor a parameter
    """
    base = ring.ring
    symbols = ring.gens()
    if ring.is_parametric:
        for name, u in zip(ring.param_names, ring.field.gens):
            symbols[name] = base.ground_new(u)

    def divide(a, b, position):
        if not b.is_ground:
            raise ParseError(position, "constant divisor", text)
        if not b:
            raise ParseError(position, "nonzero divisor", text)
        return a.quo_ground(b.LC)

    return ExpressionParser(text, symbols, base.ground_new, divide).parse()
