"""
Exceptional-locus certificates

Purpose: Accumulate parameter polynomials g(u) whose non-vanishing at alpha
guarantees that a parametric computation specializes correctly.

Stored as monic irreducible factors (constants elided), keyed by their
printed form so iteration order and serialization are deterministic.

A certificate is owned by one computation at a time; it is never global.
"""

import logging
from functools import lru_cache
from typing import Dict, Iterable, List, Tuple

from sympy.polys.fields import FracElement
from sympy.polys.rings import PolyElement

from .scalars import (
    SubstPoint,
    format_param_poly,
    monic_factors,
    param_eval,
    param_ring,
)

logger = logging.getLogger(__name__)


@lru_cache(maxsize=4096)
def _factors(p: PolyElement) -> Tuple[PolyElement, ...]:
    return tuple(monic_factors(p))


class Certificate:
    """
    Set of nonzero parameter polynomials, one per irreducible factor

    Attributes:
        param_names: names u1..um of the parameter ring
        factors: printed form -> monic irreducible factor
    """

    def __init__(self, param_names: Iterable[str] = ()):
        self.param_names: Tuple[str, ...] = tuple(param_names)
        self.factors: Dict[str, PolyElement] = {}

    @property
    def ring(self):
        return param_ring(self.param_names)

    # ====================
    # Registration
    # ====================

    def register(self, p: PolyElement) -> None:
        """Register a nonzero parameter polynomial"""
        if not p:
            raise ValueError("cannot register the zero polynomial")
        if p.ring != self.ring:
            p = p.set_ring(self.ring)
        for factor in _factors(p):
            key = format_param_poly(factor)
            if key not in self.factors:
                logger.debug(f"certificate factor registered: {key}")
                self.factors[key] = factor

    def register_denominator(self, a: FracElement) -> None:
        """Register the denominator of a coefficient of Q(u)"""
        self.register(a.denom)

    def register_unit(self, a: FracElement) -> None:
        """Register a coefficient that gets inverted: numerator and denominator"""
        if not a:
            raise ValueError("cannot invert zero")
        self.register(a.numer)
        self.register(a.denom)

    def merge(self, other: 'Certificate') -> None:
        for key, factor in other.factors.items():
            self.factors.setdefault(key, factor)

    def copy(self) -> 'Certificate':
        clone = Certificate(self.param_names)
        clone.factors = dict(self.factors)
        return clone

    # ====================
    # Queries
    # ====================

    def is_good(self, alpha: SubstPoint) -> bool:
        """True iff every factor is nonzero at alpha"""
        return all(param_eval(f, alpha) != 0 for f in self.factors.values())

    def vanishing_factors(self, alpha: SubstPoint) -> List[str]:
        return [key for key in sorted(self.factors) if param_eval(self.factors[key], alpha) == 0]

    def to_strings(self) -> List[str]:
        return sorted(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def __contains__(self, text: str) -> bool:
        return text in self.factors

    def __repr__(self) -> str:
        return f"Certificate({', '.join(self.to_strings())})"


def cert_is_good(c: Certificate, alpha: SubstPoint) -> bool:
    return c.is_good(alpha)
