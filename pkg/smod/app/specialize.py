"""
Specialization u -> alpha

Purpose: Substitute a point alpha in Q^m for the parameters at every level
(coefficients, polynomials, matrices, modules, maps, complexes, ideals) and
pick certified substitution points.

Every substitution registers the denominators it meets in the caller's
Certificate. Structural properties (map compatibility, complex property)
are re-checked after substitution and raise their own errors instead of
trusting the certificate.
"""

import logging
import random
from dataclasses import dataclass
from typing import Any, Optional, Sequence

from sympy.polys.domains import QQ
from sympy.polys.fields import FracElement

from . import config
from .certificate import Certificate, cert_is_good
from .errors import BadSubstitution, CompatibilityLost, ExhaustedSampling, NotAComplex
from .fpmod import FPModule, ModuleMap, Submodule, is_compatible
from .groebner import ModuleOrder, ReducedGB, buchberger, ideal_gb
from .matrix import PolyMatrix
from .polyring import Poly, RingDescriptor
from .resolve import FreeComplex
from .scalars import SubstPoint, ratfun_eval

logger = logging.getLogger(__name__)

__all__ = [
    'SpecializedPair', 'cert_is_good', 'sample_alpha', 'subst_scalar', 'subst_poly',
    'subst_matrix', 'specialize_module', 'specialize_map', 'specialize_submodule',
    'specialize_ideal', 'specialize_gb', 'specialize_complex', 'specialize_value',
]


# ====================
# Sampling
# ====================

def sample_alpha(rng_seed: int, c: Certificate, bound: int,
                 max_draws: Optional[int] = None) -> SubstPoint:
    """
    Uniform integer point in [-bound, bound]^m outside the certificate's zero set

    Deterministic given the seed.

    Raises:
        ExhaustedSampling: no good point within max_draws draws
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    max_draws = max_draws if max_draws is not None else config.MAX_SAMPLE_DRAWS
    rng = random.Random(rng_seed)
    m = len(c.param_names)
    for draw in range(max_draws):
        alpha = SubstPoint(tuple(QQ(rng.randint(-bound, bound)) for _ in range(m)))
        if c.is_good(alpha):
            if draw:
                logger.debug(f"sample_alpha: accepted {alpha} after {draw + 1} draws")
            return alpha
    raise ExhaustedSampling(f"no certified point in {max_draws} draws (bound {bound}, "
                            f"{len(c)} certificate factors)")


# ====================
# Scalars and polynomials
# ====================

def subst_poly(f: Poly, ring: RingDescriptor, alpha: SubstPoint,
               c: Optional[Certificate] = None) -> Poly:
    """f(alpha, x) in R_alpha"""
    target = ring.specialized().ring
    if not ring.is_parametric:
        return f.set_ring(target)
    terms = {}
    for monom, coeff in f.iterterms():
        if c is not None:
            c.register_denominator(coeff)
        terms[monom] = ratfun_eval(coeff, alpha)
    return target.from_dict(terms)


def subst_scalar(a: Any, alpha: SubstPoint, c: Optional[Certificate] = None,
                 ring: Optional[RingDescriptor] = None):
    """
    Substitute into a coefficient of Q(u) or a polynomial of Q(u)[x]

    Raises:
        BadSubstitution: a denominator vanishes at alpha
    """
    if isinstance(a, FracElement):
        if c is not None:
            c.register_denominator(a)
        return ratfun_eval(a, alpha)
    if ring is None:
        raise ValueError("substituting into a polynomial needs its ring")
    return subst_poly(a, ring, alpha, c)


def subst_matrix(A: PolyMatrix, alpha: SubstPoint, c: Optional[Certificate] = None) -> PolyMatrix:
    """A_alpha, entrywise"""
    target = A.ring.specialized()
    grid = []
    for i, row in enumerate(A.entries):
        out = []
        for j, entry in enumerate(row):
            try:
                out.append(subst_poly(entry, A.ring, alpha, c))
            except BadSubstitution as exc:
                raise BadSubstitution(exc.denominator, where=f"entry ({i}, {j})") from exc
        grid.append(out)
    return PolyMatrix.from_rows(target, grid, A.cols)


# ====================
# Modules, maps, complexes
# ====================

def specialize_module(L: FPModule, alpha: SubstPoint, c: Optional[Certificate] = None) -> FPModule:
    """L_alpha = coker(presentation_alpha)"""
    return FPModule(L.ring.specialized(), L.gens, subst_matrix(L.presentation, alpha, c))


def specialize_map(v: ModuleMap, alpha: SubstPoint, c: Optional[Certificate] = None) -> ModuleMap:
    """
    v_alpha : L_alpha -> M_alpha

    Raises:
        CompatibilityLost: v0_alpha and v1_alpha no longer commute with the presentations
    """
    result = ModuleMap(
        specialize_module(v.source, alpha, c),
        specialize_module(v.target, alpha, c),
        subst_matrix(v.v0, alpha, c),
        subst_matrix(v.v1, alpha, c),
    )
    if not is_compatible(result):
        raise CompatibilityLost(f"specialized map is not compatible at alpha = {alpha}")
    return result


def specialize_submodule(S: Submodule, alpha: SubstPoint, c: Optional[Certificate] = None) -> Submodule:
    ambient = specialize_module(S.ambient, alpha, c)
    gens = [[subst_poly(f, S.ring, alpha, c) for f in g] for g in S.generators]
    return Submodule(ambient, tuple(tuple(g) for g in gens))


def specialize_complex(C: FreeComplex, alpha: SubstPoint, c: Optional[Certificate] = None) -> FreeComplex:
    """
    (F .)_alpha

    Raises:
        NotAComplex: a composite became nonzero (alpha escaped the certificate)
    """
    maps = tuple(subst_matrix(phi, alpha, c) for phi in C.maps)
    result = FreeComplex(C.ring.specialized(), C.ranks, maps)
    try:
        result.check_complex()
    except NotAComplex as exc:
        raise NotAComplex(f"specialized complex at alpha = {alpha}: {exc}") from exc
    return result


# ====================
# Ideals and bases
# ====================

def specialize_ideal(gens: Sequence[Poly], ring: RingDescriptor, alpha: SubstPoint,
                     c: Optional[Certificate] = None) -> ReducedGB:
    """
    Reduced basis of (f_1(alpha, x), ..., f_s(alpha, x))

    The parametric basis is computed as well so that its inverted leading
    coefficients land in c.
    """
    if c is not None and ring.is_parametric:
        ideal_gb(list(gens), ring, c)
    target = ring.specialized()
    return ideal_gb([subst_poly(f, ring, alpha, c) for f in gens], target)


def specialize_gb(gb: ReducedGB, alpha: SubstPoint, c: Optional[Certificate] = None) -> ReducedGB:
    """Substitute a parametric basis and re-reduce it over Q"""
    target = gb.ring.specialized()
    vectors = [[subst_poly(f, gb.ring, alpha, c) for f in v] for v in gb.vectors()]
    order = ModuleOrder.for_ring(target, gb.order.rule, gb.order.component_priority)
    return buchberger(vectors, target, gb.rank, order=order)


def specialize_value(value: Any, alpha: SubstPoint, c: Optional[Certificate] = None,
                     ring: Optional[RingDescriptor] = None):
    """Dispatch on the kind of object"""
    if isinstance(value, FPModule):
        return specialize_module(value, alpha, c)
    if isinstance(value, ModuleMap):
        return specialize_map(value, alpha, c)
    if isinstance(value, Submodule):
        return specialize_submodule(value, alpha, c)
    if isinstance(value, FreeComplex):
        return specialize_complex(value, alpha, c)
    if isinstance(value, PolyMatrix):
        return subst_matrix(value, alpha, c)
    if isinstance(value, ReducedGB):
        return specialize_gb(value, alpha, c)
    return subst_scalar(value, alpha, c, ring)


# ====================
# Pairs
# ====================

@dataclass(frozen=True)
class SpecializedPair:
    """
    A parametric object next to its specialization

    Built only at certified points.
    """
    over_R: Any
    over_Ralpha: Any
    alpha: SubstPoint
    cert: Certificate

    @classmethod
    def build(cls, obj: Any, alpha: SubstPoint, cert: Certificate,
              ring: Optional[RingDescriptor] = None) -> 'SpecializedPair':
        if not cert.is_good(alpha):
            bad = ", ".join(cert.vanishing_factors(alpha))
            raise BadSubstitution(bad, where=f"alpha = {alpha}")
        return cls(obj, specialize_value(obj, alpha, cert, ring), alpha, cert)
