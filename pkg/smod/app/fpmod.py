"""
Finitely presented modules

Purpose: Modules L = coker(F1 -> F0) given by a presentation matrix,
homomorphisms between them and the submodule calculus (sum, intersection,
quotient, colon, product, annihilator, Fitting ideals).

Conventions:
- presentation has L.gens rows; its columns are the relations
- a free module has a presentation with no columns
- ModuleMap.v0 is target.gens x source.gens, v1 lifts it to relations:
  v0 * source.presentation = target.presentation * v1
- Submodule generators are vectors in the F0 coordinates of the ambient module

Module isomorphism is not decided here; fingerprints (Fitting ideals,
annihilator, dimension, zero flag) serve as a refutation-sound proxy.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .certificate import Certificate
from .errors import AmbientMismatch, NotAHomomorphism, RingMismatch
from .groebner import (
    ReducedGB,
    dim_ideal,
    ideal_gb,
    in_submodule,
    intersect_ideals,
    lift,
    module_gb,
    syzygies,
    unit_ideal,
)
from .matrix import PolyMatrix, minors
from .polyring import Poly, RingDescriptor, poly_format

logger = logging.getLogger(__name__)


# ====================
# Types
# ====================

@dataclass(frozen=True)
class FPModule:
    """
    coker(presentation)

    Attributes:
        ring: base ring
        gens: rank of F0
        presentation: gens x (number of relations) matrix
    """
    ring: RingDescriptor
    gens: int
    presentation: PolyMatrix

    def __post_init__(self):
        if self.presentation.rows != self.gens:
            raise ValueError(f"presentation has {self.presentation.rows} rows, module has {self.gens} generators")
        if self.presentation.ring != self.ring:
            raise RingMismatch("presentation lives in another ring")

    @property
    def relations(self) -> List[List[Poly]]:
        return self.presentation.columns()

    def relation_gb(self, cert: Optional[Certificate] = None) -> ReducedGB:
        return module_gb(self.relations, self.ring, self.gens, cert)

    def basis_vector(self, j: int) -> List[Poly]:
        return [self.ring.one if k == j else self.ring.zero for k in range(self.gens)]

    def format_lines(self) -> List[str]:
        header = f"module gens {self.gens} relations {self.presentation.cols}"
        return [header] + self.presentation.transpose().format_rows()


@dataclass(frozen=True)
class ModuleMap:
    source: FPModule
    target: FPModule
    v0: PolyMatrix
    v1: PolyMatrix


@dataclass(frozen=True)
class Submodule:
    """Submodule of ambient generated by vectors in F0 coordinates"""
    ambient: FPModule
    generators: Tuple[Tuple[Poly, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, 'generators', tuple(tuple(g) for g in self.generators))
        for g in self.generators:
            if len(g) != self.ambient.gens:
                raise ValueError(f"generator of length {len(g)} in a module with {self.ambient.gens} generators")

    @property
    def ring(self) -> RingDescriptor:
        return self.ambient.ring

    def matrix(self) -> PolyMatrix:
        return PolyMatrix.from_columns(self.ring, self.generators, self.ambient.gens)

    def is_zero(self) -> bool:
        """True iff every generator vanishes in the ambient module"""
        gb = self.ambient.relation_gb()
        return all(in_submodule(g, gb) for g in self.generators)

    def as_module(self, cert: Optional[Certificate] = None) -> FPModule:
        """
        Presentation of the submodule itself

        Relations among the k generators are the first k rows of the
        syzygies of [generators | ambient presentation].
        """
        k = len(self.generators)
        block = PolyMatrix.hstack(self.ring, self.ambient.gens, self.matrix(), self.ambient.presentation)
        syz = syzygies(block, cert)
        return FPModule(self.ring, k, syz.select_rows(range(k)))


# ====================
# Constructors
# ====================

def present(A: PolyMatrix) -> FPModule:
    return FPModule(A.ring, A.rows, A)


def free_module(ring: RingDescriptor, rank: int) -> FPModule:
    return FPModule(ring, rank, PolyMatrix.zeros(ring, rank, 0))


def cyclic_module(ring: RingDescriptor, ideal: Sequence[Poly]) -> FPModule:
    """R / (ideal)"""
    return FPModule(ring, 1, PolyMatrix.from_rows(ring, [list(ideal)], len(ideal)))


def is_zero(L: FPModule, cert: Optional[Certificate] = None) -> bool:
    return L.relation_gb(cert).is_unit()


def direct_sum(L: FPModule, M: FPModule) -> FPModule:
    if L.ring != M.ring:
        raise RingMismatch("direct sum of modules over different rings")
    return FPModule(L.ring, L.gens + M.gens, L.presentation.block_diag(M.presentation))


def direct_power(L: FPModule, copies: int) -> FPModule:
    result = FPModule(L.ring, 0, PolyMatrix.zeros(L.ring, 0, 0))
    for _ in range(copies):
        result = direct_sum(result, L)
    return result


def tensor_product(L: FPModule, M: FPModule) -> FPModule:
    """L (x) M presented by [P_L (x) I | I (x) P_M]"""
    if L.ring != M.ring:
        raise RingMismatch("tensor product of modules over different rings")
    ring = L.ring
    left = L.presentation.kron(PolyMatrix.identity(ring, M.gens))
    right = PolyMatrix.identity(ring, L.gens).kron(M.presentation)
    gens = L.gens * M.gens
    return FPModule(ring, gens, PolyMatrix.hstack(ring, gens, left, right))


def prune(L: FPModule, cert: Optional[Certificate] = None) -> FPModule:
    """
    Drop generator/relation pairs through constant entries

    The result is isomorphic to L; zero relations are dropped as well.
    """
    ring = L.ring
    P = [list(row) for row in L.presentation.entries]
    rows, cols = L.gens, L.presentation.cols
    while True:
        spot = next(((i, j) for j in range(cols) for i in range(rows)
                     if P[i][j] and P[i][j].is_ground), None)
        if spot is None:
            break
        i, j = spot
        c = P[i][j].LC
        if cert is not None and ring.is_parametric:
            cert.register_unit(c)
        inverse = ring.domain.quo(ring.domain.one, c)
        pivot_row = P[i]
        new_rows = []
        for k in range(rows):
            if k == i:
                continue
            factor = P[k][j].mul_ground(inverse) if P[k][j] else None
            row = [P[k][q] - factor * pivot_row[q] if factor is not None else P[k][q]
                   for q in range(cols) if q != j]
            new_rows.append(row)
        P = new_rows
        rows -= 1
        cols -= 1
    keep = [q for q in range(cols) if any(P[k][q] for k in range(rows))]
    pruned = PolyMatrix.from_rows(ring, [[row[q] for q in keep] for row in P], len(keep))
    logger.debug(f"prune: {L.gens} -> {rows} generators")
    return FPModule(ring, rows, pruned)


# ====================
# Maps
# ====================

def lift_map(v0: PolyMatrix, L: FPModule, M: FPModule,
             cert: Optional[Certificate] = None) -> ModuleMap:
    """
    The map L -> M induced by v0 on generators

    Raises:
        NotAHomomorphism: v0 does not carry relations of L into relations of M
    """
    if (v0.rows, v0.cols) != (M.gens, L.gens):
        raise ValueError(f"v0 must be {M.gens}x{L.gens}, got {v0.rows}x{v0.cols}")
    images = v0 @ L.presentation
    try:
        v1 = lift(M.presentation, images, cert)
    except NotAHomomorphism as exc:
        raise NotAHomomorphism(f"v0 does not respect the relations: {exc}") from exc
    return ModuleMap(L, M, v0, v1)


def identity_map(L: FPModule) -> ModuleMap:
    ring = L.ring
    return ModuleMap(L, L, PolyMatrix.identity(ring, L.gens),
                     PolyMatrix.identity(ring, L.presentation.cols))


def zero_map(L: FPModule, M: FPModule) -> ModuleMap:
    ring = L.ring
    return ModuleMap(L, M, PolyMatrix.zeros(ring, M.gens, L.gens),
                     PolyMatrix.zeros(ring, M.presentation.cols, L.presentation.cols))


def is_compatible(v: ModuleMap) -> bool:
    """v0 * P_source == P_target * v1"""
    lhs = v.v0 @ v.source.presentation
    rhs = v.target.presentation @ v.v1
    return lhs == rhs


def compose(z: ModuleMap, v: ModuleMap) -> ModuleMap:
    """z after v"""
    if v.target != z.source:
        raise ValueError("maps are not composable")
    return ModuleMap(v.source, z.target, z.v0 @ v.v0, z.v1 @ v.v1)


def map_add(v: ModuleMap, w: ModuleMap) -> ModuleMap:
    if v.source != w.source or v.target != w.target:
        raise ValueError("maps with different source or target")
    return ModuleMap(v.source, v.target, v.v0 + w.v0, v.v1 + w.v1)


def kernel(v: ModuleMap, cert: Optional[Certificate] = None) -> Submodule:
    """ker v: source coordinates of syz([v0 | target presentation])"""
    block = PolyMatrix.hstack(v.source.ring, v.target.gens, v.v0, v.target.presentation)
    syz = syzygies(block, cert)
    gens = [col[:v.source.gens] for col in syz.columns()]
    return Submodule(v.source, tuple(tuple(g) for g in gens if any(g)))


def image(v: ModuleMap) -> Submodule:
    return Submodule(v.target, tuple(tuple(col) for col in v.v0.columns()))


def cokernel(v: ModuleMap) -> FPModule:
    ring = v.target.ring
    return FPModule(ring, v.target.gens,
                    PolyMatrix.hstack(ring, v.target.gens, v.v0, v.target.presentation))


def is_injective(v: ModuleMap, cert: Optional[Certificate] = None) -> bool:
    return kernel(v, cert).is_zero()


def is_surjective(v: ModuleMap, cert: Optional[Certificate] = None) -> bool:
    return is_zero(cokernel(v), cert)


# ====================
# Submodule calculus
# ====================

def quotient_module(L: FPModule, M: Submodule) -> FPModule:
    """L / M presented by [L.presentation | generators of M]"""
    if M.ambient != L:
        raise AmbientMismatch("submodule of another module")
    return FPModule(L.ring, L.gens, PolyMatrix.hstack(L.ring, L.gens, L.presentation, M.matrix()))


def sub_ops(op: str, M: Submodule, N: Submodule, cert: Optional[Certificate] = None):
    """
    sum | intersect | quotient_module

    intersect is the kernel of L -> L/M (+) L/N; quotient_module returns L/M
    and ignores N's generators beyond the ambient check.
    """
    if M.ambient != N.ambient:
        raise AmbientMismatch("submodules of different modules")
    L = M.ambient
    if op == 'sum':
        return Submodule(L, M.generators + N.generators)
    if op == 'intersect':
        target = direct_sum(quotient_module(L, M), quotient_module(L, N))
        identity = PolyMatrix.identity(L.ring, L.gens)
        v0 = PolyMatrix.vstack(L.ring, L.gens, identity, identity)
        return kernel(lift_map(v0, L, target, cert), cert)
    if op == 'quotient_module':
        return quotient_module(L, M)
    raise ValueError(f"unknown submodule operation: {op}")


def annihilator(L: FPModule, cert: Optional[Certificate] = None) -> ReducedGB:
    """Ann L as the intersection of (relations : e_j) over the generators"""
    ring = L.ring
    if L.gens == 0:
        return unit_ideal(ring)
    result: Optional[List[Poly]] = None
    for j in range(L.gens):
        e = PolyMatrix.from_columns(ring, [L.basis_vector(j)], L.gens)
        syz = syzygies(PolyMatrix.hstack(ring, L.gens, e, L.presentation), cert)
        colon = [f for f in syz.row(0) if f] if syz.rows else []
        if result is None:
            result = ideal_gb(colon, ring, cert).polys()
        else:
            result = intersect_ideals(result, colon, ring, cert).polys()
        if not result:
            break
    return ideal_gb(result, ring, cert)


def fitting_ideal(L: FPModule, j: int, cert: Optional[Certificate] = None) -> ReducedGB:
    """Ideal of (gens - j)-minors of the presentation"""
    if j < 0:
        raise ValueError("Fitting index must be non-negative")
    ring = L.ring
    t = L.gens - j
    if t <= 0:
        return unit_ideal(ring)
    if t > L.presentation.cols:
        return ideal_gb([], ring)
    return ideal_gb([m for m in minors(L.presentation, t) if m], ring, cert)


def colon_submodule(L: FPModule, I: Sequence[Poly], cert: Optional[Certificate] = None) -> Submodule:
    """(0_L : I) inside L, the kernel of L -> L^s, l -> (f_1 l, ..., f_s l)"""
    ring = L.ring
    I = list(I)
    target = direct_power(L, len(I))
    identity = PolyMatrix.identity(ring, L.gens)
    blocks = [identity.scale(f) for f in I]
    v0 = PolyMatrix.vstack(ring, L.gens, *blocks)
    return kernel(lift_map(v0, L, target, cert), cert)


def product_submodule(L: FPModule, I: Sequence[Poly]) -> Submodule:
    """I L, generated by f e_j"""
    return Submodule(L, tuple(tuple(f * e for e in L.basis_vector(j))
                              for f in I for j in range(L.gens) if f))


def colon_and_product(L: FPModule, I: Sequence[Poly],
                      cert: Optional[Certificate] = None) -> Tuple[FPModule, Submodule]:
    """
    (0_L : I) presented as a module, and I L as a submodule of L

    colon_submodule keeps the colon inside L when the embedding is needed.
    """
    return colon_submodule(L, I, cert).as_module(cert), product_submodule(L, I)


# ====================
# Fingerprints
# ====================

@dataclass(frozen=True)
class Fingerprint:
    """
    Isomorphism invariants of a module

    Attributes:
        fitting: Fitt_0, Fitt_1, ... up to and including the first unit ideal
        annihilator: reduced basis of Ann L
        dim: Krull dimension of L (-1 for the zero module)
        is_zero: L = 0
    """
    fitting: Tuple[ReducedGB, ...]
    annihilator: ReducedGB
    dim: int
    is_zero: bool

    def describe(self) -> str:
        fitt = " | ".join("; ".join(gb.format_lines()) or "0" for gb in self.fitting)
        ann = "; ".join(self.annihilator.format_lines()) or "0"
        return f"zero={self.is_zero} dim={self.dim} ann=({ann}) fitting=[{fitt}]"


def fingerprint(L: FPModule, cert: Optional[Certificate] = None) -> Fingerprint:
    fitting = []
    for j in range(L.gens + 1):
        ideal = fitting_ideal(L, j, cert)
        fitting.append(ideal)
        if ideal.is_unit():
            break
    ann = annihilator(L, cert)
    zero = fitting[0].is_unit()
    return Fingerprint(tuple(fitting), ann, dim_ideal(ann), zero)


def format_submodule(S: Submodule) -> List[str]:
    return ["(" + ", ".join(poly_format(f) for f in g) + ")" for g in S.generators]
