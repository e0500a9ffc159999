"""
Complexes, resolutions and exactness

Purpose:
- FreeComplex: 0 -> F_l -> ... -> F_1 -> F_0 with maps phi_i : F_i -> F_{i-1}
- rank and determinantal ideals of polynomial matrices
- Buchsbaum-Eisenbud exactness check:
      rank F_i = rank phi_i + rank phi_{i+1}   and   depth I(phi_i) >= i
  with depth I = height I (polynomial rings are Cohen-Macaulay)
- free resolutions by iterated syzygies
- homology of complexes of presented modules
"""

import logging
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import List, Optional, Sequence, Tuple, Union

from .certificate import Certificate
from .errors import CapExceeded, NotAComplex
from .fpmod import FPModule, ModuleMap, free_module, kernel
from .groebner import ReducedGB, height_ideal, ideal_gb, in_submodule, module_gb, syzygies
from .matrix import PolyMatrix, bareiss, minors
from .polyring import Poly, RingDescriptor

logger = logging.getLogger(__name__)

INFINITY = math.inf


# ====================
# Free complexes
# ====================

@dataclass(frozen=True)
class FreeComplex:
    """
    Finite free complex

    Attributes:
        ring: base ring
        ranks: rank F_0 ... rank F_l
        maps: phi_1 ... phi_l, phi_i is ranks[i-1] x ranks[i]
    """
    ring: RingDescriptor
    ranks: Tuple[int, ...]
    maps: Tuple[PolyMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, 'ranks', tuple(self.ranks))
        object.__setattr__(self, 'maps', tuple(self.maps))
        if len(self.ranks) != len(self.maps) + 1:
            raise ValueError(f"{len(self.ranks)} ranks for {len(self.maps)} maps")
        for i, phi in enumerate(self.maps, start=1):
            if (phi.rows, phi.cols) != (self.ranks[i - 1], self.ranks[i]):
                raise ValueError(f"phi_{i} is {phi.rows}x{phi.cols}, expected "
                                 f"{self.ranks[i - 1]}x{self.ranks[i]}")

    @property
    def length(self) -> int:
        return len(self.maps)

    def phi(self, i: int) -> Optional[PolyMatrix]:
        """phi_i, or None outside 1..length"""
        return self.maps[i - 1] if 1 <= i <= self.length else None

    def check_complex(self) -> None:
        """Raises NotAComplex when some phi_i * phi_{i+1} is nonzero"""
        for i in range(1, self.length):
            if not (self.maps[i - 1] @ self.maps[i]).is_zero():
                raise NotAComplex(f"phi_{i} * phi_{i + 1} is nonzero")

    def module_maps(self) -> List[ModuleMap]:
        """The maps as homomorphisms of free modules"""
        frees = [free_module(self.ring, r) for r in self.ranks]
        out = []
        for i, phi in enumerate(self.maps, start=1):
            v1 = PolyMatrix.zeros(self.ring, 0, 0)
            out.append(ModuleMap(frees[i], frees[i - 1], phi, v1))
        return out


def koszul_complex(polys: Sequence[Poly], ring: RingDescriptor) -> FreeComplex:
    """
    Koszul complex of f_1..f_c

    F_k has the basis e_S over k-subsets S (lexicographic), and
    d(e_S) = sum_t (-1)^t f_{s_t} e_{S - s_t}.
    """
    c = len(polys)
    subsets = [list(combinations(range(c), k)) for k in range(c + 1)]
    ranks = [len(s) for s in subsets]
    maps = []
    for k in range(1, c + 1):
        index = {S: r for r, S in enumerate(subsets[k - 1])}
        grid = [[ring.zero for _ in subsets[k]] for _ in subsets[k - 1]]
        for col, S in enumerate(subsets[k]):
            for t, s in enumerate(S):
                face = S[:t] + S[t + 1:]
                sign = 1 if t % 2 == 0 else -1
                grid[index[face]][col] = polys[s] if sign > 0 else -polys[s]
        maps.append(PolyMatrix.from_rows(ring, grid, len(subsets[k])))
    return FreeComplex(ring, tuple(ranks), tuple(maps))


# ====================
# Rank and determinantal ideals
# ====================

def rank_matrix(A: PolyMatrix, cert: Optional[Certificate] = None) -> int:
    """Largest t with a nonzero t x t minor (the last pivot is one)"""
    return bareiss(A, cert).rank


def determinantal_ideal(A: PolyMatrix, t: int, cert: Optional[Certificate] = None) -> ReducedGB:
    """Ideal of all t x t minors; I_0 is the unit ideal"""
    if t < 0:
        raise ValueError("minor size must be non-negative")
    if t == 0:
        return ideal_gb([A.ring.one], A.ring)
    if t > min(A.rows, A.cols):
        return ideal_gb([], A.ring)
    return ideal_gb([m for m in minors(A, t) if m], A.ring, cert)


def ideal_of_map(A: PolyMatrix, cert: Optional[Certificate] = None) -> Tuple[int, ReducedGB]:
    """(rank A, I(A)) with I(A) the ideal of rank-size minors"""
    r = rank_matrix(A, cert)
    return r, determinantal_ideal(A, r, cert)


def depth_of(I: ReducedGB) -> Union[int, float]:
    """depth of I on R; infinity for the unit ideal"""
    if I.is_unit():
        return INFINITY
    if I.is_zero():
        return 0
    return height_ideal(I)


@dataclass(frozen=True)
class ExactnessRecord:
    index: int
    rank_F: int
    rank_phi: int
    rank_phi_next: int
    depth: Union[int, float]
    passed_rank: bool
    passed_depth: bool

    def to_dict(self) -> dict:
        depth = "inf" if self.depth == INFINITY else self.depth
        return {
            'index': self.index, 'rank_F': self.rank_F, 'rank_phi': self.rank_phi,
            'rank_phi_next': self.rank_phi_next, 'depth': depth,
            'passed_rank': self.passed_rank, 'passed_depth': self.passed_depth,
        }


@dataclass(frozen=True)
class ExactnessReport:
    records: Tuple[ExactnessRecord, ...] = field(default=())

    @property
    def overall(self) -> bool:
        return all(r.passed_rank and r.passed_depth for r in self.records)

    def to_dict(self) -> dict:
        return {'overall': self.overall, 'records': [r.to_dict() for r in self.records]}

    def summary(self) -> Tuple[Tuple[int, int, int, Union[int, float], bool, bool], ...]:
        """Comparable content without the index"""
        return tuple((r.rank_F, r.rank_phi, r.rank_phi_next, r.depth, r.passed_rank, r.passed_depth)
                     for r in self.records)


def be_exactness(C: FreeComplex, cert: Optional[Certificate] = None) -> ExactnessReport:
    """
    Buchsbaum-Eisenbud criterion for i = 1..l

    Raises:
        NotAComplex: some composite of consecutive maps is nonzero
    """
    C.check_complex()
    ranks = [rank_matrix(phi, cert) for phi in C.maps] + [0]
    records = []
    for i in range(1, C.length + 1):
        r, r_next = ranks[i - 1], ranks[i]
        depth = depth_of(determinantal_ideal(C.maps[i - 1], r, cert))
        records.append(ExactnessRecord(
            index=i,
            rank_F=C.ranks[i],
            rank_phi=r,
            rank_phi_next=r_next,
            depth=depth,
            passed_rank=C.ranks[i] == r + r_next,
            passed_depth=depth >= i,
        ))
    report = ExactnessReport(tuple(records))
    logger.debug(f"be_exactness: length {C.length}, exact={report.overall}")
    return report


# ====================
# Resolutions
# ====================

def trim_columns(A: PolyMatrix, cert: Optional[Certificate] = None) -> PolyMatrix:
    """Drop zero columns and columns generated by the remaining ones"""
    keep = [j for j in range(A.cols) if any(A.column(j))]
    j = len(keep) - 1
    while j >= 0 and len(keep) > 1:
        others = [A.column(k) for k in keep if k != keep[j]]
        if in_submodule(A.column(keep[j]), module_gb(others, A.ring, A.rows, cert)):
            keep.pop(j)
        j -= 1
    return A.select_columns(keep)


def resolution_prefix(L: FPModule, length: int,
                      cert: Optional[Certificate] = None) -> FreeComplex:
    """First `length` maps of the iterated-syzygy resolution of L (never raises on length)"""
    maps: List[PolyMatrix] = []
    current = trim_columns(L.presentation, cert) if L.presentation.cols else L.presentation
    ranks = [L.gens]
    while current.cols and len(maps) < length:
        maps.append(current)
        ranks.append(current.cols)
        current = trim_columns(syzygies(current, cert), cert)
        logger.debug(f"resolution: step {len(maps)}, next rank {current.cols}")
    return FreeComplex(L.ring, tuple(ranks), tuple(maps))


def free_resolution(L: FPModule, cap: Optional[int] = None,
                    cert: Optional[Certificate] = None) -> FreeComplex:
    """
    Free resolution of L with coker(phi_1) = L

    Raises:
        CapExceeded: still a nonzero kernel after cap maps (partial complex attached)
    """
    cap = cap if cap is not None else L.ring.n + 1
    if cap < 1:
        raise ValueError("cap must be at least 1")
    prefix = resolution_prefix(L, cap + 1, cert)
    if prefix.length > cap:
        partial = FreeComplex(L.ring, prefix.ranks[:cap + 1], prefix.maps[:cap])
        raise CapExceeded(cap, partial)
    return prefix


# ====================
# Homology
# ====================

def homology_at(module: FPModule, outgoing: Optional[ModuleMap], incoming: Optional[ModuleMap],
                cert: Optional[Certificate] = None) -> FPModule:
    """
    ker(outgoing) / im(incoming) as a presented module

    A missing outgoing map means the zero map (kernel = everything), a
    missing incoming map contributes no image.
    """
    ring = module.ring
    if outgoing is None:
        cycles = [module.basis_vector(j) for j in range(module.gens)]
    else:
        cycles = [list(g) for g in kernel(outgoing, cert).generators]
    boundaries = incoming.v0.columns() if incoming is not None else []
    k = len(cycles)
    K = PolyMatrix.from_columns(ring, cycles, module.gens)
    B = PolyMatrix.from_columns(ring, boundaries, module.gens)
    block = PolyMatrix.hstack(ring, module.gens, K, B, module.presentation)
    relations = syzygies(block, cert).select_rows(range(k))
    return FPModule(ring, k, relations)


def _composite_is_zero(d: ModuleMap, e: ModuleMap) -> bool:
    composite = d.v0 @ e.v0
    gb = d.target.relation_gb()
    return all(in_submodule(col, gb) for col in composite.columns())


def complex_homology(maps: Sequence[ModuleMap], cert: Optional[Certificate] = None) -> List[FPModule]:
    """
    H_0 ... H_l of M_0 <- M_1 <- ... <- M_l with maps[i-1] = d_i : M_i -> M_{i-1}

    Raises:
        NotAComplex: some d_i d_{i+1} is nonzero
    """
    if not maps:
        return []
    for i in range(1, len(maps)):
        if maps[i - 1].source != maps[i].target:
            raise ValueError(f"d_{i} and d_{i + 1} are not composable")
        if not _composite_is_zero(maps[i - 1], maps[i]):
            raise NotAComplex(f"d_{i} d_{i + 1} is nonzero")
    modules = [maps[0].target] + [d.source for d in maps]
    out = []
    for i, M in enumerate(modules):
        outgoing = maps[i - 1] if i >= 1 else None
        incoming = maps[i] if i < len(maps) else None
        out.append(homology_at(M, outgoing, incoming, cert))
    return out


def free_complex_homology(C: FreeComplex, cert: Optional[Certificate] = None) -> List[FPModule]:
    if not C.maps:
        return [free_module(C.ring, C.ranks[0])]
    return complex_homology(C.module_maps(), cert)
