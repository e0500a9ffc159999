"""
Tor, Ext, grade, projective dimension and perfection

Tor_i(L, M) = H_i(F . (x) M) and Ext^i(L, M) = H^i(Hom(F ., M)) for an
iterated-syzygy resolution F . of L. Only phi_1 .. phi_{i+1} are needed for
index i, so a resolution prefix is enough and nothing here depends on the
resolution terminating.

F_j (x) M and Hom(F_j, M) are both M^{rank F_j}, presented by
kron(I, P_M); the maps are kron(phi_j, I) and kron(phi_j^T, I).
"""

import logging
from typing import List, Optional, Sequence, Union

from .certificate import Certificate
from .errors import ZeroModule
from .fpmod import FPModule, ModuleMap, annihilator, cyclic_module, direct_power, free_module, is_zero
from .matrix import PolyMatrix
from .polyring import Poly
from .resolve import INFINITY, FreeComplex, homology_at, resolution_prefix

logger = logging.getLogger(__name__)


def _zero_module(M: FPModule) -> FPModule:
    return FPModule(M.ring, 0, PolyMatrix.zeros(M.ring, 0, 0))


def tensor_complex(F: FreeComplex, M: FPModule) -> List[ModuleMap]:
    """F . (x) M as maps d_j : F_j (x) M -> F_{j-1} (x) M"""
    ring = M.ring
    modules = [direct_power(M, r) for r in F.ranks]
    eye_g = PolyMatrix.identity(ring, M.gens)
    eye_c = PolyMatrix.identity(ring, M.presentation.cols)
    return [ModuleMap(modules[j], modules[j - 1], phi.kron(eye_g), phi.kron(eye_c))
            for j, phi in enumerate(F.maps, start=1)]


def hom_complex(F: FreeComplex, M: FPModule) -> List[ModuleMap]:
    """Hom(F ., M) as maps delta_j : Hom(F_{j-1}, M) -> Hom(F_j, M)"""
    ring = M.ring
    modules = [direct_power(M, r) for r in F.ranks]
    eye_g = PolyMatrix.identity(ring, M.gens)
    eye_c = PolyMatrix.identity(ring, M.presentation.cols)
    return [ModuleMap(modules[j - 1], modules[j], phi.transpose().kron(eye_g), phi.transpose().kron(eye_c))
            for j, phi in enumerate(F.maps, start=1)]


def _tor_from(F: FreeComplex, M: FPModule, i: int, cert: Optional[Certificate]) -> FPModule:
    if i > F.length:
        return _zero_module(M)
    maps = tensor_complex(F, M)
    module = direct_power(M, F.ranks[i])
    outgoing = maps[i - 1] if i >= 1 else None
    incoming = maps[i] if i < len(maps) else None
    return homology_at(module, outgoing, incoming, cert)


def _ext_from(F: FreeComplex, M: FPModule, i: int, cert: Optional[Certificate]) -> FPModule:
    if i > F.length:
        return _zero_module(M)
    maps = hom_complex(F, M)
    module = direct_power(M, F.ranks[i])
    outgoing = maps[i] if i < len(maps) else None
    incoming = maps[i - 1] if i >= 1 else None
    return homology_at(module, outgoing, incoming, cert)


def tor(L: FPModule, M: FPModule, i: int, cert: Optional[Certificate] = None) -> FPModule:
    """Tor_i(L, M) = H_i(F . (x) M)"""
    if i < 0:
        raise ValueError("Tor index must be non-negative")
    return _tor_from(resolution_prefix(L, i + 1, cert), M, i, cert)


def ext(L: FPModule, M: FPModule, i: int, cert: Optional[Certificate] = None) -> FPModule:
    """Ext^i(L, M) = H^i(Hom(F ., M))"""
    if i < 0:
        raise ValueError("Ext index must be non-negative")
    return _ext_from(resolution_prefix(L, i + 1, cert), M, i, cert)


def ext_vanishing(L: FPModule, M: FPModule, top: int,
                  cert: Optional[Certificate] = None) -> List[bool]:
    """[Ext^0(L, M) == 0, ..., Ext^top(L, M) == 0] from one resolution"""
    F = resolution_prefix(L, top + 1, cert)
    return [is_zero(_ext_from(F, M, i, cert), cert) for i in range(top + 1)]


def grade_on(I: Sequence[Poly], L: FPModule,
             cert: Optional[Certificate] = None) -> Union[int, float]:
    """min { i : Ext^i(R/I, L) != 0 }, infinity when none up to n (L = IL)"""
    n = L.ring.n
    vanishing = ext_vanishing(cyclic_module(L.ring, list(I)), L, n, cert)
    for i, zero in enumerate(vanishing):
        if not zero:
            return i
    return INFINITY


def grade_module(L: FPModule, cert: Optional[Certificate] = None) -> int:
    """grade of Ann L on R"""
    if is_zero(L, cert):
        raise ZeroModule("grade of the zero module")
    ann = annihilator(L, cert)
    return grade_on(ann.polys(), free_module(L.ring, 1), cert)


def proj_dim(L: FPModule, cert: Optional[Certificate] = None) -> int:
    """max { i <= n : Ext^i(L, R) != 0 }"""
    if is_zero(L, cert):
        raise ZeroModule("projective dimension of the zero module")
    vanishing = ext_vanishing(L, free_module(L.ring, 1), L.ring.n, cert)
    nonzero = [i for i, zero in enumerate(vanishing) if not zero]
    return max(nonzero) if nonzero else 0


def is_perfect(L: FPModule, cert: Optional[Certificate] = None) -> bool:
    return grade_module(L, cert) == proj_dim(L, cert)
