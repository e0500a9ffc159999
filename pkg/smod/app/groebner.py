"""
Groebner bases of submodules of free modules R^s

Purpose: Buchberger's algorithm over sparse module vectors, normal forms,
syzygies, lifting, elimination and the ideal operations built on them.

Representation:
- A module vector is a dict {(component, monomial): coefficient} with no
  zero coefficients. Coefficients live in the ring's domain (QQ or Q(u)).
- ModuleOrder ranks terms: term-over-position (TOP) compares monomials
  first, position-over-term (POT) compares components first. Component 0
  is the most important unless a priority permutation says otherwise.

Every basis element is kept monic. In ratfun mode the leading coefficient
of every element made monic, and every input denominator, is registered in
the caller's Certificate: at any alpha where none of them vanishes the same
run goes through verbatim over Q, so the specialized reduced basis is the
reduced basis of the specialized input.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .certificate import Certificate
from .errors import ImproperIdeal, NotAHomomorphism, OrderMismatch
from .matrix import PolyMatrix
from .polyring import Monomial, Poly, RingDescriptor, change_ring, monomial_order, poly_format

logger = logging.getLogger(__name__)

Term = Tuple[int, Monomial]
Vec = Dict[Term, object]

TOP = 'TOP'
POT = 'POT'


# ====================
# Orders
# ====================

@dataclass(frozen=True)
class ModuleOrder:
    """
    Term order on R^s

    Attributes:
        base: monomial order name of the ring
        elim_count: block size for block orders
        rule: TOP | POT
        component_priority: rank of each component (lower = more important);
                            empty means the identity
    """
    base: str = 'grevlex'
    elim_count: int = 0
    rule: str = TOP
    component_priority: Tuple[int, ...] = ()

    @classmethod
    def for_ring(cls, ring: RingDescriptor, rule: str = TOP,
                 component_priority: Tuple[int, ...] = ()) -> 'ModuleOrder':
        return cls(ring.order, ring.elim_count, rule, tuple(component_priority))

    def key(self, term: Term):
        comp, monom = term
        rank = self.component_priority[comp] if self.component_priority else comp
        mkey = monomial_order(self.base, self.elim_count)(monom)
        if self.rule == TOP:
            return (mkey, -rank)
        return (-rank, mkey)


# ====================
# Vectors
# ====================

def to_vec(entries: Sequence[Poly]) -> Vec:
    vec: Vec = {}
    for comp, f in enumerate(entries):
        for monom, coeff in f.iterterms():
            vec[(comp, monom)] = coeff
    return vec


def from_vec(vec: Vec, rank: int, ring: RingDescriptor) -> List[Poly]:
    parts: List[Dict[Monomial, object]] = [{} for _ in range(rank)]
    for (comp, monom), coeff in vec.items():
        parts[comp][monom] = coeff
    base = ring.ring
    return [base.from_dict(p) if p else base.zero for p in parts]


def leading_term(vec: Vec, order: ModuleOrder) -> Term:
    return max(vec, key=order.key)


def _sub_multiple(p: Vec, g: Vec, coeff, shift: Monomial, mul) -> None:
    """p -= coeff * x^shift * g, in place"""
    for (comp, monom), c in g.items():
        term = (comp, mul(monom, shift))
        value = p.get(term)
        value = -coeff * c if value is None else value - coeff * c
        if value:
            p[term] = value
        else:
            p.pop(term, None)


def _scale(vec: Vec, factor) -> Vec:
    return {t: c * factor for t, c in vec.items()}


def _register_coefficients(vec: Vec, ring: RingDescriptor, cert: Optional[Certificate]) -> None:
    if cert is None or not ring.is_parametric:
        return
    for c in vec.values():
        cert.register_denominator(c)


def _make_monic(vec: Vec, order: ModuleOrder, ring: RingDescriptor,
                cert: Optional[Certificate]) -> Vec:
    lc = vec[leading_term(vec, order)]
    if lc == 1:
        return vec
    if cert is not None and ring.is_parametric:
        cert.register_unit(lc)
    return _scale(vec, ring.domain.quo(ring.domain.one, lc))


# ====================
# Reduced basis
# ====================

@dataclass(frozen=True, eq=False)
class ReducedGB:
    """
    Reduced Groebner basis of a submodule of R^rank

    Generators are monic, mutually reduced and sorted by decreasing
    leading term, so two bases of the same submodule compare equal.
    """
    ring: RingDescriptor
    rank: int
    generators: Tuple[Vec, ...]
    order: ModuleOrder
    leads: Tuple[Term, ...] = field(default=())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ReducedGB):
            return NotImplemented
        return (self.ring == other.ring and self.rank == other.rank
                and self.order == other.order and list(self.generators) == list(other.generators))

    def __hash__(self):
        return hash((self.ring, self.rank, self.order, len(self.generators)))

    def __len__(self) -> int:
        return len(self.generators)

    def vectors(self) -> List[List[Poly]]:
        return [from_vec(g, self.rank, self.ring) for g in self.generators]

    def polys(self) -> List[Poly]:
        """Generators of a rank-1 basis as polynomials"""
        if self.rank != 1:
            raise ValueError("polys() needs a basis of an ideal")
        return [v[0] for v in self.vectors()]

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        """True iff the submodule is all of R^rank"""
        if self.rank == 0:
            return True
        zero = self.ring.ring.zero_monom
        constants = {comp for comp, monom in self.leads if monom == zero}
        return constants == set(range(self.rank))

    def format_lines(self) -> List[str]:
        if self.rank == 1:
            return [poly_format(f) for f in self.polys()]
        return ["(" + ", ".join(poly_format(f) for f in v) + ")" for v in self.vectors()]

    def __repr__(self) -> str:
        return f"ReducedGB[{'; '.join(self.format_lines())}]"


# ====================
# Buchberger
# ====================

def spoly(f: Vec, g: Vec, lf: Term, lg: Term, ring) -> Vec:
    """S-vector of two monic vectors with the same leading component"""
    lcm = ring.monomial_lcm(lf[1], lg[1])
    s = {}
    _sub_multiple(s, f, -1, ring.monomial_div(lcm, lf[1]), ring.monomial_mul)
    _sub_multiple(s, g, 1, ring.monomial_div(lcm, lg[1]), ring.monomial_mul)
    return s


def reduce(vec: Vec, G: Sequence[Vec], leads: Sequence[Term], order: ModuleOrder, ring) -> Vec:
    """Full remainder of vec modulo monic G"""
    p = dict(vec)
    r: Vec = {}
    div, mul = ring.monomial_div, ring.monomial_mul
    while p:
        lt = leading_term(p, order)
        coeff = p[lt]
        for g, lg in zip(G, leads):
            if lg[0] != lt[0]:
                continue
            shift = div(lt[1], lg[1])
            if shift is not None:
                _sub_multiple(p, g, coeff, shift, mul)
                break
        else:
            r[lt] = coeff
            del p[lt]
    return r


def _update(G: List[Vec], leads: List[Term], pairs: Set[Tuple[int, int]], f: Vec,
            lf: Term, ring, rank: int, order: ModuleOrder) -> None:
    """Add f to G and refresh the pair set (Gebauer-Moeller style)"""
    lcm, mul, div = ring.monomial_lcm, ring.monomial_mul, ring.monomial_div
    k = len(G)

    # chain criterion on the old pairs
    def keep(pair):
        i, j = pair
        if leads[i][0] != lf[0]:
            return True
        lij = lcm(leads[i][1], leads[j][1])
        return (div(lij, lf[1]) is None
                or lij == lcm(leads[i][1], lf[1])
                or lij == lcm(leads[j][1], lf[1]))
    kept = {p for p in pairs if keep(p)}

    by_lcm: Dict[Monomial, List[int]] = {}
    for i in range(k):
        if leads[i][0] == lf[0]:
            by_lcm.setdefault(lcm(leads[i][1], lf[1]), []).append(i)
    minimal: List[Monomial] = []
    for L in sorted(by_lcm, key=lambda m: order.key((lf[0], m))):
        if all(div(L, L2) is None for L2 in minimal):
            minimal.append(L)
    for L in minimal:
        group = by_lcm[L]
        # coprime leading monomials only give zero S-vectors for ideals
        if rank == 1 and any(lcm(leads[i][1], lf[1]) == mul(leads[i][1], lf[1]) for i in group):
            continue
        kept.add((min(group), k))

    pairs.clear()
    pairs.update(kept)
    G.append(f)
    leads.append(lf)


def minimalize(G: Sequence[Vec], leads: Sequence[Term], order: ModuleOrder, ring) -> List[int]:
    """Indices of a minimal basis, smallest leading terms first"""
    chosen: List[int] = []
    for i in sorted(range(len(G)), key=lambda i: order.key(leads[i])):
        lt = leads[i]
        if all(leads[j][0] != lt[0] or ring.monomial_div(lt[1], leads[j][1]) is None for j in chosen):
            chosen.append(i)
    return chosen


def buchberger(gens: Sequence[Sequence[Poly]], ring: RingDescriptor, rank: int,
               order: Optional[ModuleOrder] = None,
               cert: Optional[Certificate] = None) -> ReducedGB:
    """
    Reduced Groebner basis of the submodule of R^rank generated by gens

    Args:
        gens: vectors of length rank
        order: module order (term-over-position on the ring order by default)
        cert: receives denominators and inverted leading coefficients (ratfun mode)
    """
    order = order or ModuleOrder.for_ring(ring)
    base = ring.ring
    G: List[Vec] = []
    leads: List[Term] = []
    pairs: Set[Tuple[int, int]] = set()

    for entries in gens:
        if len(entries) != rank:
            raise ValueError(f"generator of length {len(entries)} in a module of rank {rank}")
        vec = to_vec(entries)
        if not vec:
            continue
        _register_coefficients(vec, ring, cert)
        vec = _make_monic(vec, order, ring, cert)
        _update(G, leads, pairs, vec, leading_term(vec, order), base, rank, order)

    steps = 0
    while pairs:
        i, j = min(pairs, key=lambda p: (order.key((leads[p[0]][0], base.monomial_lcm(leads[p[0]][1], leads[p[1]][1]))), p))
        pairs.remove((i, j))
        s = spoly(G[i], G[j], leads[i], leads[j], base)
        r = reduce(s, G, leads, order, base)
        steps += 1
        if r:
            r = _make_monic(r, order, ring, cert)
            _update(G, leads, pairs, r, leading_term(r, order), base, rank, order)

    chosen = minimalize(G, leads, order, base)
    Gmin = [G[i] for i in chosen]
    Lmin = [leads[i] for i in chosen]
    reduced = []
    for i, g in enumerate(Gmin):
        others = Gmin[:i] + Gmin[i + 1:]
        other_leads = Lmin[:i] + Lmin[i + 1:]
        head = {Lmin[i]: g[Lmin[i]]}
        tail = {t: c for t, c in g.items() if t != Lmin[i]}
        tail = reduce(tail, others, other_leads, order, base)
        head.update(tail)
        reduced.append(head)

    final = sorted(zip(reduced, Lmin), key=lambda pair: order.key(pair[1]), reverse=True)
    logger.debug(f"buchberger: rank {rank}, {steps} S-pairs reduced, basis size {len(final)}")
    return ReducedGB(ring, rank, tuple(g for g, _ in final), order, tuple(lt for _, lt in final))


def normal_form(v: Sequence[Poly], gb: ReducedGB) -> List[Poly]:
    """Remainder of v on division by a reduced basis"""
    r = reduce(to_vec(v), gb.generators, gb.leads, gb.order, gb.ring.ring)
    return from_vec(r, gb.rank, gb.ring)


def in_submodule(v: Sequence[Poly], gb: ReducedGB) -> bool:
    return not reduce(to_vec(v), gb.generators, gb.leads, gb.order, gb.ring.ring)


def module_gb(columns: Sequence[Sequence[Poly]], ring: RingDescriptor, rank: int,
              cert: Optional[Certificate] = None) -> ReducedGB:
    """Basis of the column module under the default order"""
    return buchberger(columns, ring, rank, cert=cert)


def same_submodule(a: Sequence[Sequence[Poly]], b: Sequence[Sequence[Poly]],
                   ring: RingDescriptor, rank: int) -> bool:
    return module_gb(a, ring, rank) == module_gb(b, ring, rank)


# ====================
# Ideals
# ====================

def ideal_gb(polys: Sequence[Poly], ring: RingDescriptor,
             cert: Optional[Certificate] = None) -> ReducedGB:
    return buchberger([[f] for f in polys], ring, 1, cert=cert)


def unit_ideal(ring: RingDescriptor) -> ReducedGB:
    return ideal_gb([ring.one], ring)


def dim_ideal(I: ReducedGB) -> int:
    """
    Krull dimension of R/I from maximal independent sets of leading monomials

    Returns -1 for the unit ideal and n for the zero ideal.
    """
    if I.rank != 1:
        raise ValueError("dim_ideal needs a basis of an ideal")
    n = I.ring.n
    if I.is_zero():
        return n
    if I.is_unit():
        return -1
    supports = [frozenset(k for k, e in enumerate(monom) if e) for _, monom in I.leads]
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            chosen = frozenset(subset)
            if all(not s <= chosen for s in supports):
                return size
    return 0


def height_ideal(I: ReducedGB) -> int:
    if I.is_zero() or I.is_unit():
        raise ImproperIdeal("height is defined for proper nonzero ideals")
    return I.ring.n - dim_ideal(I)


def elim_ideal(I: ReducedGB, drop_count: int) -> ReducedGB:
    """
    Intersection of I with the subring of the last n - drop_count variables

    Raises:
        OrderMismatch: I was not computed in an order eliminating the leading variables
    """
    if drop_count == 0:
        return I
    ring = I.ring
    eliminates = (ring.order == 'lex'
                  or (ring.order == 'block' and ring.elim_count == drop_count))
    if I.rank != 1 or not eliminates:
        raise OrderMismatch(f"basis in order {ring.order} cannot eliminate {drop_count} variables")
    target = ring.drop_leading(drop_count, order='lex' if ring.order == 'lex' else 'grevlex')
    kept = [f for f in I.polys() if all(e == 0 for monom in f.monoms() for e in monom[:drop_count])]
    return ideal_gb([change_ring(f, target) for f in kept], target)


def _fresh_name(ring: RingDescriptor, stem: str = 't') -> str:
    taken = set(ring.var_names) | set(ring.param_names)
    name, k = stem, 0
    while name in taken:
        k += 1
        name = f"{stem}{k}"
    return name


def intersect_ideals(I: Sequence[Poly], J: Sequence[Poly], ring: RingDescriptor,
                     cert: Optional[Certificate] = None) -> ReducedGB:
    """I cap J = (t I + (1 - t) J) cap R"""
    I = [f for f in I if f]
    J = [g for g in J if g]
    if not I or not J:
        return ideal_gb([], ring)
    big = ring.prepend_vars((_fresh_name(ring),))
    t = big.ring.gens[0]
    gens = [t * change_ring(f, big) for f in I] + [(1 - t) * change_ring(g, big) for g in J]
    eliminated = elim_ideal(ideal_gb(gens, big, cert), 1)
    return ideal_gb([change_ring(f, ring) for f in eliminated.polys()], ring, cert)


def ideal_quotient(I: Sequence[Poly], J, ring: RingDescriptor,
                   cert: Optional[Certificate] = None) -> ReducedGB:
    """(I : J) as the intersection of (I : g) over the generators g of J"""
    if isinstance(J, Poly) or not isinstance(J, (list, tuple)):
        J = [J]
    result: Optional[ReducedGB] = None
    for g in J:
        if not g:
            continue
        meet = intersect_ideals(I, [g], ring, cert)
        part = ideal_gb([f.exquo(g) for f in meet.polys()], ring, cert)
        result = part if result is None else intersect_ideals(result.polys(), part.polys(), ring, cert)
    return result if result is not None else unit_ideal(ring)


def ideal_ops(op: str, I: Sequence[Poly], J, ring: RingDescriptor,
              cert: Optional[Certificate] = None) -> ReducedGB:
    """sum | product | intersect | quotient of ideals given by generators"""
    if op == 'sum':
        return ideal_gb(list(I) + list(J), ring, cert)
    if op == 'product':
        return ideal_gb([f * g for f in I for g in J], ring, cert)
    if op == 'intersect':
        return intersect_ideals(I, J, ring, cert)
    if op == 'quotient':
        return ideal_quotient(I, J, ring, cert)
    raise ValueError(f"unknown ideal operation: {op}")


# ====================
# Syzygies and lifting
# ====================

def _augmented_gb(A: PolyMatrix, cert: Optional[Certificate]) -> ReducedGB:
    """Basis of the columns of [A; I] with the rows of A dominant (POT)"""
    ring = A.ring
    one, zero = ring.one, ring.zero
    columns = []
    for j in range(A.cols):
        bottom = [one if k == j else zero for k in range(A.cols)]
        columns.append(A.column(j) + bottom)
    order = ModuleOrder.for_ring(ring, rule=POT)
    return buchberger(columns, ring, A.rows + A.cols, order=order, cert=cert)


def syzygies(A: PolyMatrix, cert: Optional[Certificate] = None) -> PolyMatrix:
    """Matrix whose columns generate ker(A: R^cols -> R^rows)"""
    gb = _augmented_gb(A, cert)
    syz = [v[A.rows:] for v, lt in zip(gb.vectors(), gb.leads) if lt[0] >= A.rows]
    logger.debug(f"syzygies: {A.rows}x{A.cols} matrix has {len(syz)} syzygy generators")
    return PolyMatrix.from_columns(A.ring, syz, A.cols)


def lift(A: PolyMatrix, B: PolyMatrix, cert: Optional[Certificate] = None) -> PolyMatrix:
    """
    W with A W = B

    Raises:
        NotAHomomorphism: some column of B is not in the column module of A
    """
    if A.rows != B.rows:
        raise ValueError(f"lift: {A.rows} rows vs {B.rows} rows")
    gb = _augmented_gb(A, cert)
    ring = A.ring
    base = ring.ring
    solution = []
    for j in range(B.cols):
        target = B.column(j) + [ring.zero] * A.cols
        r = from_vec(reduce(to_vec(target), gb.generators, gb.leads, gb.order, base),
                     A.rows + A.cols, ring)
        if any(r[:A.rows]):
            raise NotAHomomorphism(f"column {j} is not in the image")
        solution.append([-w for w in r[A.rows:]])
    return PolyMatrix.from_columns(ring, solution, A.cols)
