"""
Randomized verification campaigns

Purpose: For one theorem and one set of inputs, run the parametric side
once over Q(u)[x] (which fills the certificate), then for each trial pick
a certified alpha, specialize the parametric results and recompute the
same quantities from the specialized inputs over Q[x]. The two sides share
no intermediate results.

Comparison rules:
- modules:  fingerprint equality
- ideals:   reduced Groebner basis equality
- numbers:  rank, dim, proj.dim, grade and exactness flags compare exactly

Trial failures are recorded, never raised. Records are ordered by trial
index, so running trials on a thread pool never changes the report.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Type

from . import config
from .certificate import Certificate
from .errors import ExhaustedSampling, InputError, SmodError
from .fileio import Loaded, parse_inputs
from .fpmod import (
    FPModule,
    ModuleMap,
    Submodule,
    annihilator,
    cokernel,
    colon_submodule,
    direct_sum,
    fingerprint,
    image,
    is_zero,
    kernel,
    lift_map,
    product_submodule,
    quotient_module,
    sub_ops,
)
from .groebner import ReducedGB, dim_ideal, ideal_gb, module_gb
from .homology import ext, grade_module, grade_on, proj_dim, tor
from .matrix import PolyMatrix, register_entries
from .models import Report, Summary, TrialRecord, VerificationTask
from .polyring import RingDescriptor
from .resolve import (
    INFINITY,
    FreeComplex,
    be_exactness,
    complex_homology,
    determinantal_ideal,
    free_complex_homology,
    ideal_of_map,
    rank_matrix,
)
from .scalars import SubstPoint
from .specialize import (
    sample_alpha,
    specialize_complex,
    specialize_gb,
    specialize_map,
    specialize_module,
    specialize_submodule,
    subst_matrix,
    subst_poly,
)

logger = logging.getLogger(__name__)


# ====================
# Outcomes
# ====================

@dataclass
class Checks:
    """Named comparisons collected during one trial"""
    items: List[Tuple[str, bool, str]] = field(default_factory=list)

    def expect(self, label: str, ok: bool, mismatch: str = "") -> None:
        self.items.append((label, bool(ok), mismatch))

    def equal(self, label: str, parametric: Any, specialized: Any) -> None:
        ok = parametric == specialized
        self.expect(label, ok, "" if ok else f"{_text(parametric)} vs {_text(specialized)}")

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.items)

    def detail(self) -> str:
        parts = []
        for label, ok, mismatch in self.items:
            parts.append(f"{label}: ok" if ok else f"{label}: MISMATCH {mismatch}".rstrip())
        return "; ".join(parts)


def _text(value: Any) -> str:
    if hasattr(value, 'describe'):
        return value.describe()
    if isinstance(value, ReducedGB):
        return "(" + "; ".join(value.format_lines()) + ")"
    return str(value)


# ====================
# Theorem registry
# ====================

THEOREMS: Dict[str, Type['Theorem']] = {}


def register(cls: Type['Theorem']) -> Type['Theorem']:
    THEOREMS[cls.theorem_id] = cls
    return cls


def _register_module(L: FPModule, cert: Certificate) -> None:
    register_entries(L.presentation, cert)


class Theorem:
    """
    One preservation statement

    Subclasses set theorem_id and kinds, compute the parametric side in
    prepare() (registering into self.cert) and compare in trial().
    """
    theorem_id = ''
    kinds: Tuple[str, ...] = ()

    def __init__(self, inputs: Sequence[Loaded], ring: RingDescriptor):
        found = tuple(item.kind for item in inputs)
        if found != self.kinds:
            raise InputError(f"{self.theorem_id} expects inputs {', '.join(self.kinds)}, "
                             f"got {', '.join(found) or 'nothing'}")
        self.ring = ring
        self.values = [item.value for item in inputs]
        self.cert = Certificate(ring.param_names)
        for value in self.values:
            self._register_input(value)
        self.prepare()

    def _register_input(self, value: Any) -> None:
        if isinstance(value, FPModule):
            _register_module(value, self.cert)
        elif isinstance(value, PolyMatrix):
            register_entries(value, self.cert)
        elif isinstance(value, Submodule):
            _register_module(value.ambient, self.cert)
            register_entries(value.matrix(), self.cert)
        elif isinstance(value, ModuleMap):
            for m in (value.v0, value.v1, value.source.presentation, value.target.presentation):
                register_entries(m, self.cert)
        elif isinstance(value, FreeComplex):
            for phi in value.maps:
                register_entries(phi, self.cert)
        elif isinstance(value, list):
            for f in value:
                for c in f.itercoeffs():
                    if self.ring.is_parametric:
                        self.cert.register_denominator(c)

    def prepare(self) -> None:
        pass

    def trial(self, alpha: SubstPoint, cert: Certificate) -> Checks:
        raise NotImplementedError

    # Helpers shared by the statements

    def spec_fp(self, L: FPModule, alpha: SubstPoint, cert: Certificate):
        """Fingerprint of a parametric result after substitution"""
        return fingerprint(specialize_module(L, alpha, cert))

    def spec_ideal(self, gens, alpha: SubstPoint, cert: Certificate) -> List:
        return [subst_poly(f, self.ring, alpha, cert) for f in gens]


def same_in_ambient(S: Submodule, T: Submodule) -> bool:
    """S and T have the same image in their (common) ambient module"""
    L = S.ambient
    rels = L.relations
    return (module_gb([list(g) for g in S.generators] + rels, L.ring, L.gens)
            == module_gb([list(g) for g in T.generators] + rels, L.ring, L.gens))


@register
class ExactnessPreserved(Theorem):
    """An exact free complex stays exact after substitution"""
    theorem_id = 'exactness_1_5'
    kinds = ('complex',)

    def prepare(self):
        self.report = be_exactness(self.values[0], self.cert)

    def trial(self, alpha, cert):
        checks = Checks()
        C_alpha = specialize_complex(self.values[0], alpha, cert)
        report = be_exactness(C_alpha)
        checks.equal("exact", self.report.overall, report.overall)
        checks.equal("ranks and depths", self.report.summary(), report.summary())
        return checks


@register
class RankPreserved(Theorem):
    """rank A_alpha = rank A and I(A)_alpha = I(A_alpha)"""
    theorem_id = 'rank_1_4'
    kinds = ('matrix',)

    def prepare(self):
        self.rank, self.ideal = ideal_of_map(self.values[0], self.cert)

    def trial(self, alpha, cert):
        checks = Checks()
        A_alpha = subst_matrix(self.values[0], alpha, cert)
        checks.equal("rank", self.rank, rank_matrix(A_alpha))
        checks.equal("determinantal ideal", specialize_gb(self.ideal, alpha, cert),
                     determinantal_ideal(A_alpha, self.rank))
        return checks


@register
class ShortExactSequence(Theorem):
    """0 -> N -> L -> L/N -> 0 stays exact"""
    theorem_id = 'ses_2_4'
    kinds = ('submodule',)

    def prepare(self):
        S: Submodule = self.values[0]
        L = S.ambient
        N = S.as_module(self.cert)
        Q = quotient_module(L, S)
        ring = L.ring
        self.inclusion = lift_map(S.matrix(), N, L, self.cert)
        self.projection = lift_map(PolyMatrix.identity(ring, L.gens), L, Q, self.cert)
        for M in (N, Q):
            _register_module(M, self.cert)
        register_entries(self.inclusion.v1, self.cert)
        register_entries(self.projection.v1, self.cert)
        homology = complex_homology([self.projection, self.inclusion], self.cert)
        self.exact = all(is_zero(H) for H in homology)

    def trial(self, alpha, cert):
        checks = Checks()
        incl = specialize_map(self.inclusion, alpha, cert)
        proj = specialize_map(self.projection, alpha, cert)
        homology = complex_homology([proj, incl])
        checks.equal("parametric sequence exact", True, self.exact)
        for i, H in enumerate(homology):
            checks.equal(f"H_{i} zero", True, is_zero(H))
        return checks


@register
class KernelImageCokernel(Theorem):
    """Ker, Im and Coker commute with substitution"""
    theorem_id = 'kic_2_5'
    kinds = ('map',)

    def prepare(self):
        v: ModuleMap = self.values[0]
        self.parts = {
            'kernel': kernel(v, self.cert).as_module(self.cert),
            'image': image(v).as_module(self.cert),
            'cokernel': cokernel(v),
        }
        for M in self.parts.values():
            _register_module(M, self.cert)

    def trial(self, alpha, cert):
        checks = Checks()
        v_alpha = specialize_map(self.values[0], alpha, cert)
        direct = {
            'kernel': kernel(v_alpha).as_module(),
            'image': image(v_alpha).as_module(),
            'cokernel': cokernel(v_alpha),
        }
        for name, M in self.parts.items():
            checks.equal(name, self.spec_fp(M, alpha, cert), fingerprint(direct[name]))
        return checks


@register
class ProjDimPreserved(Theorem):
    theorem_id = 'projdim_2_6'
    kinds = ('module',)

    def prepare(self):
        self.pd = proj_dim(self.values[0], self.cert)

    def trial(self, alpha, cert):
        checks = Checks()
        checks.equal("proj.dim", self.pd, proj_dim(specialize_module(self.values[0], alpha, cert)))
        return checks


@register
class HomologyPreserved(Theorem):
    """H_i of a free complex commutes with substitution"""
    theorem_id = 'homology_2_7'
    kinds = ('complex',)

    def prepare(self):
        self.homology = free_complex_homology(self.values[0], self.cert)
        for H in self.homology:
            _register_module(H, self.cert)

    def trial(self, alpha, cert):
        checks = Checks()
        direct = free_complex_homology(specialize_complex(self.values[0], alpha, cert))
        for i, (H, H_alpha) in enumerate(zip(self.homology, direct)):
            checks.equal(f"H_{i}", self.spec_fp(H, alpha, cert), fingerprint(H_alpha))
        return checks


@register
class DirectSumPreserved(Theorem):
    theorem_id = 'dsum_3_1'
    kinds = ('module', 'module')

    def prepare(self):
        self.total = direct_sum(*self.values)

    def trial(self, alpha, cert):
        checks = Checks()
        L_alpha, M_alpha = (specialize_module(M, alpha, cert) for M in self.values)
        specialized = specialize_module(self.total, alpha, cert)
        direct = direct_sum(L_alpha, M_alpha)
        checks.equal("presentation", specialized.presentation, direct.presentation)
        checks.equal("fingerprint", fingerprint(specialized), fingerprint(direct))
        return checks


@register
class SubmoduleOperations(Theorem):
    """(M cap N), (M + N) and L/M commute with substitution"""
    theorem_id = 'subops_3_2'
    kinds = ('submodule', 'submodule')

    def prepare(self):
        M, N = self.values
        self.sum = sub_ops('sum', M, N, self.cert)
        self.meet = sub_ops('intersect', M, N, self.cert)
        self.modules = {
            'sum': self.sum.as_module(self.cert),
            'intersection': self.meet.as_module(self.cert),
            'quotient': sub_ops('quotient_module', M, N, self.cert),
        }
        for L in self.modules.values():
            _register_module(L, self.cert)
        register_entries(self.meet.matrix(), self.cert)

    def trial(self, alpha, cert):
        checks = Checks()
        M_alpha, N_alpha = (specialize_submodule(S, alpha, cert) for S in self.values)
        direct_sum_ = sub_ops('sum', M_alpha, N_alpha)
        direct_meet = sub_ops('intersect', M_alpha, N_alpha)
        direct = {
            'sum': direct_sum_.as_module(),
            'intersection': direct_meet.as_module(),
            'quotient': sub_ops('quotient_module', M_alpha, N_alpha),
        }
        for name, L in self.modules.items():
            checks.equal(name, self.spec_fp(L, alpha, cert), fingerprint(direct[name]))
        checks.expect("intersection in ambient",
                      same_in_ambient(specialize_submodule(self.meet, alpha, cert), direct_meet))
        return checks


@register
class GeneratorsSpecialize(Theorem):
    """GB(substituted parametric GB) = GB(substituted generators)"""
    theorem_id = 'gens_3_3'
    kinds = ('ideal',)

    def prepare(self):
        self.gb = ideal_gb(self.values[0], self.ring, self.cert)

    def trial(self, alpha, cert):
        checks = Checks()
        target = self.ring.specialized()
        direct = ideal_gb(self.spec_ideal(self.values[0], alpha, cert), target)
        checks.equal("ideal", specialize_gb(self.gb, alpha, cert), direct)
        checks.equal("dim", dim_ideal(self.gb), dim_ideal(direct))
        return checks


@register
class AnnihilatorDimension(Theorem):
    """Ann L_alpha = (Ann L)_alpha and dim L_alpha = dim L"""
    theorem_id = 'anndim_3_4'
    kinds = ('module',)

    def prepare(self):
        self.ann = annihilator(self.values[0], self.cert)
        self.dim = dim_ideal(self.ann)

    def trial(self, alpha, cert):
        checks = Checks()
        ann_alpha = annihilator(specialize_module(self.values[0], alpha, cert))
        checks.equal("annihilator", specialize_gb(self.ann, alpha, cert), ann_alpha)
        checks.equal("dim", self.dim, dim_ideal(ann_alpha))
        return checks


@register
class ColonAndProduct(Theorem):
    """(0_L : I) and I L commute with substitution"""
    theorem_id = 'colon_3_6'
    kinds = ('module', 'ideal')

    def prepare(self):
        L, I = self.values
        colon, product = colon_submodule(L, I, self.cert), product_submodule(L, I)
        self.colon, self.product = colon, product
        self.modules = {'colon': colon.as_module(self.cert), 'product': product.as_module(self.cert)}
        for M in self.modules.values():
            _register_module(M, self.cert)
        register_entries(colon.matrix(), self.cert)

    def trial(self, alpha, cert):
        checks = Checks()
        L, I = self.values
        L_alpha = specialize_module(L, alpha, cert)
        I_alpha = self.spec_ideal(I, alpha, cert)
        colon, product = colon_submodule(L_alpha, I_alpha), product_submodule(L_alpha, I_alpha)
        direct = {'colon': colon.as_module(), 'product': product.as_module()}
        for name, M in self.modules.items():
            checks.equal(name, self.spec_fp(M, alpha, cert), fingerprint(direct[name]))
        checks.expect("colon in ambient",
                      same_in_ambient(specialize_submodule(self.colon, alpha, cert), colon))
        checks.expect("product in ambient",
                      same_in_ambient(specialize_submodule(self.product, alpha, cert), product))
        return checks


class _FunctorPreserved(Theorem):
    """Tor_i / Ext^i for i = 0..n"""
    kinds = ('module', 'module')
    functor: Callable = None

    def prepare(self):
        L, M = self.values
        self.results = [type(self).functor(L, M, i, self.cert) for i in range(self.ring.n + 1)]
        for T in self.results:
            _register_module(T, self.cert)

    def trial(self, alpha, cert):
        checks = Checks()
        L_alpha, M_alpha = (specialize_module(X, alpha, cert) for X in self.values)
        name = 'Tor' if type(self).functor is tor else 'Ext'
        for i, T in enumerate(self.results):
            direct = type(self).functor(L_alpha, M_alpha, i)
            checks.equal(f"{name}_{i}", self.spec_fp(T, alpha, cert), fingerprint(direct))
        return checks


@register
class TorPreserved(_FunctorPreserved):
    theorem_id = 'tor_4_2'
    functor = tor


@register
class ExtPreserved(_FunctorPreserved):
    theorem_id = 'ext_4_3'
    functor = ext


@register
class GradePreserved(Theorem):
    """grade(I_alpha, L_alpha) = grade(I, L) and grade L_alpha = grade L"""
    theorem_id = 'grade_4_4'
    kinds = ('ideal', 'module')

    def prepare(self):
        I, L = self.values
        self.grade = grade_on(I, L, self.cert)
        self.module_grade = None if is_zero(L) else grade_module(L, self.cert)

    def trial(self, alpha, cert):
        checks = Checks()
        I, L = self.values
        L_alpha = specialize_module(L, alpha, cert)
        checks.equal("grade(I, L)", _grade_text(self.grade),
                     _grade_text(grade_on(self.spec_ideal(I, alpha, cert), L_alpha)))
        if self.module_grade is not None:
            checks.equal("grade L", self.module_grade, grade_module(L_alpha))
        return checks


def _grade_text(value) -> str:
    return "inf" if value == INFINITY else str(value)


@register
class PerfectionPreserved(Theorem):
    """L perfect implies L_alpha perfect; grade and proj.dim agree"""
    theorem_id = 'perfect_4_5'
    kinds = ('module',)

    def prepare(self):
        L = self.values[0]
        self.grade = grade_module(L, self.cert)
        self.pd = proj_dim(L, self.cert)

    def trial(self, alpha, cert):
        checks = Checks()
        L_alpha = specialize_module(self.values[0], alpha, cert)
        grade, pd = grade_module(L_alpha), proj_dim(L_alpha)
        checks.equal("grade", self.grade, grade)
        checks.equal("proj.dim", self.pd, pd)
        checks.expect("perfect implies perfect", self.grade != self.pd or grade == pd,
                      f"grade {grade} vs proj.dim {pd}")
        return checks


# ====================
# Campaigns
# ====================

def _run_trial(check: Theorem, task: VerificationTask, index: int,
               forced: Optional[SubstPoint], timing: bool) -> TrialRecord:
    start = time.perf_counter()
    cert = check.cert.copy()
    alpha: Optional[SubstPoint] = forced
    try:
        if alpha is None:
            alpha = sample_alpha(task.seed + index, check.cert, task.bound)
        good = check.cert.is_good(alpha)
        if not good:
            logger.warning(f"trial {index}: alpha {alpha} is not certified "
                           f"(vanishing: {', '.join(check.cert.vanishing_factors(alpha))})")
        checks = check.trial(alpha, cert)
        passed, detail = checks.passed, checks.detail()
    except ExhaustedSampling as exc:
        good, passed, detail = False, False, f"ExhaustedSampling: {exc}"
    except SmodError as exc:
        good = alpha is not None and check.cert.is_good(alpha)
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    if alpha is not None and not good:
        vanishing = ", ".join(check.cert.vanishing_factors(alpha))
        detail = f"{detail}; alpha not certified (vanishing: {vanishing})"
    elapsed = int((time.perf_counter() - start) * 1000) if timing else 0
    if not passed:
        logger.warning(f"{task.theorem_id} trial {index} failed: {detail}")
    else:
        logger.info(f"{task.theorem_id} trial {index} passed at alpha {alpha}")
    return TrialRecord(
        index=index,
        alpha=alpha.to_strings() if alpha is not None else [],
        passed=passed,
        detail=detail,
        cert_good=good,
        cert_size=len(cert),
        cert_factors=cert.to_strings(),
        ms=elapsed,
    )


def build_theorem(task: VerificationTask) -> Theorem:
    ring, objects = parse_inputs([Path(p) for p in task.inputs])
    inputs = list(objects.values())
    return THEOREMS[task.theorem_id](inputs, ring)


def run_verification(task: VerificationTask, workers: Optional[int] = None,
                     timing: Optional[bool] = None) -> Report:
    """
    Run a campaign and assemble its report

    Raises:
        InputError: inputs do not parse or do not fit the theorem
    """
    workers = workers if workers is not None else config.WORKERS
    timing = timing if timing is not None else config.REPORT_TIMING
    logger.info(f"verify {task.theorem_id}: {task.trials} trials, seed {task.seed}, bound {task.bound}")

    check = build_theorem(task)
    forced = None
    if task.alpha is not None:
        forced = SubstPoint.parse(",".join(task.alpha), check.ring.m)

    def one(index: int) -> TrialRecord:
        return _run_trial(check, task, index, forced, timing)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(one, range(task.trials)))
    else:
        records = [one(k) for k in range(task.trials)]
    records.sort(key=lambda r: r.index)

    passed = sum(1 for r in records if r.passed)
    summary = Summary(
        passed=passed,
        failed=len(records) - passed,
        distinct_certificates=len({tuple(r.cert_factors) for r in records}),
    )
    logger.info(f"verify {task.theorem_id}: {passed}/{len(records)} trials passed")
    return Report(task=task, trials=records, summary=summary)
