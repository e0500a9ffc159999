# tests/unit/smod/test_fpmod.py
"""Unit tests for finitely presented modules, maps and invariants"""
import random

import pytest

from app.certificate import Certificate
from app.errors import AmbientMismatch, NotAHomomorphism
from app.fpmod import (
    FPModule,
    Submodule,
    annihilator,
    colon_and_product,
    compose,
    cokernel,
    cyclic_module,
    direct_sum,
    fingerprint,
    fitting_ideal,
    free_module,
    identity_map,
    image,
    is_compatible,
    is_injective,
    is_surjective,
    is_zero,
    kernel,
    lift_map,
    map_add,
    present,
    prune,
    quotient_module,
    sub_ops,
    tensor_product,
    zero_map,
)
from app.groebner import ideal_gb, in_submodule
from app.matrix import PolyMatrix


@pytest.fixture
def cyclic(polys):
    """cyclic(ring, 'f', ...) -> R/(f, ...)"""
    def build(ring, *texts):
        return cyclic_module(ring, polys(ring, *texts))
    return build


@pytest.mark.unit
class TestConstruction:
    """Presentations"""

    def test_rows_must_match(self, qx):
        with pytest.raises(ValueError):
            FPModule(qx, 2, PolyMatrix.zeros(qx, 1, 1))

    def test_free_module(self, qx):
        F = free_module(qx, 3)
        assert F.gens == 3 and F.presentation.cols == 0
        assert not is_zero(F)

    def test_zero_module(self, qx, cyclic):
        assert is_zero(cyclic(qx, "x1", "x1 - 1"))
        assert is_zero(free_module(qx, 0))

    def test_direct_sum(self, qx, cyclic):
        S = direct_sum(cyclic(qx, "x1"), cyclic(qx, "x2"))
        assert S.gens == 2
        assert S.presentation == present(PolyMatrix.from_rows(
            qx, [[qx.gens()['x1'], qx.zero], [qx.zero, qx.gens()['x2']]])).presentation

    def test_prune(self, qx, matrix):
        # coker [[1, x1], [x2, 0]] ~ R/(x1*x2)
        L = present(matrix(qx, [["1", "x1"], ["x2", "0"]]))
        P = prune(L)
        assert P.gens == 1
        assert fingerprint(P) == fingerprint(L)

    def test_prune_registers_unit(self, qux, matrix):
        c = Certificate(qux.param_names)
        P = prune(present(matrix(qux, [["u1", "x1"]])), c)
        assert P.gens == 0
        assert "u1" in c


@pytest.mark.unit
class TestMaps:
    """Homomorphisms between presented modules"""

    def test_lift_map(self, qx, cyclic, matrix):
        L, M = cyclic(qx, "x1^2"), cyclic(qx, "x1")
        v = lift_map(matrix(qx, [["1"]]), L, M)
        assert is_compatible(v)
        assert is_surjective(v)
        assert not is_injective(v)

    def test_not_a_homomorphism(self, qx, cyclic, matrix):
        with pytest.raises(NotAHomomorphism):
            lift_map(matrix(qx, [["1"]]), cyclic(qx, "x1"), cyclic(qx, "x1^2"))

    def test_multiplication_is_injective_on_domain(self, qx, matrix):
        F = free_module(qx, 1)
        v = lift_map(matrix(qx, [["x1"]]), F, F)
        assert is_injective(v)
        assert not is_surjective(v)

    def test_kernel_image_cokernel(self, qx, cyclic, matrix):
        # R -> R/(x1*x2), 1 -> x1: kernel (x2), cokernel R/(x1)
        v = lift_map(matrix(qx, [["x1"]]), free_module(qx, 1), cyclic(qx, "x1*x2"))
        K = kernel(v).as_module()
        assert fingerprint(K) == fingerprint(free_module(qx, 1))
        kernel_ideal = ideal_gb([g[0] for g in kernel(v).generators], qx)
        assert kernel_ideal == ideal_gb([qx.gens()['x2']], qx)
        assert fingerprint(cokernel(v)) == fingerprint(cyclic(qx, "x1"))
        assert fingerprint(image(v).as_module()) == fingerprint(cyclic(qx, "x2"))

    def test_compose_and_add(self, qx, cyclic):
        L = cyclic(qx, "x1")
        one = identity_map(L)
        assert compose(one, one) == one
        assert map_add(one, zero_map(L, L)).v0 == one.v0
        assert is_compatible(map_add(one, one))


@pytest.mark.unit
class TestSubmodules:
    """Submodule calculus"""

    def test_as_module(self, qx, polys):
        F = free_module(qx, 1)
        S = Submodule(F, (tuple(polys(qx, "x1")), tuple(polys(qx, "x2"))))
        N = S.as_module()
        # (x1, x2) has the single Koszul relation
        assert N.gens == 2 and N.presentation.cols == 1

    def test_is_zero_in_ambient(self, qx, cyclic, polys):
        L = cyclic(qx, "x1")
        assert Submodule(L, (tuple(polys(qx, "x1*x2")),)).is_zero()
        assert not Submodule(L, (tuple(polys(qx, "x2")),)).is_zero()

    def test_quotient_module(self, qx, polys):
        F = free_module(qx, 1)
        S = Submodule(F, (tuple(polys(qx, "x1")),))
        assert fingerprint(quotient_module(F, S)) == fingerprint(cyclic_module(qx, polys(qx, "x1")))

    def test_ambient_mismatch(self, qx, polys):
        S = Submodule(free_module(qx, 1), (tuple(polys(qx, "x1")),))
        with pytest.raises(AmbientMismatch):
            quotient_module(free_module(qx, 2), S)
        T = Submodule(free_module(qx, 2), (tuple(polys(qx, "x1", "0")),))
        with pytest.raises(AmbientMismatch):
            sub_ops('sum', S, T)

    def test_sum_and_intersection(self, qx, polys):
        F = free_module(qx, 1)
        M = Submodule(F, (tuple(polys(qx, "x1")),))
        N = Submodule(F, (tuple(polys(qx, "x2")),))
        total = sub_ops('sum', M, N)
        assert len(total.generators) == 2
        meet = sub_ops('intersect', M, N)
        assert ideal_gb([g[0] for g in meet.generators], qx) == ideal_gb(polys(qx, "x1*x2"), qx)


def elementary(ring, size, i, j, f):
    """Identity with f at (i, j); a unit constant when i == j"""
    grid = [[ring.one if r == c else ring.zero for c in range(size)] for r in range(size)]
    grid[i][j] = f
    return PolyMatrix.from_rows(ring, grid, size)


def random_presentation(ring, polys, rng, entries):
    cols = rng.randint(1, 3)
    rows = [polys(ring, *(rng.choice(entries) for _ in range(cols))) for _ in range(2)]
    return PolyMatrix.from_rows(ring, rows, cols)


@pytest.mark.unit
class TestInvariants:
    """Annihilators, Fitting ideals, fingerprints"""

    def test_annihilator_of_diagonal(self, qx, matrix, polys):
        L = present(matrix(qx, [["x1", "0"], ["0", "x2"]]))
        assert annihilator(L) == ideal_gb(polys(qx, "x1*x2"), qx)

    def test_annihilator_parametric(self, qux, matrix, polys):
        c = Certificate(qux.param_names)
        L = present(matrix(qux, [["u1*x1", "0"], ["0", "x2"]]))
        assert annihilator(L, c) == ideal_gb(polys(qux, "x1*x2"), qux)
        assert "u1" in c

    def test_annihilator_of_free(self, qx):
        assert annihilator(free_module(qx, 2)).is_zero()

    def test_fitting_ideals(self, qx, matrix, polys):
        L = present(matrix(qx, [["x1", "0"], ["0", "x2"]]))
        assert fitting_ideal(L, 0, None) == ideal_gb(polys(qx, "x1*x2"), qx)
        assert fitting_ideal(L, 1) == ideal_gb(polys(qx, "x1", "x2"), qx)
        assert fitting_ideal(L, 2).is_unit()

    def test_fingerprint_ignores_presentation(self, qx, matrix, cyclic):
        # R/(x1) presented with a redundant generator
        L = present(matrix(qx, [["x1", "0"], ["0", "1"]]))
        assert fingerprint(L) == fingerprint(cyclic(qx, "x1"))

    @pytest.mark.parametrize("seed", range(12))
    def test_fitting_ideals_ignore_unimodular_change(self, qx, polys, seed):
        rng = random.Random(seed)
        A = random_presentation(qx, polys, rng, ["0", "x1", "x2", "x1*x2 - 1", "x1^2", "x2 + 1"])
        f = polys(qx, rng.choice(["x1", "x2", "x1 - x2", "1"]))[0]
        P = elementary(qx, 2, 0, 1, f) @ elementary(qx, 2, 1, 0, polys(qx, "x2 - 2")[0])
        if A.cols > 1:
            Q = elementary(qx, A.cols, A.cols - 1, 0, f)
        else:
            Q = elementary(qx, 1, 0, 0, polys(qx, "-3")[0])
        L, M = present(A), present(P @ A @ Q)
        for j in range(3):
            assert fitting_ideal(L, j) == fitting_ideal(M, j)
        assert fingerprint(L) == fingerprint(M)

    @pytest.mark.parametrize("seed", range(12))
    def test_annihilator_between_fitting_and_its_radical(self, qx, polys, seed):
        # Fitt_0 is inside Ann, and Ann^g is inside Fitt_0 for g generators
        rng = random.Random(seed)
        L = present(random_presentation(qx, polys, rng, ["0", "x1", "x2", "x1*x2", "x1^2 - x2", "x2^2"]))
        fitt0, ann = fitting_ideal(L, 0), annihilator(L)
        assert all(in_submodule([f], ann) for f in fitt0.polys())
        assert all(in_submodule([g ** L.gens], fitt0) for g in ann.polys())

    def test_fingerprint_separates(self, qx, cyclic):
        assert fingerprint(cyclic(qx, "x1")) != fingerprint(cyclic(qx, "x1^2"))

    def test_fingerprint_fields(self, qx, cyclic):
        fp = fingerprint(cyclic(qx, "x1", "x2"))
        assert fp.dim == 0 and not fp.is_zero
        assert "dim=0" in fp.describe()
        zero = fingerprint(cyclic(qx, "1"))
        assert zero.is_zero and zero.dim == -1

    def test_colon_and_product(self, qx, cyclic, polys):
        # L = R/(x1^2), I = (x1): (0 : I) = (x1)/(x1^2), I L = (x1)/(x1^2)
        L = cyclic(qx, "x1^2")
        colon, product = colon_and_product(L, polys(qx, "x1"))
        assert isinstance(colon, FPModule) and isinstance(product, Submodule)
        assert fingerprint(colon) == fingerprint(cyclic(qx, "x1"))
        assert fingerprint(product.as_module()) == fingerprint(cyclic(qx, "x1"))

    def test_tensor_product(self, qx, cyclic):
        T = tensor_product(cyclic(qx, "x1"), cyclic(qx, "x2"))
        assert fingerprint(T) == fingerprint(cyclic(qx, "x1", "x2"))
