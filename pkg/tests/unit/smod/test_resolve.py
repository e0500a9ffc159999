# tests/unit/smod/test_resolve.py
"""Unit tests for free complexes, exactness and resolutions"""
import random

import pytest

from app.certificate import Certificate
from app.errors import CapExceeded, NotAComplex
from app.fpmod import cyclic_module, fingerprint, free_module, is_zero, lift_map, present
from app.matrix import PolyMatrix
from app.resolve import (
    INFINITY,
    FreeComplex,
    be_exactness,
    complex_homology,
    depth_of,
    determinantal_ideal,
    free_complex_homology,
    free_resolution,
    ideal_of_map,
    koszul_complex,
    rank_matrix,
    resolution_prefix,
    trim_columns,
)
from app.groebner import ideal_gb
from app.polyring import poly_parse


def poly_pair(ring, texts):
    return [poly_parse(t, ring) for t in texts]


@pytest.mark.unit
class TestFreeComplex:
    """Shapes and the complex property"""

    def test_shape_checked(self, qx):
        with pytest.raises(ValueError):
            FreeComplex(qx, (1, 2), (PolyMatrix.zeros(qx, 2, 1),))

    def test_not_a_complex(self, qx, matrix):
        C = FreeComplex(qx, (1, 1, 1), (matrix(qx, [["x1"]]), matrix(qx, [["x2"]])))
        with pytest.raises(NotAComplex):
            C.check_complex()

    def test_koszul_shapes(self, qx3, polys):
        K = koszul_complex(polys(qx3, "x1", "x2", "x3"), qx3)
        assert K.ranks == (1, 3, 3, 1)
        K.check_complex()

    def test_phi_outside_range(self, qx, polys):
        K = koszul_complex(polys(qx, "x1", "x2"), qx)
        assert K.phi(0) is None and K.phi(3) is None
        assert K.phi(2).cols == 1


@pytest.mark.unit
class TestRankAndMinors:
    """rank, I_t and depth"""

    def test_rank_and_ideal(self, qx, matrix, polys):
        A = matrix(qx, [["x1", "x2"], ["x1^2", "x1*x2"]])
        r, I = ideal_of_map(A)
        assert r == 1
        assert I == ideal_gb(polys(qx, "x1", "x2"), qx)

    def test_determinantal_edges(self, qx, matrix):
        A = matrix(qx, [["x1", "x2"]])
        assert determinantal_ideal(A, 0).is_unit()
        assert determinantal_ideal(A, 2).is_zero()

    def test_parametric_rank(self, qux, matrix):
        c = Certificate(qux.param_names)
        A = matrix(qux, [["u1*x1", "x2"], ["x1", "x2"]])
        assert rank_matrix(A, c) == 2
        assert "u1 - 1" in c

    def test_depth(self, qx, polys):
        assert depth_of(ideal_gb(polys(qx, "x1", "x2"), qx)) == 2
        assert depth_of(ideal_gb(polys(qx, "1"), qx)) == INFINITY
        assert depth_of(ideal_gb([], qx)) == 0


@pytest.mark.unit
@pytest.mark.oracle
class TestExactness:
    """Buchsbaum-Eisenbud criterion against Koszul complexes"""

    def test_regular_sequence_is_exact(self, qx3, polys):
        report = be_exactness(koszul_complex(polys(qx3, "x1", "x2", "x3"), qx3))
        assert report.overall
        assert [r.depth for r in report.records] == [3, 3, 3]

    def test_parametric_point(self, quux, polys):
        K = koszul_complex(polys(quux, "x1 - u1", "x2 - u2"), quux)
        report = be_exactness(K, Certificate(quux.param_names))
        assert report.overall

    def test_non_regular_sequence(self, qx, polys):
        report = be_exactness(koszul_complex(polys(qx, "x1*x2", "x1"), qx))
        assert not report.overall
        # depth of I(phi_2) = (x1*x2, x1) = (x1) is 1 < 2
        assert report.records[1].passed_depth is False

    def test_report_dict(self, qx, polys):
        data = be_exactness(koszul_complex(polys(qx, "x1", "x2"), qx)).to_dict()
        assert data['overall'] is True
        assert data['records'][0]['rank_F'] == 2

    def test_unit_depth_serialised(self, qx, polys):
        data = be_exactness(koszul_complex(polys(qx, "1"), qx)).to_dict()
        assert data['records'][0]['depth'] == "inf"


@pytest.mark.unit
class TestResolutions:
    """Iterated syzygies"""

    def test_trim_columns(self, qx, matrix):
        A = matrix(qx, [["x1", "0", "x1*x2", "x2"]])
        assert trim_columns(A).cols == 2

    def test_complete_intersection(self, qx, polys):
        F = free_resolution(cyclic_module(qx, polys(qx, "x1", "x2")))
        assert F.ranks == (1, 2, 1)
        F.check_complex()

    def test_free_module_has_empty_resolution(self, qx):
        F = free_resolution(free_module(qx, 2))
        assert F.length == 0 and F.ranks == (2,)

    def test_prefix_never_raises(self, qx3, polys):
        L = cyclic_module(qx3, polys(qx3, "x1", "x2", "x3"))
        assert resolution_prefix(L, 1).length == 1
        assert resolution_prefix(L, 10).ranks == (1, 3, 3, 1)

    def test_cap_exceeded(self, qx3, polys):
        L = cyclic_module(qx3, polys(qx3, "x1", "x2", "x3"))
        with pytest.raises(CapExceeded) as exc:
            free_resolution(L, cap=2)
        assert exc.value.partial.length == 2


@pytest.mark.unit
class TestHomology:
    """Homology of complexes of presented modules"""

    def test_koszul_homology(self, qx, polys):
        H = free_complex_homology(koszul_complex(polys(qx, "x1", "x2"), qx))
        assert fingerprint(H[0]) == fingerprint(cyclic_module(qx, polys(qx, "x1", "x2")))
        assert is_zero(H[1]) and is_zero(H[2])

    def test_non_regular_h1(self, qx, polys):
        H = free_complex_homology(koszul_complex(polys(qx, "x1*x2", "x1"), qx))
        assert not is_zero(H[1])

    def test_empty_complex(self, qx):
        H = free_complex_homology(FreeComplex(qx, (2,), ()))
        assert H[0].gens == 2

    def test_short_sequence(self, qx, polys, matrix):
        # 0 -> R --x1--> R -> R/(x1) -> 0
        R = free_module(qx, 1)
        Q = cyclic_module(qx, polys(qx, "x1"))
        mult = lift_map(matrix(qx, [["x1"]]), R, R)
        proj = lift_map(matrix(qx, [["1"]]), R, Q)
        H = complex_homology([proj, mult])
        assert all(is_zero(h) for h in H)

    @pytest.mark.parametrize("seed", range(12))
    def test_resolution_resolves(self, qx, seed):
        # graded columns: both entries of a column have the same degree
        pool = [("x1", "0"), ("x2", "x1"), ("0", "x2"), ("x1*x2", "x2^2"), ("x1^2", "x1*x2"), ("x1 + x2", "x2")]
        rng = random.Random(seed)
        columns = [poly_pair(qx, rng.choice(pool)) for _ in range(rng.randint(1, 3))]
        L = present(PolyMatrix.from_columns(qx, columns, 2))
        H = free_complex_homology(free_resolution(L))
        assert fingerprint(H[0]) == fingerprint(L)
        assert all(is_zero(h) for h in H[1:])

    def test_composite_checked(self, qx, matrix):
        R = free_module(qx, 1)
        v = lift_map(matrix(qx, [["x1"]]), R, R)
        with pytest.raises(NotAComplex):
            complex_homology([v, v])
