"""
Integration tests: verification campaigns over the committed corpus

Covers:
- every manifest entry passes at its configured trial count
- fixed-seed reports are byte-identical, with or without worker threads
- a forced alpha on the certificate's zero set fails and is flagged
- known values on both sides (proj.dim, grade, exactness)
- rank preservation on seeded random parametric matrices
"""

import json
import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent.parent / 'smod'))

from app import config  # noqa: E402
from app.errors import InputError  # noqa: E402
from app.fileio import format_matrix_file, format_ring  # noqa: E402
from app.matrix import PolyMatrix  # noqa: E402
from app.models import Report, VerificationTask  # noqa: E402
from app.polyring import RingDescriptor, poly_parse  # noqa: E402
from app.verification import THEOREMS, build_theorem, run_verification  # noqa: E402

MANIFEST = json.loads((config.CORPUS_DIR / 'manifest.json').read_text(encoding='utf-8'))['entries']


@pytest.mark.integration
class TestManifest:
    """The corpus covers every registered statement"""

    def test_every_theorem_has_an_entry(self):
        assert {e['theorem_id'] for e in MANIFEST} == set(THEOREMS)

    @pytest.mark.slow
    @pytest.mark.parametrize("entry", MANIFEST,
                             ids=[f"{e['theorem_id']}-{'+'.join(e['inputs'])}" for e in MANIFEST])
    def test_campaign_passes(self, make_task, entry):
        task = make_task(entry['theorem_id'], entry['inputs'], trials=entry['trials'], seed=11)
        report = run_verification(task, workers=1)
        failures = [f"{t.index} {t.alpha}: {t.detail}" for t in report.trials if not t.passed]
        assert report.ok, "\n".join(failures)
        assert all(t.cert_good for t in report.trials)
        assert len(report.trials) == entry['trials']


@pytest.mark.integration
class TestDeterminism:
    """Same task, same bytes"""

    def test_fixed_seed_reports_identical(self, make_task):
        task = make_task('tor_4_2', ['line.mod', 'cross.mod'], trials=4, seed=5)
        first = run_verification(task, workers=1).to_json()
        second = run_verification(task, workers=1).to_json()
        assert first == second

    def test_workers_do_not_change_report(self, make_task):
        task = make_task('rank_1_4', ['rank_full.mat'], trials=6, seed=2)
        serial = run_verification(task, workers=1).to_json()
        pooled = run_verification(task, workers=3).to_json()
        assert serial == pooled
        indices = [t['index'] for t in json.loads(pooled)['trials']]
        assert indices == list(range(6))

    def test_report_parses_back(self, make_task):
        task = make_task('gens_3_3', ['generic.ideal'], trials=2)
        report = run_verification(task, workers=1)
        again = Report.model_validate_json(report.to_json())
        assert again.summary.passed == report.summary.passed
        assert again.trials[0].alpha == report.trials[0].alpha


@pytest.mark.integration
class TestNegativeControl:
    """Forced points inside the certificate's zero set"""

    def test_annihilator_jumps_at_zero(self, make_task):
        # Ann coker[u1*x1] = (x1) over Q(u1); at u1 = 0 the module is free
        task = make_task('anndim_3_4', ['ann_neg.mod'], trials=1, alpha=["0"])
        report = run_verification(task, workers=1)
        trial = report.trials[0]
        assert not report.ok
        assert trial.passed is False
        assert trial.cert_good is False
        assert "u1" in trial.cert_factors
        assert "alpha not certified" in trial.detail
        assert "annihilator: MISMATCH" in trial.detail
        assert "dim: MISMATCH 1 vs 2" in trial.detail

    def test_forced_certified_alpha_passes(self, make_task):
        task = make_task('anndim_3_4', ['ann_neg.mod'], trials=2, alpha=["3"])
        report = run_verification(task, workers=1)
        assert report.ok
        assert all(t.alpha == ["3"] for t in report.trials)

    def test_rank_drops_on_exceptional_value(self, make_task):
        # det = (u1 - 1)*x1*x2
        task = make_task('rank_1_4', ['rank_full.mat'], trials=1, alpha=["1"])
        trial = run_verification(task, workers=1).trials[0]
        assert not trial.passed and not trial.cert_good
        assert "rank: MISMATCH 2 vs 1" in trial.detail


@pytest.mark.integration
class TestKnownValues:
    """Values both sides must reproduce"""

    def test_projdim_of_moving_point(self, make_task):
        check = build_theorem(make_task('projdim_2_6', ['point_u.mod']))
        assert check.pd == 2

    def test_grade_of_maximal_ideal(self, make_task):
        check = build_theorem(make_task('grade_4_4', ['maximal.ideal', 'free1.mod']))
        assert check.grade == 2
        assert check.module_grade == 0

    def test_perfect_parabola(self, make_task):
        check = build_theorem(make_task('perfect_4_5', ['parabola.mod']))
        assert check.grade == check.pd == 2

    def test_wrong_inputs_rejected(self, make_task):
        with pytest.raises(InputError):
            build_theorem(make_task('tor_4_2', ['generic.ideal']))

    @pytest.mark.parametrize("name", ["koszul_point.cpx", "koszul_line.cpx", "koszul_shift.cpx",
                                      "koszul_slant.cpx", "koszul_hyper.cpx", "koszul_twist.cpx"])
    def test_koszul_corpus_is_exact(self, make_task, name):
        assert build_theorem(make_task('exactness_1_5', [name])).report.overall

    def test_nonregular_koszul_is_not_exact(self, make_task):
        assert not build_theorem(make_task('exactness_1_5', ['koszul_nonregular.cpx'])).report.overall


MONOMIALS = ["1", "x1", "x2", "x1^2", "x1*x2", "x2^2"]
COEFFICIENTS = ["1", "(-1)", "2", "u1", "(u1 - 1)", "u1^2", "1/(u1 + 2)"]


def random_matrix(rng, ring):
    """At most 3 x 3, entries of degree <= 2 with up to two terms"""
    rows, cols = rng.randint(1, 3), rng.randint(1, 3)
    grid = []
    for _ in range(rows):
        row = []
        for _ in range(cols):
            terms = [f"{rng.choice(COEFFICIENTS)}*{rng.choice(MONOMIALS)}" for _ in range(rng.randint(0, 2))]
            row.append(poly_parse(" + ".join(terms) or "0", ring))
        grid.append(row)
    return PolyMatrix.from_rows(ring, grid, cols)


@pytest.mark.integration
class TestRandomMatrixInputs:
    """Generated entries stay inside the polynomial grammar"""

    def test_generator_parses_every_seed(self):
        ring = RingDescriptor(('u1',), ('x1', 'x2'))
        for seed in range(10):
            A = random_matrix(random.Random(seed), ring)
            assert 1 <= A.rows <= 3 and 1 <= A.cols <= 3

    def test_negative_coefficient_inside_a_sum(self):
        ring = RingDescriptor(('u1',), ('x1', 'x2'))
        assert poly_parse("u1*x1^2 + (-1)*1", ring) == poly_parse("u1*x1^2 - 1", ring)


@pytest.mark.integration
@pytest.mark.slow
class TestRandomMatrices:
    """rank and determinantal ideals on seeded random parametric matrices"""

    @pytest.mark.parametrize("seed", range(10))
    def test_rank_preserved(self, tmp_path, seed):
        ring = RingDescriptor(('u1',), ('x1', 'x2'))
        A = random_matrix(random.Random(seed), ring)
        (tmp_path / 'r.ring').write_text(format_ring(ring))
        path = tmp_path / f"random_{seed}.mat"
        path.write_text(format_matrix_file(f"random_{seed}", 'r.ring', A))
        task = VerificationTask(theorem_id='rank_1_4', inputs=[str(path)], trials=25, seed=seed)
        report = run_verification(task, workers=1)
        failures = [f"{t.alpha}: {t.detail}" for t in report.trials if not t.passed]
        assert report.ok, "\n".join(failures)
