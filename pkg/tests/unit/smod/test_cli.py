# tests/unit/smod/test_cli.py
"""Tests for the command line surface"""
import io
import json
import logging

import pytest

from app.cli import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, run_command
from app.fileio import load_file


@pytest.fixture
def smod(corpus_dir):
    """smod('cmd', '--module', 'origin.mod', ...) -> (exit code, stdout lines)

    Arguments naming corpus files (comma-separated lists too) are expanded to full paths.
    """
    def expand(arg):
        parts = arg.split(',')
        if all((corpus_dir / p).is_file() for p in parts):
            return ','.join(str(corpus_dir / p) for p in parts)
        return arg

    def call(*argv):
        args = [expand(a) for a in argv]
        out = io.StringIO()
        code = run_command(args, stdout=out)
        return code, out.getvalue().splitlines()
    return call


@pytest.mark.cli
class TestComputations:
    """Subcommands over the corpus"""

    def test_projdim_and_grade(self, smod):
        assert smod('projdim', '--module', 'origin.mod') == (EXIT_OK, ["2"])
        assert smod('grade', '--module', 'origin.mod') == (EXIT_OK, ["2"])

    def test_dim_of_module(self, smod):
        assert smod('dim', '--module', 'origin.mod') == (EXIT_OK, ["0"])

    def test_resolve(self, smod):
        code, lines = smod('resolve', '--module', 'origin.mod')
        assert code == EXIT_OK
        assert lines[0] == "ranks 1,2,1"

    def test_resolve_cap(self, smod):
        code, lines = smod('resolve', '--module', 'origin.mod', '--cap', '1')
        assert code == EXIT_FAILURE
        assert lines[0] == "resolution did not terminate within 1 maps"
        assert lines[1] == "ranks 1,2"

    def test_parametric_rank_prints_certificate(self, smod):
        code, lines = smod('rank', '--matrix', 'rank_full.mat')
        assert code == EXIT_OK
        assert lines[0] == "2"
        assert lines[-1].startswith("certificate:") and "u1 - 1" in lines[-1]

    def test_rank_at_alpha(self, smod):
        # u1 = 1 makes both rows equal
        assert smod('rank', '--matrix', 'rank_full.mat', '--alpha', '1') == (EXIT_OK, ["1"])

    def test_tor0(self, smod):
        code, lines = smod('tor', '--left', 'origin.mod', '--right', 'free1.mod', '--index', '0')
        assert code == EXIT_OK
        assert lines[0].startswith("module gens 1")
        assert any(line.startswith("fingerprint ") for line in lines)

    def test_gb_of_ideal(self, smod):
        code, lines = smod('gb', '--ideal', 'generic.ideal')
        assert code == EXIT_OK
        assert lines and lines[-1].startswith("certificate:")


@pytest.mark.cli
class TestSpecialize:
    """specialize, --out and --emit"""

    def test_module_at_alpha(self, smod):
        code, lines = smod('specialize', '--module', 'line.mod', '--alpha', '2')
        assert code == EXIT_OK
        assert lines == ["module gens 1 relations 1", "x1 - 2*x2"]

    def test_out_json(self, smod, tmp_path):
        out = tmp_path / 'r.json'
        code, _ = smod('specialize', '--module', 'line.mod', '--alpha', '2', '--out', str(out))
        assert code == EXIT_OK
        data = json.loads(out.read_text())
        assert data['command'] == 'specialize'
        assert data['alpha'] == ["2"]
        assert data['lines'][1] == "x1 - 2*x2"

    def test_emit_reloads(self, smod, tmp_path):
        target = tmp_path / 'line2.mod'
        code, _ = smod('specialize', '--module', 'line.mod', '--alpha', '2', '--emit', str(target))
        assert code == EXIT_OK
        assert (tmp_path / 'line2.ring').read_text() == "vars: x1,x2\norder: grevlex\n"
        loaded = load_file(target)
        assert loaded.name == 'line2'
        assert not loaded.ring.is_parametric

    def test_emit_rejects_submodule(self, smod, tmp_path):
        code, _ = smod('specialize', '--submodule', 'sub_first.sub', '--alpha', '1',
                       '--emit', str(tmp_path / 's.sub'))
        assert code == EXIT_USAGE

    def test_needs_alpha(self, smod):
        assert smod('specialize', '--module', 'line.mod')[0] == EXIT_USAGE


@pytest.mark.cli
class TestVerify:
    """verify exit codes and reports"""

    def test_campaign_passes(self, smod, tmp_path):
        out = tmp_path / 'report.json'
        code, lines = smod('verify', '--theorem', 'dsum_3_1', '--inputs',
                           'origin.mod,free1.mod',
                           '--trials', '3', '--seed', '1', '--out', str(out))
        assert code == EXIT_OK
        assert lines[-1].startswith("dsum_3_1: 3 passed, 0 failed")
        report = json.loads(out.read_text())
        assert report['summary']['pass'] == 3 and report['summary']['fail'] == 0
        assert all(t['ms'] == 0 for t in report['trials'])

    def test_forced_bad_alpha_fails(self, smod, tmp_path):
        out = tmp_path / 'report.json'
        code, _ = smod('verify', '--theorem', 'anndim_3_4', '--inputs', 'ann_neg.mod',
                       '--trials', '1', '--alpha', '0', '--out', str(out))
        assert code == EXIT_FAILURE
        trial = json.loads(out.read_text())['trials'][0]
        assert trial['pass'] is False
        assert trial['cert_good'] is False
        assert "u1" in trial['cert_factors']

    def test_unknown_theorem(self, smod):
        assert smod('verify', '--theorem', 'nope', '--inputs', 'origin.mod')[0] == EXIT_USAGE

    def test_wrong_input_kind(self, smod):
        code, _ = smod('verify', '--theorem', 'tor_4_2', '--inputs', 'generic.ideal')
        assert code == EXIT_USAGE


@pytest.mark.cli
class TestUsage:
    """Exit code 2 paths"""

    def test_no_subcommand(self, smod):
        assert smod()[0] == EXIT_USAGE

    def test_two_inputs_given(self, smod):
        assert smod('gb', '--ideal', 'generic.ideal', '--module', 'origin.mod')[0] == EXIT_USAGE

    def test_alpha_length(self, smod):
        assert smod('rank', '--matrix', 'rank_full.mat', '--alpha', '1,2')[0] == EXIT_USAGE

    def test_missing_file(self, smod):
        assert smod('projdim', '--module', 'absent.mod')[0] == EXIT_USAGE

    def test_ring_mismatch(self, smod):
        assert smod('projdim', '--module', 'origin.mod', '--ring', 'ring_u2_x2.ring')[0] == EXIT_USAGE

    def test_log_level_equals_form(self, smod):
        root = logging.getLogger()
        before = root.level
        try:
            assert smod('--log-level=debug', 'projdim', '--module', 'origin.mod') == (EXIT_OK, ["2"])
            assert root.level == logging.DEBUG
        finally:
            root.setLevel(before)

    def test_unknown_log_level(self, smod):
        assert smod('--log-level', 'loud', 'projdim', '--module', 'origin.mod')[0] == EXIT_USAGE

    def test_corpus_list(self, smod, corpus_dir):
        code, lines = smod('corpus', 'list')
        assert code == EXIT_OK
        manifest = json.loads((corpus_dir / 'manifest.json').read_text())
        assert len(lines) == len(manifest['entries'])

