"""
Pytest fixtures for integration tests

Campaigns run end to end from corpus files: parse_inputs, the parametric
side, sampling and the specialized side.
"""

import sys
from pathlib import Path

import pytest

# Add smod to Python path
ROOT = Path(__file__).parent.parent.parent
sys.path.insert(0, str(ROOT / 'smod'))

from app.models import VerificationTask  # noqa: E402


@pytest.fixture
def make_task(corpus_dir):
    """make_task('tor_4_2', ['line.mod', 'cross.mod'], trials=3, ...) -> VerificationTask"""
    def build(theorem_id, inputs, **kwargs):
        kwargs.setdefault('trials', 5)
        return VerificationTask(
            theorem_id=theorem_id,
            inputs=[str(corpus_dir / name) for name in inputs],
            **kwargs,
        )
    return build
