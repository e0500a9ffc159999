"""
Global pytest fixtures for smod tests

Provides shared fixtures for:
- import path of the `app` package (smod/app)
- corpus directory and manifest
- ring descriptors used across modules
"""

import sys
from pathlib import Path

import pytest

# Add paths
ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(ROOT / 'smod'))

from app.polyring import RingDescriptor  # noqa: E402


# ====================
# Corpus
# ====================

@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    """Committed corpus of input files"""
    return ROOT / 'corpus'


# ====================
# Rings
# ====================

@pytest.fixture
def qx():
    """Q[x1, x2], grevlex"""
    return RingDescriptor((), ('x1', 'x2'))


@pytest.fixture
def qux():
    """Q(u1)[x1, x2], grevlex"""
    return RingDescriptor(('u1',), ('x1', 'x2'))


@pytest.fixture
def quux():
    """Q(u1, u2)[x1, x2], grevlex"""
    return RingDescriptor(('u1', 'u2'), ('x1', 'x2'))


@pytest.fixture
def qx3():
    """Q[x1, x2, x3], grevlex"""
    return RingDescriptor((), ('x1', 'x2', 'x3'))
