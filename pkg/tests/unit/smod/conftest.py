# tests/unit/smod/conftest.py
"""Pytest fixtures for smod unit tests"""
import sys
from pathlib import Path

import pytest

# Add smod to Python path
sys.path.insert(0, str(Path(__file__).parent.parent.parent.parent / 'smod'))

from app.matrix import PolyMatrix
from app.polyring import poly_parse


@pytest.fixture
def parse():
    """parse(text, ring) -> polynomial"""
    return poly_parse


@pytest.fixture
def polys():
    """polys(ring, 'f1', 'f2', ...) -> list of polynomials"""
    def build(ring, *texts):
        return [poly_parse(t, ring) for t in texts]
    return build


@pytest.fixture
def matrix():
    """matrix(ring, [['x1', 'x2'], ...]) -> PolyMatrix"""
    def build(ring, rows, cols=None):
        grid = [[poly_parse(e, ring) for e in row] for row in rows]
        return PolyMatrix.from_rows(ring, grid, cols)
    return build
