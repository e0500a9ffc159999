"""
Polynomial matrices and fraction-free elimination

PolyMatrix is a dense row-major grid of polynomials of one ring. Columns
of a presentation matrix are relations throughout the package.

Rank and determinants use Bareiss' fraction-free elimination with full
pivoting: every intermediate entry stays a polynomial (exact division by
the previous pivot), and the k-th pivot equals a k x k minor of the input.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, List, Optional, Sequence, Tuple

from .certificate import Certificate
from .errors import RingMismatch
from .polyring import Poly, RingDescriptor, poly_format

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PolyMatrix:
    """
    Matrix over a polynomial ring

    Attributes:
        ring: ring of every entry
        rows, cols: shape (either may be 0)
        entries: rows x cols grid
    """
    ring: RingDescriptor
    rows: int
    cols: int
    entries: Tuple[Tuple[Poly, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError(f"entries do not match shape {self.rows}x{self.cols}")

    # ====================
    # Construction
    # ====================

    @classmethod
    def from_rows(cls, ring: RingDescriptor, rows: Sequence[Sequence[Poly]],
                  cols: Optional[int] = None) -> 'PolyMatrix':
        grid = tuple(tuple(row) for row in rows)
        width = cols if cols is not None else (len(grid[0]) if grid else 0)
        return cls(ring, len(grid), width, grid)

    @classmethod
    def from_columns(cls, ring: RingDescriptor, columns: Sequence[Sequence[Poly]],
                     rows: int) -> 'PolyMatrix':
        grid = tuple(tuple(col[i] for col in columns) for i in range(rows))
        return cls(ring, rows, len(columns), grid)

    @classmethod
    def zeros(cls, ring: RingDescriptor, rows: int, cols: int) -> 'PolyMatrix':
        zero = ring.zero
        return cls(ring, rows, cols, tuple(tuple(zero for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def identity(cls, ring: RingDescriptor, size: int) -> 'PolyMatrix':
        one, zero = ring.one, ring.zero
        return cls(ring, size, size,
                   tuple(tuple(one if i == j else zero for j in range(size)) for i in range(size)))

    # ====================
    # Access
    # ====================

    def __getitem__(self, index: Tuple[int, int]) -> Poly:
        i, j = index
        return self.entries[i][j]

    def row(self, i: int) -> List[Poly]:
        return list(self.entries[i])

    def column(self, j: int) -> List[Poly]:
        return [self.entries[i][j] for i in range(self.rows)]

    def columns(self) -> List[List[Poly]]:
        return [self.column(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return all(not e for row in self.entries for e in row)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> 'PolyMatrix':
        return PolyMatrix.from_rows(self.ring, [[self.entries[i][j] for j in col_idx] for i in row_idx],
                                    len(col_idx))

    def select_columns(self, col_idx: Sequence[int]) -> 'PolyMatrix':
        return self.submatrix(range(self.rows), col_idx)

    def select_rows(self, row_idx: Sequence[int]) -> 'PolyMatrix':
        return self.submatrix(row_idx, range(self.cols))

    def map_entries(self, fn: Callable[[Poly], Poly], ring: Optional[RingDescriptor] = None) -> 'PolyMatrix':
        grid = [[fn(e) for e in row] for row in self.entries]
        return PolyMatrix.from_rows(ring or self.ring, grid, self.cols)

    # ====================
    # Arithmetic
    # ====================

    def _check(self, other: 'PolyMatrix'):
        if self.ring != other.ring:
            raise RingMismatch(f"({self.ring.describe()}) vs ({other.ring.describe()})")

    def __add__(self, other: 'PolyMatrix') -> 'PolyMatrix':
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix sum")
        grid = [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)]
        return PolyMatrix.from_rows(self.ring, grid, self.cols)

    def __neg__(self) -> 'PolyMatrix':
        return self.map_entries(lambda e: -e)

    def __sub__(self, other: 'PolyMatrix') -> 'PolyMatrix':
        return self + (-other)

    def __matmul__(self, other: 'PolyMatrix') -> 'PolyMatrix':
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        zero = self.ring.zero
        grid = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            grid.append(row)
        return PolyMatrix.from_rows(self.ring, grid, other.cols)

    def apply(self, vector: Sequence[Poly]) -> List[Poly]:
        """Matrix times column vector"""
        column = PolyMatrix.from_columns(self.ring, [list(vector)], len(vector))
        return (self @ column).column(0)

    def scale(self, c: Poly) -> 'PolyMatrix':
        return self.map_entries(lambda e: e * c)

    def transpose(self) -> 'PolyMatrix':
        return PolyMatrix.from_columns(self.ring, [list(r) for r in self.entries], self.cols)

    # ====================
    # Block constructions
    # ====================

    @staticmethod
    def hstack(ring: RingDescriptor, rows: int, *blocks: 'PolyMatrix') -> 'PolyMatrix':
        for b in blocks:
            if b.rows != rows:
                raise ValueError(f"hstack: block has {b.rows} rows, expected {rows}")
        grid = [[e for b in blocks for e in b.entries[i]] for i in range(rows)]
        return PolyMatrix.from_rows(ring, grid, sum(b.cols for b in blocks))

    @staticmethod
    def vstack(ring: RingDescriptor, cols: int, *blocks: 'PolyMatrix') -> 'PolyMatrix':
        for b in blocks:
            if b.cols != cols:
                raise ValueError(f"vstack: block has {b.cols} columns, expected {cols}")
        grid = [row for b in blocks for row in b.entries]
        return PolyMatrix.from_rows(ring, grid, cols)

    def block_diag(self, other: 'PolyMatrix') -> 'PolyMatrix':
        self._check(other)
        top = PolyMatrix.hstack(self.ring, self.rows, self, PolyMatrix.zeros(self.ring, self.rows, other.cols))
        bottom = PolyMatrix.hstack(self.ring, other.rows, PolyMatrix.zeros(self.ring, other.rows, self.cols), other)
        return PolyMatrix.vstack(self.ring, self.cols + other.cols, top, bottom)

    def kron(self, other: 'PolyMatrix') -> 'PolyMatrix':
        """Kronecker product: block (i, j) is self[i, j] * other"""
        self._check(other)
        grid = []
        for i in range(self.rows):
            for p in range(other.rows):
                grid.append([self.entries[i][j] * other.entries[p][q]
                             for j in range(self.cols) for q in range(other.cols)])
        return PolyMatrix.from_rows(self.ring, grid, self.cols * other.cols)

    # ====================
    # Text
    # ====================

    def format_rows(self) -> List[str]:
        return [", ".join(poly_format(e) for e in row) for row in self.entries]

    def __str__(self) -> str:
        return "\n".join(self.format_rows()) or f"<{self.rows}x{self.cols}>"


# ====================
# Fraction-free elimination
# ====================

@dataclass(frozen=True)
class Elimination:
    """
    Outcome of Bareiss elimination

    Attributes:
        rank: number of pivots
        pivots: pivot k is the leading (k+1)x(k+1) minor of the permuted matrix
        row_perm, col_perm: permutations applied to the input
        sign: sign of the combined permutation (square inputs)
    """
    rank: int
    pivots: Tuple[Poly, ...]
    row_perm: Tuple[int, ...]
    col_perm: Tuple[int, ...]
    sign: int

    @property
    def witness_rows(self) -> Tuple[int, ...]:
        return tuple(sorted(self.row_perm[:self.rank]))

    @property
    def witness_cols(self) -> Tuple[int, ...]:
        return tuple(sorted(self.col_perm[:self.rank]))


def register_entries(A: PolyMatrix, cert: Optional[Certificate]) -> None:
    if cert is None or not A.ring.is_parametric:
        return
    for row in A.entries:
        for e in row:
            for c in e.itercoeffs():
                cert.register_denominator(c)


def bareiss(A: PolyMatrix, cert: Optional[Certificate] = None) -> Elimination:
    """
    Fraction-free elimination with full pivoting

    Over Q(u)[x] the leading coefficient of every pivot is registered in
    cert: a pivot that survives substitution keeps the rank.
    """
    register_entries(A, cert)
    M = [list(row) for row in A.entries]
    rows, cols = A.rows, A.cols
    row_perm, col_perm = list(range(rows)), list(range(cols))
    previous = A.ring.one
    pivots: List[Poly] = []
    sign = 1

    for k in range(min(rows, cols)):
        found = next(((i, j) for i in range(k, rows) for j in range(k, cols) if M[i][j]), None)
        if found is None:
            break
        i, j = found
        if i != k:
            M[i], M[k] = M[k], M[i]
            row_perm[i], row_perm[k] = row_perm[k], row_perm[i]
            sign = -sign
        if j != k:
            for row in M:
                row[j], row[k] = row[k], row[j]
            col_perm[j], col_perm[k] = col_perm[k], col_perm[j]
            sign = -sign
        pivot = M[k][k]
        if cert is not None and A.ring.is_parametric:
            cert.register_unit(pivot.LC)
        for i in range(k + 1, rows):
            for j in range(k + 1, cols):
                value = pivot * M[i][j] - M[i][k] * M[k][j]
                M[i][j] = value.exquo(previous) if previous != 1 else value
            M[i][k] = A.ring.zero
        previous = pivot
        pivots.append(pivot)

    logger.debug(f"bareiss: {rows}x{cols} matrix has rank {len(pivots)}")
    return Elimination(len(pivots), tuple(pivots), tuple(row_perm), tuple(col_perm), sign)


def determinant(A: PolyMatrix, cert: Optional[Certificate] = None) -> Poly:
    if A.rows != A.cols:
        raise ValueError("determinant of a non-square matrix")
    if A.rows == 0:
        return A.ring.one
    result = bareiss(A, cert)
    if result.rank < A.rows:
        return A.ring.zero
    return result.pivots[-1] if result.sign > 0 else -result.pivots[-1]


def minors(A: PolyMatrix, t: int) -> List[Poly]:
    """All t x t minors, row subsets outer, column subsets inner"""
    if t < 1:
        raise ValueError("minor size must be positive")
    out = []
    for rows in combinations(range(A.rows), t):
        for cols in combinations(range(A.cols), t):
            out.append(determinant(A.submatrix(rows, cols)))
    return out
