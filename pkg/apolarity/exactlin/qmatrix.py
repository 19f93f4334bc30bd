import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from apolarity.exceptions import DegreeMismatch

logger = logging.getLogger(__name__)

Vector = Tuple[Fraction, ...]


def to_fraction(value) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a Fraction (floats are refused)."""
    if isinstance(value, float):
        raise TypeError("floating point values are not accepted in exact matrices")
    return Fraction(value)


@dataclass(frozen=True)
class QMatrix:
    """Dense matrix over the rationals, stored row-major.

    Entries are ``Fraction`` instances, so they are always in lowest terms with a
    positive denominator.
    """

    rows: int
    cols: int
    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DegreeMismatch(f"negative shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise DegreeMismatch(f"{len(self.entries)} entries do not fill a {self.rows}x{self.cols} matrix")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "QMatrix":
        """Build a matrix from a list of rows.

        Args:
            rows (Sequence[Sequence]): Row entries (ints, Fractions or "p/q" strings)
            cols (int, optional): Column count, needed only when ``rows`` is empty

        Returns:
            QMatrix: The matrix
        """
        if cols is None:
            cols = len(rows[0]) if rows else 0
        entries: List[Fraction] = []
        for row in rows:
            if len(row) != cols:
                raise DegreeMismatch(f"ragged row of length {len(row)}, expected {cols}")
            entries.extend(to_fraction(x) for x in row)
        return cls(len(rows), cols, tuple(entries))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, size: int) -> "QMatrix":
        return cls.from_rows([[int(i == j) for j in range(size)] for i in range(size)], cols=size)

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> List[List[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "QMatrix":
        return QMatrix.from_rows([[self[i, j] for i in range(self.rows)] for j in range(self.cols)], cols=self.rows)

    def vstack(self, *others: "QMatrix") -> "QMatrix":
        rows = self.to_rows()
        for other in others:
            if other.cols != self.cols:
                raise DegreeMismatch(f"cannot stack {other.cols} columns under {self.cols}")
            rows.extend(other.to_rows())
        return QMatrix.from_rows(rows, cols=self.cols)

    def hstack(self, *others: "QMatrix") -> "QMatrix":
        rows = self.to_rows()
        cols = self.cols
        for other in others:
            if other.rows != self.rows:
                raise DegreeMismatch(f"cannot join {other.rows} rows beside {self.rows}")
            for i in range(self.rows):
                rows[i].extend(other.row(i))
            cols += other.cols
        return QMatrix.from_rows(rows, cols=cols)

    def apply(self, vector: Sequence) -> Vector:
        """Matrix times column vector."""
        if len(vector) != self.cols:
            raise DegreeMismatch(f"vector of length {len(vector)} against {self.cols} columns")
        values = [to_fraction(x) for x in vector]
        return tuple(sum((a * b for a, b in zip(self.row(i), values)), Fraction(0)) for i in range(self.rows))

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise DegreeMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        columns = [tuple(other[i, j] for i in range(other.rows)) for j in range(other.cols)]
        return QMatrix.from_rows([list(r) for r in zip(*(self.apply(c) for c in columns))], cols=other.cols)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def to_integer_array(self) -> np.ndarray:
        """Integer object array with the same row space: each row is scaled by the lcm of its denominators."""
        array = np.empty((self.rows, self.cols), dtype=object)
        for i in range(self.rows):
            row = self.row(i)
            scale = reduce(lcm, (x.denominator for x in row), 1)
            for j, x in enumerate(row):
                array[i, j] = x.numerator * (scale // x.denominator)
        return array


def _primitive(row: np.ndarray) -> np.ndarray:
    content = reduce(gcd, row.tolist(), 0)
    if content > 1:
        return row // content
    return row


def _row_echelon(array: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """Fraction-free row echelon form over the integers.

    Each elimination step replaces row i by ``p * row_i - a * row_r`` with the
    cofactors divided by their gcd, then divides the row by its content, so
    all arithmetic stays in exact integers and rows stay primitive.

    Returns:
        Tuple[np.ndarray, List[int]]: Echelon array and the pivot column of each nonzero row
    """
    a = array.copy()
    rows, columns = a.shape
    pivots: List[int] = []
    row = 0
    for column in range(columns):
        if row >= rows:
            break
        candidates = [i for i in range(row, rows) if a[i, column] != 0]
        if not candidates:
            continue
        # smallest pivot keeps the cofactors small
        best = min(candidates, key=lambda i: abs(a[i, column]))
        if best != row:
            a[[row, best]] = a[[best, row]]
        pivot = a[row, column]
        for i in range(row + 1, rows):
            value = a[i, column]
            if value != 0:
                g = gcd(pivot, value)
                a[i] = _primitive(a[i] * (pivot // g) - a[row] * (value // g))
        a[row] = _primitive(a[row])
        pivots.append(column)
        row += 1
    return a, pivots


def _reduced_echelon(array: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """Fraction-free reduced echelon form: zeros above every pivot as well."""
    a, pivots = _row_echelon(array)
    for r in range(len(pivots) - 1, -1, -1):
        column = pivots[r]
        pivot = a[r, column]
        for i in range(r):
            value = a[i, column]
            if value != 0:
                g = gcd(pivot, value)
                a[i] = _primitive(a[i] * (pivot // g) - a[r] * (value // g))
    return a, pivots


def rank(m: QMatrix) -> int:
    """Exact rank over the rationals."""
    if m.rows == 0 or m.cols == 0 or m.is_zero():
        return 0
    _, pivots = _row_echelon(m.to_integer_array())
    return len(pivots)


def canonical_vector(values: Iterable[int]) -> Tuple[int, ...]:
    """Scale an integer vector to content 1 with first nonzero entry positive."""
    values = list(values)
    content = reduce(gcd, values, 0)
    if content == 0:
        return tuple(values)
    sign = next(1 if x > 0 else -1 for x in values if x != 0)
    return tuple(sign * x // content for x in values)


def kernel_basis(m: QMatrix) -> List[Tuple[int, ...]]:
    """Basis of the right kernel, one vector per free column.

    Vectors have integer entries, content 1 and first nonzero entry positive.
    """
    if m.cols == 0:
        return []
    if m.rows == 0 or m.is_zero():
        return [tuple(int(i == j) for j in range(m.cols)) for i in range(m.cols)]
    a, pivots = _reduced_echelon(m.to_integer_array())
    pivot_set = set(pivots)
    basis: List[Tuple[int, ...]] = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        scale = reduce(lcm, (abs(a[r, pivots[r]]) for r in range(len(pivots)) if a[r, free] != 0), 1)
        vector = [0] * m.cols
        vector[free] = scale
        for r, column in enumerate(pivots):
            if a[r, free] != 0:
                vector[column] = -a[r, free] * scale // a[r, column]
        basis.append(canonical_vector(vector))
    logger.debug(f"kernel of {m.rows}x{m.cols} matrix has dimension {len(basis)}")
    return basis


def same_row_space(first: QMatrix, second: QMatrix) -> bool:
    """Exact equality of the row spaces of two matrices with the same column count."""
    if first.cols != second.cols:
        raise DegreeMismatch(f"row spaces live in different dimensions: {first.cols} and {second.cols}")
    joint = rank(first.vstack(second))
    return rank(first) == joint and rank(second) == joint


def determinant(m: QMatrix) -> Fraction:
    """Determinant by Bareiss fraction-free elimination."""
    if m.rows != m.cols:
        raise DegreeMismatch(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    size = m.rows
    if size == 0:
        return Fraction(1)
    scale = 1
    for i in range(size):
        scale *= reduce(lcm, (x.denominator for x in m.row(i)), 1)
    a = m.to_integer_array()
    sign = 1
    previous = 1
    for k in range(size - 1):
        if a[k, k] == 0:
            swap = next((i for i in range(k + 1, size) if a[i, k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[[k, swap]] = a[[swap, k]]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i, j] = (a[k, k] * a[i, j] - a[i, k] * a[k, j]) // previous
            a[i, k] = 0
        previous = a[k, k]
    return Fraction(sign * a[size - 1, size - 1], scale)


def solve(m: QMatrix, rhs: Sequence) -> Optional[Vector]:
    """One exact solution x of m x = rhs, free variables set to zero; None if inconsistent."""
    if len(rhs) != m.rows:
        raise DegreeMismatch(f"right-hand side of length {len(rhs)} against {m.rows} rows")
    augmented = m.hstack(QMatrix.from_rows([[x] for x in rhs], cols=1))
    if augmented.is_zero():
        return tuple(Fraction(0) for _ in range(m.cols))
    a, pivots = _reduced_echelon(augmented.to_integer_array())
    if pivots and pivots[-1] == m.cols:
        return None
    solution = [Fraction(0)] * m.cols
    for r, column in enumerate(pivots):
        solution[column] = Fraction(a[r, m.cols], a[r, column])
    return tuple(solution)
