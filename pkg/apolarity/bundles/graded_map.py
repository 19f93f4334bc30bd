"""Projection centers and the graded maps whose kernels carry the bundle splittings.

A center L = <f_1, ..., f_k> in P^n is given by k binary forms of degree n.
Both maps send H^0(O(j))^domain_rank to H^0(O(d + j))^k; entry (i, m) is a
homogeneous symbol polynomial of degree d in (s, t) built from the
coefficients a^i of f_i:

    normal  (d = 2, m = 0..n-2):  a_m s^2 + 2 a_(m+1) s t + a_(m+2) t^2
    tangent (d = 1, m = 0..n-1):  a_m s + a_(m+1) t
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from apolarity.apolar.apolar_ideal import length
from apolarity.exactlin.qmatrix import QMatrix, rank
from apolarity.exceptions import DegreeMismatch, FormatError, InvalidCenter
from apolarity.forms.binary_form import BinaryForm, format_form

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProjectionCenter:
    """The (k-1)-plane L spanned by k degree-n forms, disjoint from the rational normal curve."""

    n: int
    k: int
    generators: Tuple[BinaryForm, ...]

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if self.k < 1 or self.k > self.n - 3:
            raise InvalidCenter(f"k = {self.k} outside 1..{self.n - 3} for n = {self.n}")
        if len(self.generators) != self.k:
            raise InvalidCenter(f"expected {self.k} generators, got {len(self.generators)}")
        for f in self.generators:
            if f.degree != self.n:
                raise InvalidCenter(f"generator of degree {f.degree} in a degree {self.n} center")
        if rank(self.coefficient_matrix()) != self.k:
            raise InvalidCenter("generators are linearly dependent")
        for i, f in enumerate(self.generators):
            if length(f) < 2:
                raise InvalidCenter(f"generator {i} lies on the rational normal curve")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ProjectionCenter":
        generators = tuple(BinaryForm.from_coeffs(row) for row in rows)
        if not generators:
            raise InvalidCenter("a center needs at least one generator")
        return cls(generators[0].degree, len(generators), generators)

    def coefficient_matrix(self) -> QMatrix:
        """k x (n+1) matrix of binomial-basis coefficients."""
        return QMatrix.from_rows([list(f.coeffs) for f in self.generators], cols=self.n + 1)


def parse_center(text: str) -> ProjectionCenter:
    """Read a center file: "n k" on the first line, then k rows of n+1 exact rationals.

    Raises:
        FormatError: If the header or a row is malformed
        InvalidCenter: If the rows do not define a valid center
    """
    lines = [line.strip() for line in text.splitlines() if line.strip() and not line.strip().startswith("#")]
    if not lines:
        raise FormatError("empty center file")
    header = lines[0].split()
    if len(header) != 2 or not all(part.isdigit() for part in header):
        raise FormatError(f"center header must be 'n k', got {lines[0]!r}")
    n, k = int(header[0]), int(header[1])
    rows = lines[1:]
    if len(rows) != k:
        raise FormatError(f"header announces {k} generators, found {len(rows)} rows")
    parsed: List[List[Fraction]] = []
    for row in rows:
        parts = [part for part in re.split(r"[,\s]+", row) if part]
        if any("." in part or "e" in part.lower() for part in parts):
            raise FormatError(f"decimal entries are not exact rationals: {row!r}")
        try:
            values = [Fraction(part) for part in parts]
        except (ValueError, ZeroDivisionError) as e:
            raise FormatError(f"malformed generator row {row!r}: {e}") from e
        if len(values) != n + 1:
            raise FormatError(f"generator row has {len(values)} entries, expected {n + 1}")
        parsed.append(values)
    return ProjectionCenter(n, k, tuple(BinaryForm(n, tuple(values)) for values in parsed))


def format_center(center: ProjectionCenter) -> str:
    lines = [f"{center.n} {center.k}"] + [format_form(f) for f in center.generators]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class GradedMap:
    """Map H^0(O(j))^domain_rank -> H^0(O(d+j))^k given by degree-d symbol entries.

    ``entries[i][m]`` holds the coefficients of s^(d-b) t^b, b = 0..d.
    """

    domain_rank: int
    target_count: int
    entry_degree: int
    entries: Tuple[Tuple[Tuple[Fraction, ...], ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.target_count:
            raise DegreeMismatch(f"{len(self.entries)} entry rows for {self.target_count} targets")
        for row in self.entries:
            if len(row) != self.domain_rank:
                raise DegreeMismatch(f"entry row of width {len(row)}, expected {self.domain_rank}")
            if any(len(entry) != self.entry_degree + 1 for entry in row):
                raise DegreeMismatch(f"entries must have degree {self.entry_degree}")


def normal_map(center: ProjectionCenter) -> GradedMap:
    n = center.n
    entries = tuple(
        tuple((a[m], 2 * a[m + 1], a[m + 2]) for m in range(n - 1)) for a in (f.coeffs for f in center.generators)
    )
    return GradedMap(domain_rank=n - 1, target_count=center.k, entry_degree=2, entries=entries)


def tangent_map(center: ProjectionCenter) -> GradedMap:
    n = center.n
    entries = tuple(tuple((a[m], a[m + 1]) for m in range(n)) for a in (f.coeffs for f in center.generators))
    return GradedMap(domain_rank=n, target_count=center.k, entry_degree=1, entries=entries)


def section_matrix(graded: GradedMap, j: int) -> QMatrix:
    """Exact matrix of the map on global sections after twisting by O(j).

    Columns are indexed by (m, a) for the domain vector e_m times s^(j-a) t^a,
    rows by (i, c) for the monomial s^(d+j-c) t^c in the i-th target.

    Returns:
        QMatrix: k(d+j+1) x domain_rank(j+1) matrix
    """
    if j < 0:
        raise DegreeMismatch(f"negative twist {j}")
    d = graded.entry_degree
    height = d + j + 1
    rows = [[Fraction(0)] * (graded.domain_rank * (j + 1)) for _ in range(graded.target_count * height)]
    for i, entry_row in enumerate(graded.entries):
        for m, entry in enumerate(entry_row):
            for b, value in enumerate(entry):
                if not value:
                    continue
                for a in range(j + 1):
                    rows[i * height + a + b][m * (j + 1) + a] += value
    return QMatrix.from_rows(rows, cols=graded.domain_rank * (j + 1))


def section_kernel_dim(graded: GradedMap, j: int) -> int:
    """h^0 of the kernel sheaf twisted by O(j)."""
    matrix = section_matrix(graded, j)
    return matrix.cols - rank(matrix)


def section_profile(graded: GradedMap, j_max: int) -> List[Tuple[int, int]]:
    """(kernel dimension, cokernel dimension) of the section matrix for j = 0..j_max."""
    profile: List[Tuple[int, int]] = []
    for j in range(j_max + 1):
        matrix = section_matrix(graded, j)
        r = rank(matrix)
        profile.append((matrix.cols - r, matrix.rows - r))
    logger.debug(f"section profile up to twist {j_max}: {profile}")
    return profile
