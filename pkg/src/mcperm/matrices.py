"""Matrix classes: Ferrers shapes, monotone column matrices, symbolic matrices.

A Ferrers matrix is stored by its column heights: column ``j`` has ones in
its top ``h_j`` rows, and heights weakly increase left to right.  Row and
column indices in the public API are 1-based where they name variables
(``x_i``, ``y_j``, ``z_j``) and 0-based where they index Python sequences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DimensionError, MCPermError
from .polyalg import Namespace, Polynomial, Var, as_rational


@dataclass(frozen=True)
class FerrersMatrix:
    rows: int
    heights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "heights", tuple(int(h) for h in self.heights))
        if self.rows < 1 or not self.heights:
            raise DimensionError("Ferrers matrices need at least one row and column")
        for h in self.heights:
            if not 0 <= h <= self.rows:
                raise MCPermError(f"height {h} outside [0, {self.rows}]")
        if any(a > b for a, b in zip(self.heights, self.heights[1:])):
            raise MCPermError(f"heights {self.heights} are not weakly increasing")

    @property
    def cols(self) -> int:
        return len(self.heights)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def entry(self, i: int, j: int) -> int:
        """Entry at 1-based position (i, j)."""
        return 1 if i <= self.heights[j - 1] else 0

    def to_rows(self) -> list[list[int]]:
        return [[self.entry(i, j) for j in range(1, self.cols + 1)]
                for i in range(1, self.rows + 1)]

    def to_monotone(self) -> "MonotoneColumnMatrix":
        return MonotoneColumnMatrix(self.to_rows())

    def zeros_in_last_column(self) -> int:
        return self.rows - self.heights[-1]

    def __str__(self) -> str:
        return "\n".join("".join(str(e) for e in row) for row in self.to_rows())


class MonotoneColumnMatrix:
    """Rational matrix whose columns weakly decrease from top to bottom."""

    __slots__ = ("entries",)

    def __init__(self, entries: Sequence[Sequence]):
        rows = tuple(tuple(as_rational(c) for c in row) for row in entries)
        if not rows or not rows[0]:
            raise DimensionError("matrix must be nonempty")
        if any(len(r) != len(rows[0]) for r in rows):
            raise DimensionError("ragged matrix")
        for i in range(len(rows) - 1):
            for j in range(len(rows[0])):
                if rows[i][j] < rows[i + 1][j]:
                    raise MCPermError(
                        f"column {j + 1} increases between rows {i + 1} and {i + 2}")
        self.entries = rows

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __eq__(self, other) -> bool:
        if isinstance(other, MonotoneColumnMatrix):
            return self.entries == other.entries
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __repr__(self) -> str:
        body = [[str(c) for c in row] for row in self.entries]
        return f"MonotoneColumnMatrix({body})"

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for row in self.entries for c in row)


class SymbolicMatrix:
    """Rectangular matrix of Polynomials."""

    __slots__ = ("entries",)

    def __init__(self, entries: Sequence[Sequence]):
        rows = tuple(tuple(Polynomial.coerce(c) for c in row) for row in entries)
        if not rows or not rows[0]:
            raise DimensionError("matrix must be nonempty")
        if any(len(r) != len(rows[0]) for r in rows):
            raise DimensionError("ragged matrix")
        self.entries = rows

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other) -> bool:
        if isinstance(other, SymbolicMatrix):
            return self.entries == other.entries
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.entries)

    def map(self, fn) -> "SymbolicMatrix":
        return SymbolicMatrix([[fn(c) for c in row] for row in self.entries])

    def transpose(self) -> "SymbolicMatrix":
        return SymbolicMatrix(list(zip(*self.entries)))

    def __add__(self, other: "SymbolicMatrix") -> "SymbolicMatrix":
        if self.shape != other.shape:
            raise DimensionError("shape mismatch")
        return SymbolicMatrix([[a + b for a, b in zip(r1, r2)]
                               for r1, r2 in zip(self.entries, other.entries)])

    def __repr__(self) -> str:
        return f"SymbolicMatrix({[[str(c) for c in row] for row in self.entries]})"


# -- Ferrers constructions ------------------------------------------------------


def ferrers_from_heights(m: int, n: int, heights: Sequence[int]) -> FerrersMatrix:
    if len(heights) != n:
        raise DimensionError(f"expected {n} heights, got {len(heights)}")
    return FerrersMatrix(m, tuple(heights))


def all_ferrers(m: int, n: int) -> Iterator[FerrersMatrix]:
    """Every m-by-n Ferrers matrix, heights in lexicographic order."""
    for hs in combinations_with_replacement(range(m + 1), n):
        yield FerrersMatrix(m, hs)


def ferrers_dual(A: FerrersMatrix) -> FerrersMatrix:
    """``J - A^T``: column j of the dual has ones in rows i with h_i < j."""
    hs = A.heights
    return FerrersMatrix(A.cols, tuple(sum(1 for h in hs if h < j) for j in range(1, A.rows + 1)))


def truncate(A: FerrersMatrix) -> FerrersMatrix:
    """Delete the last row and the last column."""
    if A.rows < 2 or A.cols < 2:
        raise DimensionError("truncate needs at least 2 rows and 2 columns")
    m = A.rows - 1
    return FerrersMatrix(m, tuple(min(h, m) for h in A.heights[:-1]))


def eulerian_matrix(n: int) -> FerrersMatrix:
    """E_n: entry (i, j) is 1 exactly when i < j."""
    if n < 1:
        raise DimensionError("n must be positive")
    return FerrersMatrix(n, tuple(range(n)))


def shifted_eulerian_matrix(n: int, shift: int) -> FerrersMatrix:
    """Entry (i, j) is 1 exactly when i < j - shift + 1; shift=1 gives E_n."""
    if n < 1 or shift < 1:
        raise DimensionError("need n >= 1 and shift >= 1")
    return FerrersMatrix(n, tuple(max(0, j - shift) for j in range(1, n + 1)))


def multiset_eulerian_matrix(v: Sequence[int]) -> FerrersMatrix:
    """E(v): v_1 zero columns, then v_2 columns of height v_1, then v_3 of height v_1+v_2, ..."""
    if not v:
        raise DimensionError("composition must be nonempty")
    if any(int(c) < 1 for c in v):
        raise MCPermError("composition parts must be positive")
    heights = []
    running = 0
    for part in v:
        heights.extend([running] * part)
        running += part
    return FerrersMatrix(running, tuple(heights))


def pad_rows(A: FerrersMatrix, count: int) -> FerrersMatrix:
    """Append ``count`` zero rows at the bottom."""
    if count < 0:
        raise MCPermError("count must be nonnegative")
    return FerrersMatrix(A.rows + count, A.heights)


def pad_cols(A, count: int, mode: str = "append"):
    """Add ``count`` zero columns.

    ``mode="append"`` adds them on the right (literal padding of a monotone
    matrix, returns a MonotoneColumnMatrix); ``mode="prepend"`` adds them on
    the left, which keeps a Ferrers matrix Ferrers.
    """
    if count < 0:
        raise MCPermError("count must be nonnegative")
    if mode == "prepend":
        if not isinstance(A, FerrersMatrix):
            raise MCPermError("prepend mode is for Ferrers matrices")
        return FerrersMatrix(A.rows, (0,) * count + A.heights)
    if mode != "append":
        raise MCPermError(f"unknown padding mode {mode!r}")
    rows = A.to_rows() if isinstance(A, FerrersMatrix) else A.entries
    return MonotoneColumnMatrix([list(r) + [0] * count for r in rows])


def columns_to_ones(A: MonotoneColumnMatrix, S: Iterable[int]) -> MonotoneColumnMatrix:
    """A_S: replace the (1-based) columns in S by all-ones columns."""
    S = set(S)
    for j in S:
        if not 1 <= j <= A.cols:
            raise DimensionError(f"column index {j} out of range 1..{A.cols}")
    return MonotoneColumnMatrix(
        [[1 if j + 1 in S else c for j, c in enumerate(row)] for row in A.entries])


# -- symbolic matrices -----------------------------------------------------------


def build_B(A: FerrersMatrix, row_ns: Namespace = Namespace.X,
            col_ns: Namespace = Namespace.Y) -> SymbolicMatrix:
    """B(A): entry (i, j) is the column variable y_j if a_ij = 1, else the row variable x_i.

    Swapping ``row_ns``/``col_ns`` gives B(A; y; x).
    """
    return SymbolicMatrix([
        [Var(col_ns, j) if A.entry(i, j) else Var(row_ns, i) for j in range(1, A.cols + 1)]
        for i in range(1, A.rows + 1)])


def build_JZ_plus_A(A) -> SymbolicMatrix:
    """The matrix (z_j + a_ij)."""
    if not isinstance(A, MonotoneColumnMatrix):
        A = A.to_monotone() if isinstance(A, FerrersMatrix) else MonotoneColumnMatrix(A)
    return SymbolicMatrix([
        [Polynomial.var(Var(Namespace.Z, j + 1)) + a for j, a in enumerate(row)]
        for row in A.entries])


def build_y_form(A: FerrersMatrix) -> SymbolicMatrix:
    """The matrix (a_ij y_j + 1 - a_ij), i.e. B(A) with every x_i set to 1."""
    return SymbolicMatrix([
        [Var(Namespace.Y, j) if A.entry(i, j) else 1 for j in range(1, A.cols + 1)]
        for i in range(1, A.rows + 1)])


def ones_matrix(m: int, n: int | None = None) -> list[list[int]]:
    return [[1] * (m if n is None else n) for _ in range(m)]


def identity_matrix(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


# -- random generation -------------------------------------------------------------


def random_monotone_matrix(m: int, n: int, value_range=(-9, 9), seed=0,
                           denominator: int = 1) -> MonotoneColumnMatrix:
    """Random monotone column matrix with entries in ``value_range``.

    Entries are multiples of ``1/denominator``; each column is sorted into
    decreasing order.  ``seed`` is anything ``numpy.random.default_rng`` accepts.
    """
    lo, hi = (Fraction(as_rational(c)) for c in value_range)
    if lo > hi:
        raise MCPermError("empty value range")
    rng = np.random.default_rng(seed)
    lo_n = math.ceil(lo * denominator)
    hi_n = math.floor(hi * denominator)
    if lo_n > hi_n:
        raise MCPermError("value range contains no multiple of 1/denominator")
    draws = rng.integers(lo_n, hi_n, size=(m, n), endpoint=True)
    cols = [sorted((as_rational(Fraction(int(draws[i, j]), denominator)) for i in range(m)),
                   reverse=True) for j in range(n)]
    return MonotoneColumnMatrix([[cols[j][i] for j in range(n)] for i in range(m)])
