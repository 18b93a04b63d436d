"""Permutation canonical form of idempotent (0,1)-matrices.

Indices are split by the zero pattern of their row and column; listing the
four classes in order gives a similarity P E P^T of block shape

    [[I, U, 0, 0],
     [0, 0, 0, 0],
     [V, VU, 0, 0],
     [0, 0, 0, 0]]

provided the characteristic is zero or exceeds n.
"""

from __future__ import annotations

from dataclasses import dataclass

from hadpow.errors import CharTooSmall, NotIdempotent01, ShapeError, StructureViolation
from hadpow.field import characteristic_admits
from hadpow.matrix import Matrix, Permutation, mat_mul, permute_similarity


@dataclass(frozen=True)
class IndexClassification:
    """Four disjoint ascending 1-based index lists.

    class1: row and column nonzero; class2: row zero, column nonzero;
    class3: row nonzero, column zero; class4: both zero.
    """

    class1: tuple[int, ...]
    class2: tuple[int, ...]
    class3: tuple[int, ...]
    class4: tuple[int, ...]

    @property
    def sizes(self) -> tuple[int, int, int, int]:
        return len(self.class1), len(self.class2), len(self.class3), len(self.class4)

    def order(self) -> list[int]:
        """0-based source index for each target position."""
        return [i - 1 for i in self.class1 + self.class2 + self.class3 + self.class4]


@dataclass(frozen=True)
class CanonicalForm:
    sigma: Permutation
    m: int
    class_sizes: tuple[int, int, int, int]
    U: Matrix
    V: Matrix
    W: Matrix

    def __post_init__(self):
        m, s2, s3, s4 = self.class_sizes
        if m != self.m or self.sigma.n != sum(self.class_sizes):
            raise ShapeError("class sizes disagree with m or sigma")
        if self.U.shape != (m, s2) or self.V.shape != (s3, m) or self.W.shape != (s3, s2):
            raise ShapeError("block shapes disagree with class sizes")
        if not (self.U.is_01() and self.V.is_01()):
            raise ValueError("U and V must be (0,1)-matrices")
        for j in range(s2):
            if not any(self.U.col(j)):
                raise ValueError(f"U has a zero column {j + 1}")
        for i in range(s3):
            if not any(self.V.row(i)):
                raise ValueError(f"V has a zero row {i + 1}")
        if self.W != mat_mul(self.V, self.U) or not self.W.is_01():
            raise ValueError("W must equal VU and be a (0,1)-matrix")

    @property
    def n(self) -> int:
        return self.sigma.n

    def left_factor(self) -> Matrix:
        """[I; 0; V; 0], n x m."""
        m, s2, s3, s4 = self.class_sizes
        f = self.U.field
        rows = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
        rows += [[0] * m for _ in range(s2)]
        rows += [list(r) for r in self.V.raw_rows()]
        rows += [[0] * m for _ in range(s4)]
        return Matrix.from_rows(rows, f, cols=m)

    def right_factor(self) -> Matrix:
        """[I U 0 0], m x n."""
        m, s2, s3, s4 = self.class_sizes
        f = self.U.field
        rows = [[1 if i == j else 0 for j in range(m)] + list(self.U.row(i)) + [0] * (s3 + s4)
                for i in range(m)]
        return Matrix.from_rows(rows, f, cols=self.n)

    def block_matrix(self) -> Matrix:
        return mat_mul(self.left_factor(), self.right_factor())


def classify_indices(E: Matrix) -> IndexClassification:
    if not E.is_square():
        raise ShapeError(f"square matrix required, got {E.rows}x{E.cols}")
    classes = ([], [], [], [])
    for i in range(E.rows):
        row_zero = not any(E.row(i))
        col_zero = not any(E.col(i))
        classes[2 * col_zero + row_zero].append(i + 1)
    return IndexClassification(*(tuple(c) for c in classes))


def is_idempotent_01(E: Matrix) -> bool:
    if not E.is_square():
        raise ShapeError(f"square matrix required, got {E.rows}x{E.cols}")
    return E.is_01() and mat_mul(E, E) == E


def canonical_form(E: Matrix, force: bool = False) -> CanonicalForm:
    """Canonical permutation and blocks of an idempotent (0,1)-matrix.

    With ``force=True`` the characteristic gate is skipped and the block
    checks run anyway, raising :class:`StructureViolation` where the shape
    breaks down.
    """
    if not is_idempotent_01(E):
        raise NotIdempotent01("input is not an idempotent (0,1)-matrix")
    n = E.rows
    if not force and not characteristic_admits(E.field, n):
        raise CharTooSmall(E.field, n)
    cls = classify_indices(E)
    m, s2, s3, s4 = cls.sizes
    sigma = Permutation.from_order(cls.order())
    PE = permute_similarity(E, sigma)

    top = range(m)
    for i in top:
        for j in top:
            if PE.raw(i, j) != (1 if i == j else 0):
                raise StructureViolation("T", i + 1, j + 1, "top-left block is not the identity")
    U = PE.submatrix(range(m), range(m, m + s2))
    V = PE.submatrix(range(m + s2, m + s2 + s3), range(m))
    W = PE.submatrix(range(m + s2, m + s2 + s3), range(m, m + s2))
    for j in range(s2):
        if not any(U.col(j)):
            raise StructureViolation("U", 1, j + 1, "zero column")
    for i in range(s3):
        if not any(V.row(i)):
            raise StructureViolation("V", i + 1, 1, "zero row")
    VU = mat_mul(V, U)
    for i in range(s3):
        for j in range(s2):
            if VU.raw(i, j) != W.raw(i, j):
                raise StructureViolation("W", i + 1, j + 1, "W differs from VU")
    return CanonicalForm(sigma, m, cls.sizes, U, V, W)


def reconstruct_idempotent(cf: CanonicalForm, n: int | None = None) -> Matrix:
    """[I;0;V;0] @ [I U 0 0], moved back through sigma."""
    if n is not None and n != cf.n:
        raise ShapeError(f"canonical form has size {cf.n}, not {n}")
    return permute_similarity(cf.block_matrix(), cf.sigma.inverse())
