"""Dense exact matrices, polynomials and permutations.

All three types are immutable.  Matrix entries are stored as raw field
values (see :mod:`hadpow.field`); indexing returns :class:`Scalar`.
Zero-sized dimensions are allowed so that empty canonical blocks are
ordinary matrices.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from hadpow import _backend
from hadpow.errors import ConstantTermError, ShapeError
from hadpow.field import FieldMismatch, FieldSpec, Q, Scalar, render_raw


class Matrix:
    __slots__ = ("field", "rows", "cols", "_data")

    def __init__(self, field: FieldSpec, rows: int, cols: int, data: Iterable):
        data = tuple(data)
        if rows < 0 or cols < 0 or len(data) != rows * cols:
            raise ShapeError(f"{len(data)} entries do not fill a {rows}x{cols} matrix")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_data", data)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- construction ---------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: FieldSpec = Q, cols: int | None = None) -> "Matrix":
        """Build from nested rows of ints, Fractions, strings or Scalars.

        ``cols`` is only needed for a matrix with zero rows.
        """
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ShapeError("ragged rows")
        conv = field.convert
        return cls(field, len(rows), cols, (conv(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldSpec = Q) -> "Matrix":
        return cls(field, rows, cols, [field.zero] * (rows * cols))

    @classmethod
    def ones(cls, rows: int, cols: int, field: FieldSpec = Q) -> "Matrix":
        return cls(field, rows, cols, [field.one] * (rows * cols))

    @classmethod
    def identity(cls, n: int, field: FieldSpec = Q) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, n, n, (o if i == j else z for i in range(n) for j in range(n)))

    @classmethod
    def diag(cls, values: Sequence, field: FieldSpec = Q) -> "Matrix":
        n = len(values)
        vals = [field.convert(v) for v in values]
        z = field.zero
        return cls(field, n, n, (vals[i] if i == j else z for i in range(n) for j in range(n)))

    # -- access ---------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def data(self) -> tuple:
        """Raw row-major entries."""
        return self._data

    def raw(self, i: int, j: int):
        return self._data[i * self.cols + j]

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i}, {j}) outside {self.rows}x{self.cols}")
        return Scalar(self.field, self._data[i * self.cols + j])

    def row(self, i: int) -> tuple:
        return self._data[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self._data[j::self.cols] if self.cols else ()

    def raw_rows(self) -> list[tuple]:
        return [self.row(i) for i in range(self.rows)]

    def tolist(self) -> list[list[Scalar]]:
        return [[Scalar(self.field, x) for x in self.row(i)] for i in range(self.rows)]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not any(self._data)

    def is_01(self) -> bool:
        return all(x == 0 or x == 1 for x in self._data)

    def trace(self) -> Scalar:
        _require_square(self)
        acc = self.field.zero
        for i in range(self.rows):
            acc = self.field.add(acc, self._data[i * self.cols + i])
        return Scalar(self.field, acc)

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows,
                      (self._data[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)))

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Matrix":
        c = self.cols
        return Matrix(self.field, len(row_idx), len(col_idx),
                      (self._data[i * c + j] for i in row_idx for j in col_idx))

    # -- arithmetic -----------------------------------------------------

    def _same_shape(self, other: "Matrix"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if self.shape != other.shape:
            raise ShapeError(f"shape {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        add = self.field.add
        return Matrix(self.field, self.rows, self.cols, map(add, self._data, other._data))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        sub = self.field.sub
        return Matrix(self.field, self.rows, self.cols, map(sub, self._data, other._data))

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, self.rows, self.cols, map(self.field.neg, self._data))

    def scale(self, c) -> "Matrix":
        c = self.field.convert(c)
        mul = self.field.mul
        return Matrix(self.field, self.rows, self.cols, (mul(c, x) for x in self._data))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and self._data == other._data)

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self._data))

    def __repr__(self):
        body = "; ".join(" ".join(render_raw(x, self.field) for x in r) for r in self.raw_rows())
        return f"Matrix<{self.field}, {self.rows}x{self.cols}>[{body}]"

    def __str__(self):
        cells = [[render_raw(x, self.field) for x in r] for r in self.raw_rows()]
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join(" ".join(c.rjust(width) for c in r) for r in cells)


def _require_square(A: Matrix):
    if not A.is_square():
        raise ShapeError(f"square matrix required, got {A.rows}x{A.cols}")


def kernel_form(A: Matrix) -> tuple[list[int], int, int]:
    """Integer form for the kernels: ``(ints, denominator, modulus)``.

    Over Q the matrix equals ``ints / denominator`` with a common
    denominator; over GF(p) the denominator is 1 and ``modulus == p``.
    """
    if A.field.is_rational:
        d = lcm(*(x.denominator for x in A._data)) if A._data else 1
        return [x.numerator * (d // x.denominator) for x in A._data], d, 0
    return list(A._data), 1, A.field.p


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    if A.field != B.field:
        raise FieldMismatch(f"{A.field} vs {B.field}")
    if A.cols != B.rows:
        raise ShapeError(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    a, da, p = kernel_form(A)
    b, db, _ = kernel_form(B)
    out = _backend.matmul(a, b, A.rows, A.cols, B.cols, p)
    if A.field.is_rational:
        d = da * db
        out = (Fraction(x, d) for x in out)
    return Matrix(A.field, A.rows, B.cols, out)


def hadamard_mul(A: Matrix, B: Matrix) -> Matrix:
    A._same_shape(B)
    return Matrix(A.field, A.rows, A.cols, map(A.field.mul, A._data, B._data))


def mat_pow(A: Matrix, r: int) -> Matrix:
    """A^r by binary powering, r >= 1."""
    _require_square(A)
    if r < 1:
        raise ValueError("power must be a positive integer")
    result = None
    base = A
    while True:
        if r & 1:
            result = base if result is None else mat_mul(result, base)
        r >>= 1
        if not r:
            return result
        base = mat_mul(base, base)


def hadamard_pow(A: Matrix, r: int) -> Matrix:
    if r < 1:
        raise ValueError("power must be a positive integer")
    pw = A.field.pow
    return Matrix(A.field, A.rows, A.cols, (pw(x, r) for x in A._data))


class Polynomial:
    """Univariate polynomial; ``coeffs[i]`` is the raw coefficient of λ^i."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: Iterable = ()):
        cs = [field.convert(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def x(cls, field: FieldSpec = Q) -> "Polynomial":
        return cls(field, [0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable, field: FieldSpec = Q) -> "Polynomial":
        p = cls(field, [1])
        for r in roots:
            p = p * cls(field, [field.neg(field.convert(r)), 1])
        return p

    @property
    def degree(self) -> int:
        """Highest nonzero index; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> Scalar:
        return Scalar(self.field, self.coeffs[i] if i < len(self.coeffs) else self.field.zero)

    @property
    def constant_term(self) -> Scalar:
        return self.coeff(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        """Evaluate at a scalar; returns a Scalar."""
        f = self.field
        v = f.convert(x)
        acc = f.zero
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, v), c)
        return Scalar(f, acc)

    def _check(self, other: "Polynomial"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        f = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (f.zero,) * (n - len(self.coeffs))
        b = other.coeffs + (f.zero,) * (n - len(other.coeffs))
        return Polynomial(f, map(f.add, a, b))

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.field, map(self.field.neg, self.coeffs))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        f = self.field
        if not isinstance(other, Polynomial):
            c = f.convert(other)
            return Polynomial(f, (f.mul(c, x) for x in self.coeffs))
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial(f)
        out = [f.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = f.add(out[i + j], f.mul(a, b))
        return Polynomial(f, out)

    __rmul__ = __mul__

    def monic(self) -> "Polynomial":
        if not self.coeffs:
            return self
        return self * self.field.inv(self.coeffs[-1])

    def __divmod__(self, other: "Polynomial"):
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        rem = list(self.coeffs)
        lead_inv = f.inv(other.coeffs[-1])
        dq = len(rem) - len(other.coeffs)
        quot = [f.zero] * max(dq + 1, 0)
        for shift in range(dq, -1, -1):
            c = f.mul(rem[shift + other.degree], lead_inv)
            quot[shift] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[shift + j] = f.sub(rem[shift + j], f.mul(c, b))
        return Polynomial(f, quot), Polynomial(f, rem)

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[0]

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "Polynomial(0)"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = render_raw(c, self.field)
            mono = "" if i == 0 else ("λ" if i == 1 else f"λ^{i}")
            if mono and c == 1:
                terms.append(mono)
            else:
                terms.append(f"{cs}{'*' if mono else ''}{mono}")
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return f"Polynomial({out})"


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_lcm(a: Polynomial, b: Polynomial) -> Polynomial:
    if a.is_zero() or b.is_zero():
        return Polynomial(a.field)
    return (a * b // poly_gcd(a, b)).monic()


def _eval_on_matrix(p: Polynomial, A: Matrix) -> Matrix:
    """Horner evaluation of p(A); the constant term multiplies I."""
    _require_square(A)
    if p.field != A.field:
        raise FieldMismatch(f"{p.field} vs {A.field}")
    n, f = A.rows, A.field
    if p.is_zero():
        return Matrix.zeros(n, n, f)
    ident = Matrix.identity(n, f)
    result = ident.scale(p.coeffs[-1])
    for c in reversed(p.coeffs[:-1]):
        result = mat_mul(result, A)
        if c:
            result = result + ident.scale(c)
    return result


def poly_eval_usual(p: Polynomial, A: Matrix) -> Matrix:
    """c_m A^m + ... + c_1 A for a polynomial without constant term."""
    if p.coeffs and p.coeffs[0]:
        raise ConstantTermError("polynomial must have zero constant term")
    return _eval_on_matrix(p, A)


def poly_eval_hadamard(p: Polynomial, A: Matrix) -> Matrix:
    """c_m A^(m) + ... + c_1 A, i.e. p applied to every entry."""
    if p.field != A.field:
        raise FieldMismatch(f"{p.field} vs {A.field}")
    if p.coeffs and p.coeffs[0]:
        raise ConstantTermError("polynomial must have zero constant term")
    result = Matrix.zeros(A.rows, A.cols, A.field)
    power = A
    for r, c in enumerate(p.coeffs[1:], start=1):
        if r > 1:
            power = hadamard_mul(power, A)
        if c:
            result = result + power.scale(c)
    return result


def rank(A: Matrix) -> int:
    """Rank by Gaussian elimination with exact pivots."""
    f = A.field
    rows = [list(r) for r in A.raw_rows()]
    rk = 0
    for c in range(A.cols):
        pivot = next((i for i in range(rk, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[rk], rows[pivot] = rows[pivot], rows[rk]
        inv = f.inv(rows[rk][c])
        prow = [f.mul(inv, x) for x in rows[rk]]
        rows[rk] = prow
        for i in range(rk + 1, len(rows)):
            factor = rows[i][c]
            if factor:
                rows[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(rows[i], prow)]
        rk += 1
    return rk


def _matvec(A: Matrix, v: list) -> list:
    f = A.field
    out = []
    for i in range(A.rows):
        acc = f.zero
        for a, x in zip(A.row(i), v):
            if a and x:
                acc = f.add(acc, f.mul(a, x))
        out.append(acc)
    return out


def _krylov_annihilator(A: Matrix, j: int) -> Polynomial:
    """Monic least-degree f with f(A) e_j = 0."""
    f = A.field
    n = A.rows
    basis: list[tuple[int, list, list]] = []  # (pivot, reduced vector, its polynomial)
    krylov = [f.one if t == j else f.zero for t in range(n)]
    for t in range(n + 1):
        w = list(krylov)
        poly = [f.zero] * t + [f.one]
        for piv, bv, bp in basis:
            c = w[piv]
            if c:
                w = [f.sub(x, f.mul(c, y)) for x, y in zip(w, bv)]
                for idx, y in enumerate(bp):
                    poly[idx] = f.sub(poly[idx], f.mul(c, y))
        piv = next((i for i, x in enumerate(w) if x), None)
        if piv is None:
            return Polynomial(f, poly)
        inv = f.inv(w[piv])
        basis.append((piv, [f.mul(inv, x) for x in w], [f.mul(inv, x) for x in poly]))
        krylov = _matvec(A, krylov)
    raise AssertionError("Krylov sequence failed to terminate")  # pragma: no cover


def minimal_polynomial(A: Matrix) -> Polynomial:
    """lcm of the Krylov annihilators of the standard basis vectors."""
    _require_square(A)
    result = Polynomial(A.field, [1])
    for j in range(A.rows):
        result = poly_lcm(result, _krylov_annihilator(A, j))
    return result


class Permutation:
    """Bijection on {0..n-1}; ``images[i]`` is where index i is sent."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def from_order(cls, order: Sequence[int]) -> "Permutation":
        """The permutation moving ``order[k]`` to position k."""
        images = [0] * len(order)
        for pos, idx in enumerate(order):
            images[idx] = pos
        return cls(images)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def inverse(self) -> "Permutation":
        return Permutation.from_order(self.images)

    def order(self) -> tuple[int, ...]:
        """Source index at each target position (the inverse's images)."""
        return self.inverse().images

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other."""
        return Permutation(self.images[i] for i in other.images)

    def matrix(self, field: FieldSpec = Q) -> Matrix:
        """P with P e_i = e_{σ(i)}, so that P A P^T = permute_similarity(A, σ)."""
        n = self.n
        data = [field.zero] * (n * n)
        for i, t in enumerate(self.images):
            data[t * n + i] = field.one
        return Matrix(field, n, n, data)

    def apply_vector(self, v: Sequence) -> tuple:
        """Entry i of v moves to position σ(i)."""
        out = [None] * self.n
        for i, t in enumerate(self.images):
            out[t] = v[i]
        return tuple(out)

    def pull_back(self, v: Sequence) -> tuple:
        """P^T v: entry i of the result is v[σ(i)]."""
        return tuple(v[t] for t in self.images)

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({list(self.images)})"


def permute_similarity(A: Matrix, sigma: Permutation) -> Matrix:
    """The matrix with ``result[σ(i)][σ(j)] = A[i][j]``, i.e. P A P^T."""
    _require_square(A)
    if sigma.n != A.rows:
        raise ShapeError(f"permutation of {sigma.n} applied to {A.rows}x{A.rows}")
    src = sigma.order()
    return A.submatrix(src, src)
