"""Decide whether the ordinary powers of A coincide with its Hadamard powers.

It suffices to compare A^r with A^(r) for r = 2..n+1; :func:`check_up_to`
runs the same scan to an arbitrary bound and serves as the oracle for the
infinite statement.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from hadpow import _backend
from hadpow.errors import ShapeError, ZeroMatrixError
from hadpow.field import Scalar
from hadpow.matrix import Matrix, Polynomial, kernel_form, poly_eval_hadamard, poly_eval_usual


@dataclass(frozen=True)
class Witness:
    """First failing power: (A^r)[i, j] = lhs but a_ij^r = rhs.  i, j are 1-based."""

    r: int
    i: int
    j: int
    lhs: Scalar
    rhs: Scalar


@dataclass(frozen=True)
class CoincidenceReport:
    holds: bool
    witness: Optional[Witness] = None

    def __bool__(self):
        return self.holds


def _validate(A: Matrix):
    if not A.is_square():
        raise ShapeError(f"square matrix required, got {A.rows}x{A.cols}")
    if A.is_zero():
        raise ZeroMatrixError("the zero matrix is excluded")


def check_up_to(A: Matrix, R: int) -> CoincidenceReport:
    """Compare A^r and A^(r) exactly for every r in 2..R."""
    _validate(A)
    if R < 2:
        raise ValueError("R must be at least 2")
    n = A.rows
    ints, d, p = kernel_form(A)
    # over Q both sides of the comparison share the denominator d^r
    hit = _backend.power_scan(ints, n, R, p)
    if hit is None:
        return CoincidenceReport(True)
    r, idx, lhs, rhs = hit
    if A.field.is_rational:
        lhs, rhs = Fraction(lhs, d**r), Fraction(rhs, d**r)
    i, j = divmod(idx, n)
    return CoincidenceReport(
        False, Witness(r, i + 1, j + 1, Scalar(A.field, lhs), Scalar(A.field, rhs))
    )


def check_finite(A: Matrix) -> CoincidenceReport:
    """The finite test: r ranges over 2..n+1."""
    _validate(A)
    return check_up_to(A, A.rows + 1)


def check_poly_equiv(A: Matrix, p: Polynomial) -> bool:
    """p(A) == p^H(A) for a polynomial without constant term."""
    return poly_eval_usual(p, A) == poly_eval_hadamard(p, A)
