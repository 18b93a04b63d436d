"""Weighted disjoint idempotent decomposition A = Σ λ_i E_i.

Construction evaluates Lagrange idempotents p_i(A); verification is a
separate path that only multiplies and compares matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from hadpow.coincidence import check_finite
from hadpow.errors import CoincidenceFailure, InternalContradiction, ShapeError
from hadpow.field import FieldSpec, Scalar
from hadpow.matrix import Matrix, Polynomial, hadamard_mul, hadamard_pow, mat_mul, poly_eval_usual


@dataclass(frozen=True)
class IdempotentDecomposition:
    field: FieldSpec
    n: int
    lambdas: tuple[Scalar, ...]
    idempotents: tuple[Matrix, ...]

    @property
    def k(self) -> int:
        return len(self.lambdas)

    def support(self) -> Matrix:
        """E = E_1 + ... + E_k."""
        total = Matrix.zeros(self.n, self.n, self.field)
        for E in self.idempotents:
            total = total + E
        return total

    def weighted_sum(self, r: int = 1) -> Matrix:
        """Σ λ_i^r E_i."""
        total = Matrix.zeros(self.n, self.n, self.field)
        for lam, E in zip(self.lambdas, self.idempotents):
            total = total + E.scale(lam**r)
        return total


@dataclass(frozen=True)
class Verdict:
    """Verifier outcome; falsy when any reason code is present."""

    reasons: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.reasons

    def __bool__(self):
        return not self.reasons


def distinct_nonzero_entries(A: Matrix) -> list[Scalar]:
    """Distinct nonzero entries in order of first row-major occurrence."""
    seen = dict.fromkeys(x for x in A.data if x)
    return [Scalar(A.field, x) for x in seen]


def lagrange_polynomial(lambdas: Sequence[Scalar], i: int) -> Polynomial:
    """The polynomial equal to 1 at lambdas[i-1] and 0 at 0 and the other lambdas.

    ``i`` is 1-based.  The result has degree k and no constant term.
    """
    if not lambdas:
        raise ValueError("need at least one value")
    field = lambdas[0].field
    vals = [field.convert(x) for x in lambdas]
    if any(not v for v in vals):
        raise ValueError("interpolation nodes must be nonzero")
    if len(set(vals)) != len(vals):
        raise ValueError("interpolation nodes must be distinct")
    if not 1 <= i <= len(vals):
        raise IndexError(f"index {i} outside 1..{len(vals)}")
    target = vals[i - 1]
    others = vals[:i - 1] + vals[i:]
    numer = Polynomial.from_roots([field.zero, *others], field)
    denom = target
    for v in others:
        denom = field.mul(denom, field.sub(target, v))
    return numer * field.inv(denom)


def spectral_decompose(A: Matrix) -> IdempotentDecomposition:
    """Build E_i = p_i(A) for the distinct nonzero entries λ_i of A."""
    report = check_finite(A)
    if not report.holds:
        raise CoincidenceFailure(report)
    lambdas = distinct_nonzero_entries(A)
    idempotents = tuple(
        poly_eval_usual(lagrange_polynomial(lambdas, i), A) for i in range(1, len(lambdas) + 1)
    )
    d = IdempotentDecomposition(A.field, A.rows, tuple(lambdas), idempotents)
    verdict = verify_decomposition(d, A)
    if not verdict:
        raise InternalContradiction(f"constructed decomposition failed: {verdict.reasons}")
    return d


def verify_decomposition(d: IdempotentDecomposition, A: Matrix) -> Verdict:
    """Check every certificate invariant from scratch."""
    reasons: list[str] = []
    if d.field != A.field or not A.is_square() or d.n != A.rows:
        return Verdict(("shape_mismatch",))
    if len(d.lambdas) != len(d.idempotents) or not d.lambdas:
        return Verdict(("bad_count",))
    n = d.n
    if any(E.shape != (n, n) or E.field != d.field for E in d.idempotents):
        return Verdict(("shape_mismatch",))
    if any(lam.field != d.field for lam in d.lambdas):
        return Verdict(("shape_mismatch",))

    if any(lam.is_zero() for lam in d.lambdas):
        reasons.append("lambda_zero")
    if len(set(d.lambdas)) != len(d.lambdas):
        reasons.append("lambda_repeated")
    if not all(E.is_01() for E in d.idempotents):
        reasons.append("not_01")
    if any(E.is_zero() for E in d.idempotents):
        reasons.append("empty_idempotent")
    if any(mat_mul(E, E) != E for E in d.idempotents):
        reasons.append("not_idempotent")
    hadamard_clash = product_clash = False
    for a in range(d.k):
        for b in range(d.k):
            if a == b:
                continue
            Ea, Eb = d.idempotents[a], d.idempotents[b]
            if a < b and not hadamard_mul(Ea, Eb).is_zero():
                hadamard_clash = True
            if not mat_mul(Ea, Eb).is_zero():
                product_clash = True
    if hadamard_clash:
        reasons.append("hadamard_overlap")
    if product_clash:
        reasons.append("product_overlap")
    if d.weighted_sum() != A:
        reasons.append("reconstruction_mismatch")
    return Verdict(tuple(reasons))


def power_identity_check(d: IdempotentDecomposition, A: Matrix, R: int) -> bool:
    """A^r == Σ λ_i^r E_i == A^(r) for r = 1..R, powers by sequential products."""
    if d.field != A.field or d.n != A.rows or not A.is_square():
        raise ShapeError("decomposition does not match matrix")
    power = A
    for r in range(1, R + 1):
        if r > 1:
            power = mat_mul(power, A)
        if power != d.weighted_sum(r) or power != hadamard_pow(A, r):
            return False
    return True
