"""Biorthogonal rank-one factorization P A P^T = Σ μ_i v_i u_i^T."""

from __future__ import annotations

from dataclasses import dataclass

from hadpow.canonical import canonical_form
from hadpow.decomposition import IdempotentDecomposition, Verdict, spectral_decompose
from hadpow.errors import CharTooSmall, InternalContradiction
from hadpow.field import FieldSpec, Scalar, characteristic_admits
from hadpow.matrix import Matrix, Permutation, permute_similarity


@dataclass(frozen=True)
class RankOneDecomposition:
    """``us[i]`` is row i of [I U 0 0]; ``vs[i]`` is column i of [I;0;V;0].

    Vectors are tuples of Python ints 0/1, independent of the field.
    """

    field: FieldSpec
    sigma: Permutation
    mus: tuple[Scalar, ...]
    us: tuple[tuple[int, ...], ...]
    vs: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.mus)

    @property
    def n(self) -> int:
        return self.sigma.n


def _outer_sum(field: FieldSpec, n: int, terms) -> Matrix:
    """Σ μ v u^T for (μ raw, v, u) triples."""
    data = [field.zero] * (n * n)
    for mu, v, u in terms:
        for a in range(n):
            if not v[a]:
                continue
            for b in range(n):
                if u[b]:
                    data[a * n + b] = field.add(data[a * n + b], mu)
    return Matrix(field, n, n, data)


def rank_one_decompose(A: Matrix, decomposition: IdempotentDecomposition | None = None) -> RankOneDecomposition:
    """Combine the idempotent decomposition with the canonical form of its support.

    μ_i is the λ_j whose permuted idempotent has a 1 at diagonal (i, i).
    """
    n = A.rows
    if A.is_square() and not characteristic_admits(A.field, n):
        raise CharTooSmall(A.field, n)
    d = decomposition if decomposition is not None else spectral_decompose(A)
    cf = canonical_form(d.support())
    sigma, m = cf.sigma, cf.m
    right = cf.right_factor()
    left = cf.left_factor()
    us = tuple(tuple(int(x) for x in right.row(i)) for i in range(m))
    vs = tuple(tuple(int(x) for x in left.col(i)) for i in range(m))

    permuted = [permute_similarity(E, sigma) for E in d.idempotents]
    mus = []
    for i in range(m):
        owners = [lam for lam, PE in zip(d.lambdas, permuted) if PE.raw(i, i) == 1]
        if len(owners) != 1:
            raise InternalContradiction(f"diagonal position {i + 1} owned by {len(owners)} idempotents")
        mus.append(owners[0])

    rod = RankOneDecomposition(A.field, sigma, tuple(mus), us, vs)
    verdict = verify_rank_one(rod, A)
    if not verdict:
        raise InternalContradiction(f"constructed factorization failed: {verdict.reasons}")
    return rod


def strip_permutation(rod: RankOneDecomposition) -> list[tuple[Scalar, tuple[int, ...], tuple[int, ...]]]:
    """(μ_i, P^T v_i, P^T u_i) so that A = Σ μ_i ṽ_i ũ_i^T."""
    pull = rod.sigma.pull_back
    return [(mu, pull(v), pull(u)) for mu, u, v in zip(rod.mus, rod.us, rod.vs)]


def verify_rank_one(rod: RankOneDecomposition, A: Matrix) -> Verdict:
    """Recheck the factorization without using any construction internals."""
    n = rod.n
    if rod.field != A.field or not A.is_square() or A.rows != n:
        return Verdict(("shape_mismatch",))
    if not (len(rod.us) == len(rod.vs) == len(rod.mus)):
        return Verdict(("bad_count",))
    if any(len(u) != n for u in rod.us) or any(len(v) != n for v in rod.vs):
        return Verdict(("shape_mismatch",))
    reasons = []
    if any(mu.field != rod.field for mu in rod.mus):
        return Verdict(("shape_mismatch",))
    if any(mu.is_zero() for mu in rod.mus):
        reasons.append("zero_weight")
    if any(x not in (0, 1) for vec in rod.us + rod.vs for x in vec):
        reasons.append("not_01")
    for i, u in enumerate(rod.us):
        for j, v in enumerate(rod.vs):
            if sum(a * b for a, b in zip(u, v)) != (1 if i == j else 0):
                reasons.append("not_biorthogonal")
                break
        else:
            continue
        break
    terms = [(mu.value, v, u) for mu, u, v in zip(rod.mus, rod.us, rod.vs)]
    if _outer_sum(rod.field, n, terms) != permute_similarity(A, rod.sigma):
        reasons.append("reconstruction_mismatch")
    return Verdict(tuple(reasons))


def stripped_sum(field: FieldSpec, n: int, stripped) -> Matrix:
    """Σ μ ṽ ũ^T for the output of :func:`strip_permutation`."""
    return _outer_sum(field, n, [(mu.value, v, u) for mu, v, u in stripped])
