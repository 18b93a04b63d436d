"""Seeded instance generation and exhaustive small-case enumeration.

Randomness comes from :class:`random.Random` (MT19937) seeded with the
64-bit seed, so identical parameters reproduce identical matrices.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from hadpow.canonical import is_idempotent_01
from hadpow.coincidence import check_finite
from hadpow.decomposition import IdempotentDecomposition, verify_decomposition
from hadpow.errors import BudgetExceeded, FieldTooSmall, InternalContradiction, ZeroMatrixError
from hadpow.field import FieldSpec, Q, Scalar, characteristic_admits
from hadpow.matrix import Matrix, Permutation, mat_mul, permute_similarity

PRNG_NAME = "python-random-mt19937"
SAFE_COLUMNS = "safe_columns"
REJECTION = "rejection"
DEFAULT_ENUM_BUDGET = 2**24


@dataclass(frozen=True)
class GenParams:
    seed: int
    field: FieldSpec = Q
    m: int = 1
    s2: int = 0
    s3: int = 0
    s4: int = 0
    k: int = 1
    mode: str = SAFE_COLUMNS
    rejection_budget: int = 1000

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.m < 1 or min(self.s2, self.s3, self.s4) < 0:
            raise ValueError("need m >= 1 and nonnegative class sizes")
        if not 1 <= self.k <= self.m:
            raise ValueError(f"k must lie in 1..m, got k={self.k}, m={self.m}")
        if self.mode not in (SAFE_COLUMNS, REJECTION):
            raise ValueError(f"unknown mode {self.mode!r}")

    @property
    def n(self) -> int:
        return self.m + self.s2 + self.s3 + self.s4

    @property
    def admits_canonical(self) -> bool:
        # the construction itself is valid in any characteristic
        return characteristic_admits(self.field, self.n)


def _random_01_rows(rng: random.Random, rows: int, cols: int) -> list[list[int]]:
    """Random (0,1) rows, none of them zero (cols must be positive)."""
    out = []
    for _ in range(rows):
        row = [rng.randint(0, 1) for _ in range(cols)]
        if not any(row):
            row[rng.randrange(cols)] = 1
        out.append(row)
    return out


def _sample_blocks(params: GenParams, rng: random.Random) -> tuple[list[list[int]], list[list[int]]]:
    """U (m x s2, no zero column) and V (s3 x m, no zero row) with VU a (0,1)-matrix."""
    m, s2, s3 = params.m, params.s2, params.s3
    if params.mode == SAFE_COLUMNS:
        U = [[0] * s2 for _ in range(m)]
        for q in range(s2):
            U[rng.randrange(m)][q] = 1
        V = _random_01_rows(rng, s3, m)
        return U, V
    for _ in range(params.rejection_budget):
        Ut = _random_01_rows(rng, s2, m)  # columns of U
        U = [[Ut[q][i] for q in range(s2)] for i in range(m)]
        V = _random_01_rows(rng, s3, m)
        if all(sum(V[a][i] * U[i][b] for i in range(m)) <= 1 for a in range(s3) for b in range(s2)):
            return U, V
    raise BudgetExceeded(f"no (0,1) product VU after {params.rejection_budget} attempts")


def _frame(params: GenParams, rng: random.Random):
    """Unscrambled factors: us (rows of [I U 0 0]) and vs (columns of [I;0;V;0])."""
    m, s2, s3, s4 = params.m, params.s2, params.s3, params.s4
    U, V = _sample_blocks(params, rng)
    us = [[1 if j == i else 0 for j in range(m)] + U[i] + [0] * (s3 + s4) for i in range(m)]
    vs = [[1 if a == i else 0 for a in range(m)] + [0] * s2 + [V[b][i] for b in range(s3)] + [0] * s4
          for i in range(m)]
    return us, vs


def _outer_01(field: FieldSpec, n: int, pairs) -> Matrix:
    data = [0] * (n * n)
    for v, u in pairs:
        for a in range(n):
            if v[a]:
                for b in range(n):
                    if u[b]:
                        data[a * n + b] += 1
    return Matrix(field, n, n, map(field.convert, data))


def _scramble(rng: random.Random, n: int) -> Permutation:
    images = list(range(n))
    rng.shuffle(images)
    return Permutation(images)


def gen_idempotent01(params: GenParams) -> Matrix:
    """Random idempotent (0,1)-matrix with the requested class sizes, rank m."""
    rng = random.Random(params.seed)
    us, vs = _frame(params, rng)
    E = _outer_01(params.field, params.n, zip(vs, us))
    E = permute_similarity(E, _scramble(rng, params.n))
    if not is_idempotent_01(E):
        raise InternalContradiction("generated matrix is not an idempotent (0,1)-matrix")
    return E


def _sample_lambdas(field: FieldSpec, k: int, rng: random.Random) -> list:
    if field.is_rational:
        out: list = []
        while len(out) < k:
            x = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 4))
            if x not in out:
                out.append(x)
        return out
    if field.p - 1 < k:
        raise FieldTooSmall(f"GF({field.p}) has only {field.p - 1} nonzero elements, need {k}")
    if field.p <= 10**6:
        return rng.sample(range(1, field.p), k)
    out = []
    while len(out) < k:
        x = rng.randrange(1, field.p)
        if x not in out:
            out.append(x)
    return out


def gen_instance(params: GenParams) -> tuple[Matrix, IdempotentDecomposition]:
    """Positive instance A = Σ λ_j E_j together with its ground-truth certificate."""
    field, n, m, k = params.field, params.n, params.m, params.k
    if not field.is_rational and field.p - 1 < k:
        raise FieldTooSmall(f"GF({field.p}) has only {field.p - 1} nonzero elements, need {k}")
    rng = random.Random(params.seed)
    us, vs = _frame(params, rng)
    order = list(range(m))
    rng.shuffle(order)
    cuts = sorted(rng.sample(range(1, m), k - 1)) if k > 1 else []
    groups = [order[a:b] for a, b in zip([0, *cuts], [*cuts, m])]
    lambdas = _sample_lambdas(field, k, rng)
    sigma = _scramble(rng, n)

    idempotents = []
    A = Matrix.zeros(n, n, field)
    for lam, group in zip(lambdas, groups):
        E = _outer_01(field, n, ((vs[i], us[i]) for i in group))
        E = permute_similarity(E, sigma)
        idempotents.append(E)
        A = A + E.scale(lam)
    d = IdempotentDecomposition(field, n, tuple(Scalar(field, x) for x in lambdas), tuple(idempotents))
    if not check_finite(A).holds or not verify_decomposition(d, A):
        raise InternalContradiction("generated instance fails its own certificate")
    return A, d


def random_shape(rng: random.Random, field: FieldSpec, n: int, k_max: int | None = None) -> dict:
    """Class sizes (m, s2, s3, s4) summing to n and a feasible group count k."""
    m = rng.randint(1, n)
    rest = n - m
    s2 = rng.randint(0, rest)
    s3 = rng.randint(0, rest - s2)
    s4 = rest - s2 - s3
    cap = m if field.is_rational else min(m, field.p - 1)
    if k_max is not None:
        cap = min(cap, k_max)
    return dict(m=m, s2=s2, s3=s3, s4=s4, k=rng.randint(1, cap))


def gen_negative(seed: int, field: FieldSpec, n: int, budget: int = 100) -> Matrix:
    """A matrix failing the coincidence test, made by mutating a positive instance."""
    if n < 2:
        raise ValueError("negative instances need n >= 2")
    rng = random.Random(seed)
    for _ in range(budget):
        shape = random_shape(rng, field, n)
        A, _ = gen_instance(GenParams(rng.getrandbits(64), field, **shape))
        rows = [list(r) for r in A.raw_rows()]
        if rng.random() < 0.5 or (not field.is_rational and field.p == 2):
            i, j = rng.randrange(n), rng.randrange(n)
            old = rows[i][j]
            if field.is_rational:
                fresh = Fraction(rng.randint(-9, 9), rng.randint(1, 3))
            else:
                fresh = rng.randrange(field.p)
            if fresh == old:
                continue
            rows[i][j] = fresh
        else:
            i = rng.randrange(n)
            if field.is_rational:
                c = Fraction(rng.choice([-3, -2, -1, 2, 3]), rng.randint(1, 2))
            else:
                c = rng.randrange(2, field.p)
            rows[i] = [field.mul(c, x) for x in rows[i]]
        B = Matrix.from_rows(rows, field)
        if B.is_zero():
            continue
        if not check_finite(B).holds:
            return B
    raise BudgetExceeded(f"no negative instance after {budget} mutations")


def _all_matrices(field: FieldSpec, n: int, pool: Sequence):
    for entries in itertools.product(pool, repeat=n * n):
        yield Matrix(field, n, n, entries)


def enumerate_small(field: FieldSpec, n: int, entry_pool: Sequence,
                    budget: int = DEFAULT_ENUM_BUDGET) -> list[tuple[Matrix, bool]]:
    """Every n x n matrix over ``entry_pool`` with its finite coincidence verdict.

    The zero matrix is reported as failing (the test excludes it).
    Output is in lexicographic order of the entry sequence.
    """
    pool = list(dict.fromkeys(field.convert(x) for x in entry_pool))
    if len(pool) ** (n * n) > budget:
        raise BudgetExceeded(f"{len(pool)}^{n * n} candidates exceed budget {budget}")
    out = []
    for A in _all_matrices(field, n, pool):
        try:
            holds = check_finite(A).holds
        except ZeroMatrixError:
            holds = False
        out.append((A, holds))
    return out


def search_certificates(field: FieldSpec, n: int, entry_pool: Sequence,
                        budget: int = DEFAULT_ENUM_BUDGET) -> dict[Matrix, IdempotentDecomposition]:
    """Brute-force every decomposition Σ λ_i E_i with entries from the pool.

    Idempotent (0,1)-matrices are found by enumerating all 2^(n²) patterns;
    weights range over the nonzero pool elements.  Returns one verified
    certificate per reachable matrix.
    """
    pool = list(dict.fromkeys(field.convert(x) for x in entry_pool))
    if 2 ** (n * n) > budget:
        raise BudgetExceeded(f"2^{n * n} patterns exceed budget {budget}")
    idem = [E for E in _all_matrices(field, n, [field.zero, field.one])
            if not E.is_zero() and mat_mul(E, E) == E]
    weights = [x for x in pool if x]
    found: dict[Matrix, IdempotentDecomposition] = {}

    def disjoint(a: Matrix, b: Matrix) -> bool:
        return (not any(x and y for x, y in zip(a.data, b.data))
                and mat_mul(a, b).is_zero() and mat_mul(b, a).is_zero())

    def extend(start: int, chosen: list[Matrix]):
        for w in itertools.permutations(weights, len(chosen)) if chosen else ():
            d = IdempotentDecomposition(field, n, tuple(Scalar(field, x) for x in w), tuple(chosen))
            A = d.weighted_sum()
            if A not in found and all(x in pool for x in A.data) and verify_decomposition(d, A):
                found[A] = d
        if len(chosen) == len(weights):
            return
        for t in range(start, len(idem)):
            if all(disjoint(idem[t], E) for E in chosen):
                extend(t + 1, chosen + [idem[t]])

    extend(0, [])
    return found
