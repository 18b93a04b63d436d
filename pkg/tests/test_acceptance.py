"""Acceptance criteria 1-8, each reported as one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline;
they are also repeated in the terminal summary.
"""

import json
import random
from contextlib import contextmanager
from fractions import Fraction
from time import perf_counter

import pytest
from click.testing import CliRunner

from hadpow.canonical import canonical_form, is_idempotent_01, reconstruct_idempotent
from hadpow.certificate import render_matrix_file
from hadpow.cli import main
from hadpow.coincidence import check_finite, check_up_to
from hadpow.decomposition import power_identity_check, spectral_decompose, verify_decomposition
from hadpow.errors import CharTooSmall, StructureViolation
from hadpow.field import FieldSpec, Q, characteristic_admits
from hadpow.generator import (
    REJECTION,
    SAFE_COLUMNS,
    GenParams,
    enumerate_small,
    gen_idempotent01,
    gen_instance,
    gen_negative,
    random_shape,
    search_certificates,
)
from hadpow.matrix import Matrix, rank
from hadpow.rankone import rank_one_decompose, strip_permutation, stripped_sum, verify_rank_one

from conftest import GF2, GF5, GF7, GF11, ab_matrix, record_criterion

FIELDS = [Q, GF5, GF11]
PER_FIELD = 170  # 3 x 170 = 510 of each kind


@contextmanager
def criterion(number, title):
    """Record PASS only if the body finishes without raising."""
    detail = {"text": ""}
    start = perf_counter()
    try:
        yield detail
    except BaseException as exc:
        record_criterion(number, title, False, f"{type(exc).__name__}: {exc}"[:200])
        raise
    record_criterion(number, title, True, f"{detail['text']}; {perf_counter() - start:.2f}s".lstrip("; "))


@pytest.fixture(scope="module")
def positives():
    out = []
    for field in FIELDS:
        rng = random.Random(1000 + field.p)
        for _ in range(PER_FIELD):
            n = rng.randint(1, 8)
            params = GenParams(rng.getrandbits(64), field, mode=rng.choice([SAFE_COLUMNS, REJECTION]),
                               **random_shape(rng, field, n))
            out.append(gen_instance(params))
    return out


@pytest.fixture(scope="module")
def negatives():
    out = []
    for field in FIELDS:
        rng = random.Random(2000 + field.p)
        for _ in range(PER_FIELD):
            out.append(gen_negative(rng.getrandbits(64), field, rng.randint(2, 8)))
    return out


def _invoke(*args, input=None):
    return CliRunner().invoke(main, [str(a) for a in args], input=input)


def test_criterion_1_fixture():
    title = "A(alpha,beta) fixture at (2,3) and (-1,1/2)"
    with criterion(1, title) as info:
        start = perf_counter()
        for alpha, beta in [(2, 3), (-1, Fraction(1, 2))]:
            text = render_matrix_file(ab_matrix(alpha, beta))
            res = _invoke("check", input=text)
            assert res.exit_code == 0 and json.loads(res.output)["status"] == "holds"

            res = _invoke("decompose", input=text)
            dec = json.loads(res.output)["decomposition"]
            assert res.exit_code == 0 and dec["k"] == 2
            expected = {
                str(Fraction(alpha)): ["1000", "0000", "1000", "0000"],
                str(Fraction(beta)): ["0000", "0101", "0101", "0000"],
            }
            assert dict(zip(dec["lambdas"], dec["idempotents"])) == expected

            res = _invoke("rankone", input=text)
            rk = json.loads(res.output)["rankone"]
            assert res.exit_code == 0
            assert rk["mus"] == [str(Fraction(alpha)), str(Fraction(beta))]
            us = [[int(c) for c in u] for u in rk["us"]]
            vs = [[int(c) for c in v] for v in rk["vs"]]
            for i, u in enumerate(us):
                for j, v in enumerate(vs):
                    assert sum(a * b for a, b in zip(u, v)) == (i == j)
        elapsed = perf_counter() - start
        assert elapsed < 1.0, f"took {elapsed:.2f}s"
        info["text"] = "check/decompose/rankone exact"


def test_criterion_2_equivalence(positives, negatives):
    with criterion(2, "check_finite agrees with check_up_to(3n+3)") as info:
        start = perf_counter()
        disagreements = 0
        for A, _ in positives:
            finite = check_finite(A).holds
            assert finite, "generated positive instance fails"
            disagreements += finite != check_up_to(A, 3 * A.rows + 3).holds
        for B in negatives:
            finite = check_finite(B).holds
            assert not finite, "generated negative instance holds"
            disagreements += finite != check_up_to(B, 3 * B.rows + 3).holds
        elapsed = perf_counter() - start
        assert disagreements == 0, f"{disagreements} disagreements"
        assert elapsed < 30.0, f"took {elapsed:.2f}s"
        info["text"] = f"{len(positives)} positive, {len(negatives)} negative, 100% agreement"


def test_criterion_3_decomposition_roundtrip(positives):
    with criterion(3, "spectral_decompose verifies and satisfies the power identity to 2n") as info:
        start = perf_counter()
        for A, _ in positives:
            d = spectral_decompose(A)
            assert verify_decomposition(d, A), verify_decomposition(d, A).reasons
            assert power_identity_check(d, A, 2 * A.rows)
        elapsed = perf_counter() - start
        assert elapsed < 60.0, f"took {elapsed:.2f}s"
        info["text"] = f"{len(positives)} instances"


def test_criterion_4_canonical_roundtrip():
    with criterion(4, "canonical form reconstructs generated idempotents") as info:
        count = 0
        for field in [Q, GF7, GF11]:
            rng = random.Random(4000 + field.p)
            cap = 10 if field.is_rational else min(10, field.p - 1)
            for _ in range(170):
                n = rng.randint(1, cap)
                shape = random_shape(rng, field, n)
                params = GenParams(rng.getrandbits(64), field, mode=rng.choice([SAFE_COLUMNS, REJECTION]),
                                   **{**shape, "k": 1})
                assert params.admits_canonical
                E = gen_idempotent01(params)
                cf = canonical_form(E)
                assert reconstruct_idempotent(cf) == E
                trace_count = sum(1 for i in range(n) if E.raw(i, i))
                assert cf.m == rank(E) == trace_count == shape["m"]
                assert all(any(cf.U.raw(i, j) for i in range(cf.U.rows)) for j in range(cf.U.cols))
                assert all(any(cf.V.raw(i, j) for j in range(cf.V.cols)) for i in range(cf.V.rows))
                count += 1
        assert count >= 500
        info["text"] = f"{count} idempotents, n <= 10"


def _padded_ones(p, n):
    f = FieldSpec.gf(p)
    size = p + 1
    return Matrix(f, n, n, [1 if i < size and j < size else 0 for i in range(n) for j in range(n)])


def test_criterion_5_characteristic_counterexample():
    with criterion(5, "J_{p+1} over GF(p) hits the characteristic gate") as info:
        cases = [(2, 3), (2, 4), (2, 6), (3, 4), (3, 5), (3, 7)]
        for p, n in cases:
            J = _padded_ones(p, n)
            assert is_idempotent_01(J)
            with pytest.raises(CharTooSmall):
                canonical_form(J)
            with pytest.raises(StructureViolation) as violation:
                canonical_form(J, force=True)
            assert violation.value.block == "T"
        res = _invoke("canonical", input="field gf 2\nsize 3\n1 1 1\n1 1 1\n1 1 1\n")
        assert json.loads(res.output)["status"] == "char_too_small"
        info["text"] = f"{len(cases)} cases plus CLI status"


def test_criterion_6_exhaustive_oracle():
    with criterion(6, "exhaustive: passing set equals certified set") as info:
        start = perf_counter()
        counts = []
        for field, n, pool in [(GF2, 1, [0, 1]), (GF2, 2, [0, 1]), (GF2, 3, [0, 1]), (Q, 2, [0, 1])]:
            results = enumerate_small(field, n, pool)
            certified = search_certificates(field, n, pool)
            assert all(verify_decomposition(d, A) for A, d in certified.items())
            passing = {A for A, holds in results if holds}
            assert passing == set(certified)
            counts.append(len(results))
        assert counts == [2, 16, 512, 16]
        elapsed = perf_counter() - start
        assert elapsed < 60.0, f"took {elapsed:.2f}s"
        info["text"] = "GF(2) n=1,2,3 and Q n=2 pool {0,1}, 100% agreement"


def test_criterion_7_rank_one(positives):
    with criterion(7, "rank-one factorization verifies, m = rank, stripped sum is A") as info:
        checked = gated = 0
        for A, _ in positives:
            if not characteristic_admits(A.field, A.rows):
                with pytest.raises(CharTooSmall):
                    rank_one_decompose(A)
                gated += 1
                continue
            rod = rank_one_decompose(A)
            assert verify_rank_one(rod, A)
            assert rod.m == rank(A)
            assert stripped_sum(A.field, A.rows, strip_permutation(rod)) == A
            checked += 1
        info["text"] = f"{checked} instances, {gated} outside the characteristic gate"


def _tampers():
    def lam_swap(c):
        d = c["decomposition"]
        d["lambdas"].reverse()

    def e_overlap(c):
        d = c["decomposition"]
        d["idempotents"][1][0] = d["idempotents"][0][0]

    def mu_zero(c):
        c["rankone"]["mus"][0] = "0"

    def vector_swap(c):
        us = c["rankone"]["us"]
        us[0], us[1] = us[1], us[0]

    def sigma_rankone(c):
        s = c["rankone"]["sigma"]
        s[0], s[1] = s[1], s[0]

    def sigma_canonical(c):
        s = c["canonical"]["sigma"]
        s[2], s[3] = s[3], s[2]

    def bit_flip(c):
        u = c["rankone"]["us"][0]
        c["rankone"]["us"][0] = u[:-1] + ("1" if u[-1] == "0" else "0")

    return {
        "lambda swap": lam_swap,
        "E overlap": e_overlap,
        "mu zeroing": mu_zero,
        "vector swap": vector_swap,
        "permutation corruption (rankone)": sigma_rankone,
        "permutation corruption (canonical)": sigma_canonical,
        "entry flip (certificate)": bit_flip,
    }


def test_criterion_8_tamper_suite(tmp_path):
    with criterion(8, "tampered certificates rejected with exit 1") as info:
        matrix = tmp_path / "a.txt"
        matrix.write_text(render_matrix_file(ab_matrix(2, 3)))
        res = _invoke("rankone", "-i", matrix)
        assert res.exit_code == 0
        pristine = json.loads(res.output)
        good = tmp_path / "good.json"
        good.write_text(res.output)
        assert _invoke("verify", "-i", matrix, "-c", good).exit_code == 0

        rejected = []
        for name, mutate in _tampers().items():
            cert = json.loads(json.dumps(pristine))
            mutate(cert)
            assert cert != pristine, name
            path = tmp_path / "bad.json"
            path.write_text(json.dumps(cert))
            code = _invoke("verify", "-i", matrix, "-c", path).exit_code
            assert code == 1, f"{name}: exit {code}"
            rejected.append(name)

        # entry flip on the matrix side: certificate untouched, one entry changed
        flipped = tmp_path / "flipped.txt"
        flipped.write_text(render_matrix_file(ab_matrix(2, 3)).replace("0 3 0 3", "1 3 0 3"))
        code = _invoke("verify", "-i", flipped, "-c", good).exit_code
        assert code == 1, f"entry flip (matrix): exit {code}"
        rejected.append("entry flip (matrix)")
        info["text"] = f"{len(rejected)} mutations rejected"
