from fractions import Fraction

import pytest
from hypothesis import strategies as st

from hadpow import _pykernels
from hadpow.field import FieldSpec, Q
from hadpow.matrix import Matrix

GF2, GF3, GF5, GF7, GF11 = (FieldSpec.gf(p) for p in (2, 3, 5, 7, 11))
MERSENNE61 = FieldSpec.gf(2**61 - 1)

try:
    from hadpow import _ckernels
except ImportError:  # pragma: no cover
    _ckernels = None

KERNEL_MODULES = [pytest.param(_pykernels, id="python")]
if _ckernels is not None:
    KERNEL_MODULES.append(pytest.param(_ckernels, id="cython"))


def ab_matrix(alpha, beta, field=Q) -> Matrix:
    """4x4 two-group example: alpha on rows 1,3 x col 1, beta on rows 2,3 x cols 2,4."""
    return Matrix.from_rows(
        [[alpha, 0, 0, 0], [0, beta, 0, beta], [alpha, beta, 0, beta], [0, 0, 0, 0]], field
    )


def naive_matmul(a, b, field):
    """Textbook triple loop on nested lists of raw values; test oracle only."""
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = field.zero
            for t in range(k):
                acc = field.add(acc, field.mul(a[i][t], b[t][j]))
            row.append(acc)
        out.append(row)
    return out


def rows_of(A: Matrix):
    return [list(r) for r in A.raw_rows()]


small_fractions = st.builds(
    Fraction, st.integers(min_value=-6, max_value=6), st.integers(min_value=1, max_value=4)
)

fields = st.sampled_from([Q, GF2, GF3, GF5, GF7, GF11, MERSENNE61])


@st.composite
def square_matrices(draw, min_n=1, max_n=5, field=None):
    f = field if field is not None else draw(fields)
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    if f.is_rational:
        entry = st.one_of(st.just(Fraction(0)), small_fractions)
    else:
        entry = st.integers(min_value=0, max_value=min(f.p - 1, 10**12))
    return Matrix(f, n, n, draw(st.lists(entry, min_size=n * n, max_size=n * n)))


@st.composite
def permutations(draw, n):
    return draw(st.permutations(list(range(n))))


# -- acceptance reporting -----------------------------------------------------

_ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(number: int, title: str, ok: bool, detail: str = "") -> str:
    line = f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title}"
    if detail:
        line += f"  [{detail}]"
    _ACCEPTANCE_LINES[number] = line
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(_ACCEPTANCE_LINES):
            terminalreporter.write_line(_ACCEPTANCE_LINES[number])
