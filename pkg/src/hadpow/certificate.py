"""Matrix files and JSON certificates.

Matrix file::

    field rational        (or: field gf <p>)
    size <n>
    <n rows of n whitespace-separated scalars>

Certificates are JSON objects with a ``status`` and any of the sections
``witness``, ``decomposition``, ``canonical``, ``rankone``, plus ``meta``.
Indices in certificates are 1-based; 0/1 data is written as strings of
'0'/'1' characters, one string per row or vector.
"""

from __future__ import annotations

import json
import re
from typing import Any, Optional

from hadpow import __version__
from hadpow.canonical import CanonicalForm, canonical_form, reconstruct_idempotent
from hadpow.coincidence import check_finite
from hadpow.decomposition import IdempotentDecomposition, spectral_decompose, verify_decomposition
from hadpow.errors import (
    CharTooSmall,
    CoincidenceFailure,
    HadpowError,
    ZeroMatrixError,
)
from hadpow.field import FieldSpec, Q, characteristic_admits, parse_scalar, render_raw, render_scalar
from hadpow.matrix import Matrix, Permutation, hadamard_pow, mat_mul, rank
from hadpow.rankone import RankOneDecomposition, rank_one_decompose, verify_rank_one

_FIELD_RE = re.compile(r"^\s*(?:gf|GF)\s*[:( ]?\s*(\d+)\s*\)?\s*$")


class FormatError(HadpowError, ValueError):
    """Malformed matrix file, field string or certificate."""


def parse_field(text: str) -> FieldSpec:
    """Accepts ``rational``/``q`` and ``gf <p>``, ``gf:<p>``, ``gf<p>``."""
    t = text.strip()
    if t.lower() in ("rational", "q", "qq"):
        return Q
    match = _FIELD_RE.match(t)
    if not match:
        raise FormatError(f"unknown field {text!r}")
    try:
        return FieldSpec.gf(int(match.group(1)))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def field_label(field: FieldSpec) -> str:
    return "rational" if field.is_rational else f"gf {field.p}"


# -- matrix files -------------------------------------------------------------


def parse_matrix_file(text: str) -> Matrix:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if len(lines) < 2:
        raise FormatError("expected 'field ...' and 'size ...' header lines")
    head = lines[0].split(None, 1)
    if len(head) != 2 or head[0] != "field":
        raise FormatError(f"bad field line {lines[0]!r}")
    field = parse_field(head[1])
    size = lines[1].split()
    if len(size) != 2 or size[0] != "size" or not size[1].isdigit() or int(size[1]) < 1:
        raise FormatError(f"bad size line {lines[1]!r}")
    n = int(size[1])
    body = lines[2:]
    if len(body) != n:
        raise FormatError(f"expected {n} rows, found {len(body)}")
    data = []
    for lineno, ln in enumerate(body, start=1):
        tokens = ln.split()
        if len(tokens) != n:
            raise FormatError(f"row {lineno}: expected {n} entries, found {len(tokens)}")
        for tok in tokens:
            try:
                data.append(parse_scalar(tok, field).value)
            except (ValueError, ZeroDivisionError) as exc:
                raise FormatError(f"row {lineno}: {exc}") from None
    return Matrix(field, n, n, data)


def render_matrix_file(A: Matrix) -> str:
    lines = [f"field {field_label(A.field)}", f"size {A.rows}"]
    lines += [" ".join(render_raw(x, A.field) for x in row) for row in A.raw_rows()]
    return "\n".join(lines) + "\n"


# -- section encoders ---------------------------------------------------------


def _bits(values) -> str:
    return "".join("1" if x else "0" for x in values)


def _unbits(text: str, length: int, what: str) -> list[int]:
    if not isinstance(text, str) or len(text) != length or set(text) - {"0", "1"}:
        raise FormatError(f"{what}: expected {length} characters of 0/1, got {text!r}")
    return [int(c) for c in text]


def _sigma_out(sigma: Permutation) -> list[int]:
    return [t + 1 for t in sigma.images]


def _sigma_in(images, n: int) -> Permutation:
    if not isinstance(images, list) or len(images) != n:
        raise FormatError(f"sigma must list {n} images")
    try:
        return Permutation(int(t) - 1 for t in images)
    except (ValueError, TypeError) as exc:
        raise FormatError(f"sigma: {exc}") from None


def encode_witness(report) -> dict:
    w = report.witness
    return {"r": w.r, "i": w.i, "j": w.j, "lhs": render_scalar(w.lhs), "rhs": render_scalar(w.rhs)}


def encode_decomposition(d: IdempotentDecomposition) -> dict:
    return {
        "k": d.k,
        "lambdas": [render_scalar(x) for x in d.lambdas],
        "idempotents": [[_bits(r) for r in E.raw_rows()] for E in d.idempotents],
    }


def decode_decomposition(sec: dict, field: FieldSpec, n: int) -> IdempotentDecomposition:
    try:
        lambdas = tuple(parse_scalar(str(x), field) for x in sec["lambdas"])
        mats = []
        for t, rows in enumerate(sec["idempotents"]):
            if len(rows) != n:
                raise FormatError(f"idempotent {t + 1}: expected {n} rows")
            mats.append(Matrix.from_rows([_unbits(r, n, f"idempotent {t + 1}") for r in rows], field))
        if int(sec["k"]) != len(lambdas):
            raise FormatError("k disagrees with the number of lambdas")
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"decomposition: {exc}") from None
    return IdempotentDecomposition(field, n, lambdas, tuple(mats))


def encode_canonical(cf: CanonicalForm) -> dict:
    return {
        "sigma": _sigma_out(cf.sigma),
        "m": cf.m,
        "class_sizes": list(cf.class_sizes),
        "U": [_bits(r) for r in cf.U.raw_rows()],
        "V": [_bits(r) for r in cf.V.raw_rows()],
    }


def decode_canonical(sec: dict, field: FieldSpec, n: int) -> CanonicalForm:
    try:
        m = int(sec["m"])
        sizes = tuple(int(s) for s in sec["class_sizes"])
        if len(sizes) != 4 or sum(sizes) != n or min(sizes) < 0:
            raise FormatError("class_sizes must be four counts summing to n")
        _, s2, s3, _ = sizes
        if len(sec["U"]) != m or len(sec["V"]) != s3:
            raise FormatError("U/V row counts disagree with class sizes")
        U = Matrix.from_rows([_unbits(r, s2, "U row") for r in sec["U"]], field, cols=s2)
        V = Matrix.from_rows([_unbits(r, m, "V row") for r in sec["V"]], field, cols=m)
        return CanonicalForm(_sigma_in(sec["sigma"], n), m, sizes, U, V, mat_mul(V, U))
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"canonical: {exc}") from None


def encode_rankone(rod: RankOneDecomposition) -> dict:
    return {
        "sigma": _sigma_out(rod.sigma),
        "m": rod.m,
        "mus": [render_scalar(x) for x in rod.mus],
        "us": [_bits(u) for u in rod.us],
        "vs": [_bits(v) for v in rod.vs],
    }


def decode_rankone(sec: dict, field: FieldSpec, n: int) -> RankOneDecomposition:
    try:
        mus = tuple(parse_scalar(str(x), field) for x in sec["mus"])
        us = tuple(tuple(_unbits(u, n, "u vector")) for u in sec["us"])
        vs = tuple(tuple(_unbits(v, n, "v vector")) for v in sec["vs"])
        if "m" in sec and int(sec["m"]) != len(mus):
            raise FormatError("m disagrees with the number of weights")
        return RankOneDecomposition(field, _sigma_in(sec["sigma"], n), mus, us, vs)
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"rankone: {exc}") from None


# -- building -----------------------------------------------------------------


def meta(field: FieldSpec, seed: Optional[int] = None, **extra) -> dict:
    out = {"tool_version": __version__, "seed": seed, "field": field_label(field)}
    out.update(extra)
    return out


SECTIONS = {
    "check": (),
    "decompose": ("decomposition",),
    "canonical": ("decomposition", "canonical"),
    "rankone": ("decomposition", "canonical", "rankone"),
}


def build_certificate(command: str, A: Matrix, seed: Optional[int] = None,
                      decomposition: Optional[IdempotentDecomposition] = None) -> dict:
    """Run ``command`` on A and return the certificate (never raises HadpowError).

    ``decomposition`` lets a generator supply its ground truth instead of
    recomputing one.
    """
    wanted = SECTIONS[command]
    cert: dict[str, Any] = {"status": "holds"}
    try:
        report = check_finite(A)
        if not report.holds:
            cert["status"] = "fails"
            cert["witness"] = encode_witness(report)
        elif wanted:
            d = decomposition if decomposition is not None else spectral_decompose(A)
            cert["decomposition"] = encode_decomposition(d)
            if "canonical" in wanted:
                cert["canonical"] = encode_canonical(canonical_form(d.support()))
            if "rankone" in wanted:
                cert["rankone"] = encode_rankone(rank_one_decompose(A, d))
    except CoincidenceFailure as exc:
        cert = {"status": "fails", "witness": encode_witness(exc.report)}
    except HadpowError as exc:
        cert = {"status": exc.status, "reason": str(exc)}
    cert["meta"] = meta(A.field, seed)
    return cert


def dump_certificate(cert: dict) -> str:
    return json.dumps(cert, indent=2) + "\n"


def load_certificate(text: str) -> dict:
    try:
        cert = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"certificate is not valid JSON: {exc}") from None
    if not isinstance(cert, dict) or "status" not in cert:
        raise FormatError("certificate must be an object with a status")
    return cert


# -- verification -------------------------------------------------------------


def _check_witness(A: Matrix, w: dict) -> Optional[str]:
    try:
        r, i, j = int(w["r"]), int(w["i"]), int(w["j"])
        lhs, rhs = parse_scalar(str(w["lhs"]), A.field), parse_scalar(str(w["rhs"]), A.field)
    except (KeyError, TypeError, ValueError, ZeroDivisionError):
        return "witness malformed"
    n = A.rows
    if not (2 <= r <= n + 1 and 1 <= i <= n and 1 <= j <= n):
        return "witness out of range"
    power = A
    for _ in range(r - 1):
        power = mat_mul(power, A)
    if power[i - 1, j - 1] != lhs or hadamard_pow(A, r)[i - 1, j - 1] != rhs:
        return "witness values do not match recomputation"
    if lhs == rhs:
        return "witness does not exhibit a difference"
    return None


def verify_certificate(A: Matrix, cert: dict) -> list[str]:
    """Names of failing checks; empty when every present section verifies."""
    field, n = A.field, A.rows
    failures: list[str] = []
    label = cert.get("meta", {}).get("field")
    if label is not None:
        try:
            if parse_field(str(label)) != field:
                return ["field mismatch between certificate and matrix"]
        except FormatError:
            return ["certificate field unreadable"]

    status = cert.get("status")
    if status == "zero_matrix":
        return [] if A.is_zero() else ["status zero_matrix but matrix is nonzero"]
    if A.is_zero():
        return ["matrix is zero but status is " + repr(status)]
    if status == "fails" and "witness" in cert:
        problem = _check_witness(A, cert["witness"])
        return [problem] if problem else []
    if status == "fails":
        return ["failure status without witness"]
    if status == "char_too_small":
        return [] if not characteristic_admits(field, n) else ["characteristic admits n"]
    if status != "holds":
        return [f"unverifiable status {status!r}"]
    if not check_finite(A).holds:
        failures.append("coincidence does not hold")

    d = None
    if "decomposition" in cert:
        try:
            d = decode_decomposition(cert["decomposition"], field, n)
        except FormatError as exc:
            return failures + [f"decomposition unreadable: {exc}"]
        verdict = verify_decomposition(d, A)
        failures += [f"decomposition: {r.replace('_', ' ')}" for r in verdict.reasons]

    if "canonical" in cert:
        try:
            cf = decode_canonical(cert["canonical"], field, n)
        except (FormatError, ValueError) as exc:
            return failures + [f"canonical invalid: {exc}"]
        if d is not None:
            target = d.support()
        else:
            target = Matrix(field, n, n, (field.one if x else field.zero for x in A.data))
        if reconstruct_idempotent(cf, n) != target:
            failures.append("canonical: reconstruction mismatch")
        elif cf.m != rank(target):
            failures.append("canonical: m differs from rank")

    if "rankone" in cert:
        try:
            rod = decode_rankone(cert["rankone"], field, n)
        except FormatError as exc:
            return failures + [f"rankone unreadable: {exc}"]
        verdict = verify_rank_one(rod, A)
        failures += [f"rankone: {r.replace('_', ' ')}" for r in verdict.reasons]
        if verdict and rod.m != rank(A):
            failures.append("rankone: length differs from rank")
    return failures
