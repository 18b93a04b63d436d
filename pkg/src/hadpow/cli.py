"""Command-line interface.

Exit codes: 0 holds / verified, 1 property or verification fails,
2 usage, parse or hypothesis errors (zero matrix, small characteristic).
"""

from __future__ import annotations

import json
import sys
from typing import Optional

import click

from hadpow import generator
from hadpow.certificate import (
    FormatError,
    build_certificate,
    dump_certificate,
    encode_witness,
    field_label,
    load_certificate,
    meta,
    parse_field,
    parse_matrix_file,
    render_matrix_file,
    verify_certificate,
)
from hadpow.coincidence import check_finite
from hadpow.decomposition import spectral_decompose
from hadpow.errors import BudgetExceeded, HadpowError

EXIT = {"holds": 0, "fails": 1, "zero_matrix": 2, "char_too_small": 2, "error": 2}


class FieldType(click.ParamType):
    name = "field"

    def convert(self, value, param, ctx):
        if not isinstance(value, str):
            return value
        try:
            return parse_field(value)
        except FormatError as exc:
            self.fail(str(exc), param, ctx)


FIELD = FieldType()


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: Optional[str], text: str):
    if path is None or path == "-":
        click.echo(text, nl=False)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit(cert: dict, output: Optional[str]):
    _write(output, dump_certificate(cert))
    sys.exit(EXIT.get(cert["status"], 2))


def _load_matrix(path: str, field):
    A = parse_matrix_file(_read(path))
    if field is not None and field != A.field:
        raise FormatError(f"--field {field_label(field)} contradicts file header {field_label(A.field)}")
    return A


def _matrix_command(command: str, path: str, output: Optional[str], field):
    try:
        A = _load_matrix(path, field)
    except (FormatError, OSError) as exc:
        _emit({"status": "error", "reason": str(exc)}, output)
    _emit(build_certificate(command, A), output)


input_opt = click.option("--input", "-i", "path", default="-", show_default=True,
                         help="Matrix file ('-' for stdin).")
output_opt = click.option("--output", "-o", default=None, help="Write the result here instead of stdout.")
field_opt = click.option("--field", type=FIELD, default=None,
                         help="Expected field: rational | gf:<p>.")


@click.group()
@click.version_option(package_name="hadpow")
def main():
    """Decide A^r = A^(r) for all r and emit verifiable certificates."""


@main.command()
@input_opt
@output_opt
@field_opt
def check(path, output, field):
    """Test A^r = A^(r) for r = 2..n+1."""
    _matrix_command("check", path, output, field)


@main.command()
@input_opt
@output_opt
@field_opt
def decompose(path, output, field):
    """Emit the weighted disjoint idempotent decomposition."""
    _matrix_command("decompose", path, output, field)


@main.command()
@input_opt
@output_opt
@field_opt
def canonical(path, output, field):
    """Emit the permutation canonical form of E = E_1 + ... + E_k."""
    _matrix_command("canonical", path, output, field)


@main.command()
@input_opt
@output_opt
@field_opt
def rankone(path, output, field):
    """Emit the biorthogonal rank-one factorization."""
    _matrix_command("rankone", path, output, field)


@main.command()
@input_opt
@click.option("--cert", "-c", "cert_path", required=True, help="Certificate JSON to check.")
@field_opt
def verify(path, cert_path, field):
    """Re-verify a certificate against a matrix file; exit 0 iff it holds up."""
    try:
        A = _load_matrix(path, field)
        cert = load_certificate(_read(cert_path))
    except (FormatError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    failures = verify_certificate(A, cert)
    if failures:
        click.echo(f"FAIL: {failures[0]}", err=True)
        for extra in failures[1:]:
            click.echo(f"      {extra}", err=True)
        sys.exit(1)
    click.echo("OK")


@main.command()
@click.option("--kind", type=click.Choice(["positive", "negative", "idempotent"]), default="positive",
              show_default=True)
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0, show_default=True)
@click.option("--field", type=FIELD, default="rational", show_default=True)
@click.option("--m", "m", type=int, default=2, show_default=True)
@click.option("--s2", type=int, default=0, show_default=True)
@click.option("--s3", type=int, default=0, show_default=True)
@click.option("--s4", type=int, default=0, show_default=True)
@click.option("--k", "k", type=int, default=1, show_default=True)
@click.option("--mode", type=click.Choice([generator.SAFE_COLUMNS, generator.REJECTION]),
              default=generator.SAFE_COLUMNS, show_default=True)
@click.option("--n", "n", type=int, default=None, help="Size for --kind negative.")
@output_opt
@click.option("--cert", "cert_path", default=None, help="Write the ground-truth certificate here.")
def generate(kind, seed, field, m, s2, s3, s4, k, mode, n, output, cert_path):
    """Write a seeded instance and its ground-truth certificate."""
    try:
        if kind == "negative":
            size = n if n is not None else m + s2 + s3 + s4
            A = generator.gen_negative(seed, field, size)
            cert = {"status": "fails", "witness": encode_witness(check_finite(A))}
        else:
            params = generator.GenParams(seed, field, m, s2, s3, s4, k if kind == "positive" else 1, mode)
            if kind == "idempotent":
                A = generator.gen_idempotent01(params)
                d = spectral_decompose(A)
            else:
                A, d = generator.gen_instance(params)
            cert = build_certificate("rankone" if params.admits_canonical else "decompose", A,
                                     seed=seed, decomposition=d)
    except (ValueError, HadpowError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    cert["meta"] = meta(field, seed, prng=generator.PRNG_NAME, kind=kind)
    _write(output, render_matrix_file(A))
    if cert_path is not None:
        _write(cert_path, dump_certificate(cert))


@main.command()
@click.option("--field", type=FIELD, default="gf:2", show_default=True)
@click.option("--n", "n", type=click.IntRange(1), default=2, show_default=True)
@click.option("--pool", default="0,1", show_default=True, help="Comma-separated entry values.")
@click.option("--budget", type=click.IntRange(1), default=generator.DEFAULT_ENUM_BUDGET, show_default=True)
@output_opt
def enumerate(field, n, pool, budget, output):
    """Exhaustively compare the finite test with brute-force certificate search."""
    try:
        entries = [field.convert(tok) for tok in pool.split(",") if tok.strip()]
        results = generator.enumerate_small(field, n, entries, budget)
        certified = generator.search_certificates(field, n, entries, budget)
    except (ValueError, ZeroDivisionError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    except BudgetExceeded as exc:
        _write(output, json.dumps({"status": "error", "reason": str(exc)}, indent=2) + "\n")
        sys.exit(2)
    mismatches = [str(A).replace("\n", "; ") for A, holds in results if holds != (A in certified)]
    report = {
        "field": field_label(field),
        "n": n,
        "pool": [tok.strip() for tok in pool.split(",") if tok.strip()],
        "candidates": len(results),
        "passing": sum(1 for _, holds in results if holds),
        "certified": len(certified),
        "agreement": (len(results) - len(mismatches)) / len(results),
        "mismatches": mismatches,
    }
    _write(output, json.dumps(report, indent=2) + "\n")
    sys.exit(0 if not mismatches else 1)


if __name__ == "__main__":  # pragma: no cover
    main()
