"""Exception hierarchy.  The CLI maps each class to a certificate status."""

from __future__ import annotations


class HadpowError(Exception):
    status = "error"


class ShapeError(HadpowError, ValueError):
    """Dimension mismatch or a square-only operation on a non-square matrix."""


class ConstantTermError(HadpowError, ValueError):
    """Polynomial with a nonzero constant term where none is allowed."""


class ZeroMatrixError(HadpowError, ValueError):
    status = "zero_matrix"


class CoincidenceFailure(HadpowError):
    """Raised by constructions that require A^r = A^(r); carries the report."""

    status = "fails"

    def __init__(self, report):
        w = report.witness
        super().__init__(
            f"A^{w.r} != A^({w.r}) at ({w.i}, {w.j}): {w.lhs} != {w.rhs}"
        )
        self.report = report


class CharTooSmall(HadpowError):
    status = "char_too_small"

    def __init__(self, field, n):
        super().__init__(f"characteristic {field.characteristic} does not exceed n = {n}")
        self.field = field
        self.n = n


class NotIdempotent01(HadpowError):
    status = "fails"


class StructureViolation(HadpowError):
    """Block extraction found a matrix not of the canonical shape.

    ``block`` names the offending block ("T", "W", "U", "V"); ``row`` and
    ``col`` are 1-based coordinates inside that block.
    """

    status = "fails"

    def __init__(self, block: str, row: int, col: int, detail: str = ""):
        msg = f"{block}-block violates canonical form at ({row}, {col})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.block = block
        self.row = row
        self.col = col


class InternalContradiction(HadpowError, AssertionError):
    """A freshly built certificate failed its own verification."""


class BudgetExceeded(HadpowError):
    pass


class FieldTooSmall(HadpowError, ValueError):
    pass
