"""Error taxonomy shared by every layer of the package."""

from __future__ import annotations

from dataclasses import dataclass


class LieverifyError(Exception):
    """Base class for all package errors."""


@dataclass(frozen=True)
class SourceSpan:
    """Byte range plus line/column of a token in the original text."""

    start: int
    end: int
    line: int
    column: int

    def __str__(self) -> str:
        return f"line {self.line}, column {self.column}"


class ParseError(LieverifyError):
    """Malformed surface syntax; carries the offending span."""

    def __init__(self, message: str, span: SourceSpan | None = None):
        self.span = span
        if span is not None:
            message = f"{message} ({span})"
        super().__init__(message)


class ArityError(ParseError):
    """Opaque function used with inconsistent argument counts."""


class UnknownDirection(ParseError):
    """Vector-field direction other than d_t, d_x, d_u."""


class DomainError(LieverifyError):
    """Numeric evaluation left the real domain (log of 0, 0**negative, ...)."""


class MissingBinding(LieverifyError):
    """Evaluation point lacks a value for a symbol or opaque function."""


class OrderOverflow(LieverifyError):
    """Total derivative applied to an expression of too high jet order."""


class NonlinearInAtoms(LieverifyError):
    """Expression is not affine-linear in its opaque atoms."""


class NotInFormTwo(LieverifyError):
    """Vector field is not of the canonical symmetry shape.

    The shape requires xi1 = lam*t + lam1, xi2 = lam*x + lam2 with a shared
    constant lam, and eta = h(x)*u + r(t, x).  The message names the violated
    condition.
    """

    def __init__(self, condition: str):
        self.condition = condition
        super().__init__(condition)


class NotInSpan(LieverifyError):
    """Field is not a constant-coefficient combination of the basis."""


class DegenerateBasis(LieverifyError):
    """Basis fields are linearly dependent over the constants."""


class NotClosed(LieverifyError):
    """Commutator [e_i, e_j] left the span of the basis."""

    def __init__(self, i: int, j: int, detail: str = ""):
        self.pair = (i, j)
        msg = f"[e{i + 1}, e{j + 1}] does not close into the basis"
        if detail:
            msg = f"{msg}: {detail}"
        super().__init__(msg)


class JacobiViolation(LieverifyError):
    """Computed structure constants fail the Jacobi identity."""


class BadF(LieverifyError):
    """Right-hand side depends on symbols outside t, x, u, u_x."""


class NonInvertible(LieverifyError):
    """Equivalence transform violates gamma != 0 or rho != 0."""


class CatalogError(LieverifyError):
    """Malformed catalog file."""


class DuplicateId(CatalogError):
    """Two catalog entries share an id."""


class UnsatisfiableConstraint(LieverifyError):
    """No admissible parameter binding exists for the declared constraints."""
