"""Exception hierarchy shared by the algebra core, the spec loader and the CLI."""

from __future__ import annotations

from typing import Any, Optional


class CoringError(ValueError):
    """Base class for every domain error raised by the workbench."""


class DimensionMismatchError(CoringError):
    """Vectors, matrices or maps whose sizes do not line up."""


class RingMismatchError(CoringError):
    """Operands that live over different rings."""


class UnboundedCornerError(CoringError):
    """An operation on a lazily infinite ring was requested without a finite corner."""


class IdempotentError(CoringError):
    """Input that should be a (generator-sum) idempotent is not, or is empty."""


class MissingDualBasisError(CoringError):
    """A component of a bimodule has no finite dual basis."""

    def __init__(self, labels: Any, module_name: str = "") -> None:
        self.labels = labels
        self.module_name = module_name
        super().__init__(f"No finite dual basis for {module_name or 'module'} at idempotent {labels}")


class _ReportError(CoringError):
    """Error that carries the failing check report."""

    def __init__(self, message: str, report: Optional[Any] = None) -> None:
        self.report = report
        super().__init__(message)


class MorphismCheckError(_ReportError):
    """Ring morphism failed its multiplicativity or local-unit check."""


class CoringLawError(_ReportError):
    """Comultiplication/counit data does not satisfy the coring laws."""


class BalancingError(CoringError):
    """A pair of maps does not descend to the tensor product."""

    def __init__(self, message: str, witness: Any = None) -> None:
        self.witness = witness
        super().__init__(message)


class CellMismatchError(CoringError):
    """Bicategory cells that are not composable."""


class SpecSyntaxError(CoringError):
    """Malformed spec document."""

    def __init__(self, message: str, location: str = "") -> None:
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class SpecReferenceError(CoringError):
    """Spec document refers to an identifier that is not defined."""

    def __init__(self, identifier: str, section: str = "") -> None:
        self.identifier = identifier
        self.section = section
        where = f" in section '{section}'" if section else ""
        super().__init__(f"Unknown reference '{identifier}'{where}")


__all__ = [
    "CoringError",
    "DimensionMismatchError",
    "RingMismatchError",
    "UnboundedCornerError",
    "IdempotentError",
    "MissingDualBasisError",
    "MorphismCheckError",
    "CoringLawError",
    "BalancingError",
    "CellMismatchError",
    "SpecSyntaxError",
    "SpecReferenceError",
]
