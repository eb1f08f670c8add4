"""Toolkit exceptions with machine-readable error codes and process exit codes."""

from typing import Any, Dict, Optional, Sequence

EXIT_OK = 0
EXIT_FINDING = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


class BaseAppException(Exception):
    """Base toolkit exception with structured error handling."""

    def __init__(
        self,
        message: str,
        exit_code: int = EXIT_INTERNAL,
        error_code: str = "INTERNAL_ERROR",
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        """Initialize the base exception with a message, exit code, and error code."""
        self.message = message
        self.exit_code = exit_code
        self.error_code = error_code
        self.details = details or {}
        super().__init__(self.message)

    def to_report(self) -> Dict[str, Any]:
        """Machine-readable violation report."""
        return {"error": self.error_code, "message": self.message, "details": self.details}


class ValidationError(BaseAppException):
    """Invalid user input."""

    def __init__(
        self,
        message: str,
        details: Optional[Dict[str, Any]] = None,
        error_code: str = "VALIDATION_ERROR",
    ) -> None:
        """Initialize a validation error with a message and optional details."""
        super().__init__(
            message=message, exit_code=EXIT_INPUT, error_code=error_code, details=details
        )


class MalformedInputError(ValidationError):
    """Input document could not be parsed."""

    def __init__(self, message: str, location: str) -> None:
        """Initialize with the location of the first parse failure."""
        super().__init__(message, {"location": location}, error_code="MALFORMED_INPUT")


class DimensionMismatchError(ValidationError):
    """Operands live in spaces of different dimension."""

    def __init__(self, expected: int, actual: int, what: str = "operand") -> None:
        """Initialize with the expected and actual sizes."""
        super().__init__(
            f"Dimension mismatch for {what}: expected {expected}, got {actual}",
            {"expected": expected, "actual": actual, "what": what},
            error_code="DIMENSION_MISMATCH",
        )


class JacobiViolationError(ValidationError):
    """Structure constants violate the Jacobi identity."""

    def __init__(self, witness: Sequence[int]) -> None:
        """Initialize with the 1-based witness (i, j, l, k)."""
        i, j, l, k = witness
        super().__init__(
            f"Jacobi identity fails for (e{i}, e{j}, e{l}) in coordinate {k}",
            {"i": i, "j": j, "l": l, "k": k},
            error_code="JACOBI_VIOLATION",
        )


class InvariantViolationError(ValidationError):
    """A supplied polynomial is not a coadjoint invariant."""

    def __init__(self, generator: str, coordinate: int) -> None:
        """Initialize with the offending generator text and the 1-based coordinate."""
        super().__init__(
            f"Supplied invariant {generator} does not commute with x{coordinate}",
            {"generator": generator, "coordinate": coordinate},
            error_code="INVARIANT_VIOLATION",
        )


class UnknownAlgebraError(ValidationError):
    """Catalog lookup failed."""

    def __init__(self, name: str) -> None:
        """Initialize with the unknown catalog name."""
        super().__init__(
            f"Algebra '{name}' is not in the catalog",
            {"name": name},
            error_code="UNKNOWN_ALGEBRA",
        )


class IrregularShiftPointError(ValidationError):
    """Shift point is not regular."""

    def __init__(self, rank: int, expected: int) -> None:
        """Initialize with the observed and the generic rank."""
        super().__init__(
            f"Shift point is not regular: rank {rank} < {expected}",
            {"rank": rank, "expected": expected},
            error_code="IRREGULAR_SHIFT_POINT",
        )


class NotNiceError(ValidationError):
    """Point fails the nice-element conditions."""

    def __init__(self, condition: str, details: Optional[Dict[str, Any]] = None) -> None:
        """Initialize with the violated condition."""
        super().__init__(
            f"Point is not nice: {condition}",
            {"condition": condition, **(details or {})},
            error_code="NOT_NICE",
        )


class InfinityInSpectrumError(ValidationError):
    """Recursion operator undefined because P_inf is too degenerate."""

    def __init__(self, corank: int, minimal: int) -> None:
        """Initialize with the corank of P_inf and the minimal corank."""
        super().__init__(
            f"Infinity belongs to the spectrum: corank P_inf = {corank} > {minimal}",
            {"corank": corank, "minimal": minimal},
            error_code="INFINITY_IN_SPECTRUM",
        )


class NoRootsFoundError(BaseAppException):
    """Line sampling never met the singular set."""

    def __init__(self, component: str, attempts: int) -> None:
        """Initialize with the component and number of attempts."""
        super().__init__(
            message=f"No roots found on component {component} after {attempts} lines",
            exit_code=EXIT_FINDING,
            error_code="NO_ROOTS_FOUND",
            details={"component": component, "attempts": attempts},
        )


class InsufficientSamplesError(BaseAppException):
    """Too few valid samples on a component."""

    def __init__(self, component: str, valid: int, required: int) -> None:
        """Initialize with the component and the sample counts."""
        super().__init__(
            message=f"Component {component}: {valid} valid samples, {required} required",
            exit_code=EXIT_FINDING,
            error_code="INSUFFICIENT_SAMPLES",
            details={"component": component, "valid": valid, "required": required},
        )


class GCDCertificationError(BaseAppException):
    """A computed GCD failed exact trial division."""

    def __init__(self, candidate: str, operand: str) -> None:
        """Initialize with the candidate and the operand it failed to divide."""
        super().__init__(
            message=f"GCD candidate {candidate} does not divide {operand}",
            exit_code=EXIT_INTERNAL,
            error_code="GCD_CERTIFICATION_FAILED",
            details={"candidate": candidate, "operand": operand},
        )


class CommutationFailureError(BaseAppException):
    """A generator set that must commute did not."""

    def __init__(self, left: str, right: str, bracket: str, kind: str) -> None:
        """Initialize with the witness pair and its nonzero bracket."""
        super().__init__(
            message=f"{kind} bracket of {left} and {right} is {bracket}",
            exit_code=EXIT_INTERNAL,
            error_code="COMMUTATION_FAILURE",
            details={"left": left, "right": right, "bracket": bracket, "kind": kind},
        )


class CharacterViolationError(BaseAppException):
    """A computed character does not vanish on the derived algebra."""

    def __init__(self, polynomial: str, witness: Sequence[int]) -> None:
        """Initialize with the semi-invariant and the 1-based bracket pair (i, j)."""
        i, j = witness
        super().__init__(
            message=f"Character of {polynomial} does not vanish on [e{i}, e{j}]",
            exit_code=EXIT_INTERNAL,
            error_code="CHARACTER_VIOLATION",
            details={"polynomial": polynomial, "i": i, "j": j},
        )
