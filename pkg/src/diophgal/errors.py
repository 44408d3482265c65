"""Exception hierarchy shared by every layer.

The CLI maps each class onto a stable exit code (see ``EXIT_CODES``).
"""


class DiophError(Exception):
    exit_code = 4


class StructuralError(DiophError):
    """Mismatched registries, unknown variables, wrong arities."""

    exit_code = 4


class ContractViolation(DiophError):
    """A documented precondition does not hold (non-monic modulus, m not dividing n, ...)."""

    exit_code = 4


class CapExceeded(DiophError):
    """A combinatorial cap would be exceeded; carries the projected size."""

    exit_code = 3

    def __init__(self, message: str, required: int | None = None, cap: int | None = None):
        super().__init__(message)
        self.required = required
        self.cap = cap


class ParseError(DiophError):
    exit_code = 2


class CoverageError(DiophError):
    """A witness does not assign every registry variable."""

    exit_code = 2


class GroupValidationError(DiophError):
    """A multiplication table violates a group axiom.

    ``axiom`` is one of ``shape``, ``range``, ``identity``, ``latin``,
    ``associativity``, ``inverse``; ``indices`` holds the witnessing
    (0-based) positions.
    """

    exit_code = 2

    def __init__(self, axiom: str, indices: tuple, message: str):
        super().__init__(message)
        self.axiom = axiom
        self.indices = indices


EXIT_CODES = {
    "success": 0,
    "rejected": 1,
    "parse": 2,
    "cap": 3,
    "contract": 4,
}
