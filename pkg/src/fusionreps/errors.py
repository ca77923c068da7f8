"""Exception hierarchy shared by every module.

The CLI maps each class to a distinct exit status.
"""


class FusionRepsError(Exception):
    exit_code = 1


class PreconditionError(FusionRepsError):
    """An input violates the documented precondition of an operation."""

    exit_code = 2


class StructuralError(PreconditionError):
    """Input has the wrong algebraic shape (non-normal subgroup, non p-group, ...)."""


class SizeError(FusionRepsError):
    exit_code = 3


class ConsistencyError(FusionRepsError):
    """An internal cross-check failed; indicates an implementation bug."""

    exit_code = 5


class FalsificationFlag(FusionRepsError):
    """A computed instance contradicts a proved theorem.

    Carries the full serialized inputs so the run can be reproduced.
    """

    exit_code = 4

    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload or {}
