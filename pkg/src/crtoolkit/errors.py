"""Exceptions raised by crtoolkit.

Every error the CLI can report derives from `CRToolkitError`; the CLI
maps all of them to exit code 2.
"""


class CRToolkitError(Exception):
    """Base class of every crtoolkit error"""


class InvalidInput(CRToolkitError):
    """Input does not follow the published schema.

    The message ends with the JSON pointer of the offending value when it
    is known, e.g. `Expected a rational :: /fields/0/linear/1/2`.
    """

    def __init__(self, message: str, pointer: str = "") -> None:
        self.pointer = pointer
        if pointer:
            message = f"{message} :: {pointer}"
        super().__init__(message)


class DimensionError(InvalidInput):
    """Shapes of matrices, vectors or subspaces do not match"""


class InvalidDatum(InvalidInput):
    """A TubeDatum or CRAlgebra violates one of its invariants"""


class PreconditionError(CRToolkitError):
    """A mathematical precondition of an operation is not met"""


class OutOfRange(CRToolkitError):
    """A parameter lies outside the range an operation supports"""
