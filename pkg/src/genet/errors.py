"""Domain errors with stable machine-readable codes.

Every error raised by this package carries a ``code`` string (e.g.
``MISSING_KEY``, ``INVARIANT_VIOLATION``) that the CLI prints on stderr and
callers can branch on without parsing messages.
"""


class GenetError(Exception):
    """Base error for all domain failures.

    Attributes:
        code: stable identifier, uppercase with underscores.
        index: super-block index the error refers to, when applicable.
    """

    def __init__(self, code: str, message: str, index: int | None = None):
        self.code = code
        self.index = index
        super().__init__(message)

    def __str__(self) -> str:
        base = super().__str__()
        if self.index is not None:
            return f"{self.code} (super-block {self.index}): {base}"
        return f"{self.code}: {base}"


def malformed_document(message: str) -> GenetError:
    return GenetError("MALFORMED_DOCUMENT", message)


def schema_violation(message: str, index: int | None = None) -> GenetError:
    return GenetError("SCHEMA_VIOLATION", message, index=index)


def invariant_violation(message: str, index: int | None = None) -> GenetError:
    return GenetError("INVARIANT_VIOLATION", message, index=index)
