"""Exception types shared across the package."""


class JacasymError(Exception):
    """Base class for library errors."""


class PoleError(JacasymError, ValueError):
    """Argument hits a pole of a gamma-type function."""


class DomainError(JacasymError, ValueError):
    """Argument outside the admissible domain (cut, strip, sign)."""


class PreconditionError(JacasymError, ValueError):
    """A validity inequality of an expansion or bound fails.

    ``inequality`` holds the text of the failing condition so the CLI can
    print it verbatim.
    """

    def __init__(self, inequality, detail=""):
        self.inequality = inequality
        msg = f"condition violated: {inequality}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class NonConvergenceError(JacasymError, ArithmeticError):
    """A series failed to converge within its term budget."""


class MismatchError(JacasymError, ValueError):
    """Inconsistent inputs handed to certify or a cross-check failed."""
