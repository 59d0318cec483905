# divlab/errors.py
# Exception hierarchy shared by the library and the CLI.
# The CLI maps each family to a fixed exit code (see divlab.cli).


class DivLabError(Exception):
    """Base class for every error raised on purpose by divlab."""
    pass


class ConfigError(DivLabError, ValueError):
    """Invalid configuration file, curve config or command-line spec."""
    pass


class MathDomainError(DivLabError, ValueError):
    """Input outside the mathematical domain of an operation.

    Examples: singular curve, constant polynomial handed to a discriminant,
    elements of different towers, non-invertible matrix in mat_order.
    """
    pass


class CapExceededError(DivLabError):
    """A configured enumeration, closure or precision cap was hit."""

    def __init__(self, what: str, cap: int, needed=None):
        self.what = what
        self.cap = cap
        self.needed = needed
        detail = f" (needed {needed})" if needed is not None else ""
        super().__init__(f"{what} exceeds cap {cap}{detail}")


class PreconditionError(DivLabError):
    """Semantic precondition failed, e.g. point not on curve."""
    pass


EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_PRECONDITION = 4


def exit_code_for(error: BaseException) -> int:
    """Exit code the CLI uses for an exception."""
    if isinstance(error, ConfigError):
        return EXIT_USAGE
    if isinstance(error, (MathDomainError, CapExceededError)):
        return EXIT_DOMAIN
    if isinstance(error, PreconditionError):
        return EXIT_PRECONDITION
    return 1
