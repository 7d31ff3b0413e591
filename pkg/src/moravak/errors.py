"""Exception hierarchy shared by all subpackages."""


class MoravakError(Exception):
    """Base class for every error raised by this package."""


class InputError(MoravakError, ValueError):
    """Malformed user input (bad JSON shape, bad parameters)."""


class InconsistentPresentation(MoravakError):
    pass


class UnsupportedRule(InputError):
    pass


class InvalidAction(InputError):
    pass


class SizeLimit(MoravakError):
    pass


class BudgetExceeded(MoravakError):
    def __init__(self, message, attempted=None):
        super().__init__(message)
        self.attempted = attempted


class NoStabilization(MoravakError):
    pass


class RelationSyntaxError(InputError):
    """Parse failure; ``offset`` is the 0-based character position."""

    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownName(InputError):
    pass


class NegativeExponent(InputError):
    pass


class NotOrderP(InputError):
    pass


class DegreeMismatch(UserWarning):
    """Warning category: a substitution binding is not degree-matched."""
