"""Exception hierarchy shared by every gtrace module."""

from typing import Any, Optional


class GtraceError(Exception):
    """Base class for all gtrace errors."""


class SpecError(GtraceError):
    """Malformed input description or violated operation precondition."""

    def __init__(self, message: str, line: Optional[int] = None):
        """
        Instantiate SpecError.

        :param message: What was wrong with the input.
        :param line: 1-based line number in the parsed file, if any.
        """
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BudgetExceededError(GtraceError):
    """An enumeration or size bound configured in :class:`gtrace.config.Budgets` was exceeded."""

    def __init__(self, bound: str, value: int, limit: int):
        """
        Instantiate BudgetExceededError.

        :param bound: Name of the violated bound.
        :param value: The size that was requested.
        :param limit: The configured limit.
        """
        self.bound = bound
        self.value = value
        self.limit = limit
        super().__init__(f"budget exceeded: {bound} = {value} > {limit}")


class InvariantError(GtraceError):
    """A type invariant or an internal identity failed; this signals a bug."""


class CheckFailure(GtraceError):
    """A theorem identity failed on a concrete witness."""

    def __init__(self, identity: str, witness: Any = None):
        """
        Instantiate CheckFailure.

        :param identity: Name of the identity that failed.
        :param witness: Serializable witness data.
        """
        self.identity = identity
        self.witness = witness
        super().__init__(f"{identity} failed on {witness!r}")
