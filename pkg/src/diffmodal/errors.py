"""Exception types shared across the workbench."""


class WorkbenchError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(WorkbenchError, ValueError):
    """Malformed formula text.  `position` is a 1-based offset into the input."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (offset {position})")
        self.position = position


class CapacityExceeded(WorkbenchError):
    """An enumeration outgrew its budget; `measure` is the offending size."""

    def __init__(self, measure, budget=None):
        detail = f"search size {measure}"
        if budget is not None:
            detail += f" exceeds cap {budget}"
        super().__init__(detail)
        self.measure = measure
        self.budget = budget


class UnknownPoint(WorkbenchError, KeyError):
    """A point-id that is not in the frame."""

    def __init__(self, point):
        super().__init__(point)
        self.point = point

    def __str__(self):
        return f"unknown point {self.point!r}"


class BadParameter(WorkbenchError, ValueError):
    """An argument outside an operation's stated domain."""


class NotAPartition(WorkbenchError, ValueError):
    """Blocks that are empty, overlapping, or do not cover the point set."""


class NotPointGenerated(WorkbenchError, ValueError):
    """The second relation does not contain the inequality relation."""


class GammaNotSubClosed(WorkbenchError, ValueError):
    """A closure set that is not closed under subformulas."""


class GammaNotSubsetPsi(WorkbenchError, ValueError):
    """The closure set is not contained in the quotienting set."""
