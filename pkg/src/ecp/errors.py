"""Exception hierarchy shared by every module."""

from __future__ import annotations


class EcpError(Exception):
    """Base class for all errors raised by this package."""


class FormatError(EcpError, ValueError):
    """Malformed graph encoding."""

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)


class ValidityError(EcpError, ValueError):
    """Well-formed input that describes an invalid object (self-loop, duplicate edge, ...)."""


class DomainError(EcpError, ValueError):
    """Input outside the domain of an operation."""


class PreconditionError(DomainError):
    pass


class CoverageError(DomainError):
    """A vertex is not covered by any clique."""

    def __init__(self, vertices):
        self.vertices = tuple(vertices)
        super().__init__(f"vertices not covered by any clique: {list(self.vertices)}")


class DegenerateVertexError(DomainError):
    """Removing monopolized elements would leave some vertex with an empty set."""

    def __init__(self, vertices):
        self.vertices = tuple(vertices)
        super().__init__(f"removal empties the sets of vertices {list(self.vertices)}")


class ExistenceError(DomainError):
    """No projective plane of the requested order is available."""

    def __init__(self, order: int, status: str):
        self.order = order
        self.status = status
        if status == "no":
            msg = f"no projective plane of order {order} exists (known nonexistent)"
        else:
            msg = f"projective plane of order {order} is not constructible here ({status})"
        super().__init__(msg)


class ExclusionError(DomainError):
    """A closed-form line-graph formula was applied to an excluded graph."""

    def __init__(self, report):
        self.report = report
        super().__init__(f"graph is excluded: {', '.join(report.reasons())}")


class BudgetExceeded(EcpError):
    """Search exceeded its node budget."""

    def __init__(self, limit: int, nodes: int, count: int | None = None):
        self.limit = limit
        self.nodes = nodes
        self.count = count
        msg = f"search budget of {limit} nodes exceeded"
        if count is not None:
            msg += f" after {count} results"
        super().__init__(msg)
