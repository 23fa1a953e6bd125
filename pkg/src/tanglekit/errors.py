"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the operation's domain (bad index, overlap, ...)."""


class ParseError(ValueError):
    """An input file or instance descriptor could not be parsed."""


class ConsistencyError(RuntimeError):
    """A result contradicts a guarantee that should hold unconditionally.

    Raising this means an implementation bug (or a false theorem), never bad input.
    """
