"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """An operation was called outside the hypotheses it is defined for."""


class InvalidAlgebraError(ValueError):
    """Structure constants do not respect the declared grading."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class ResourceCapError(RuntimeError):
    """A configured size cap would be exceeded."""

    def __init__(self, cap, limit, requested):
        super().__init__(f"resource cap '{cap}' exceeded: limit {limit}, requested {requested}")
        self.cap = cap
        self.limit = limit
        self.requested = requested


class ConsistencyError(AssertionError):
    """Two computation paths disagree, or a quantity that must be integral is not."""


class ParseError(ValueError):
    """Malformed algebra file; carries the 1-based line and the offending field."""

    def __init__(self, message, line=None, field=None):
        where = f"line {line}" if line is not None else "file"
        if field:
            where += f", field '{field}'"
        super().__init__(f"{where}: {message}")
        self.line = line
        self.field = field
