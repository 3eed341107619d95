"""Exception types shared across modules."""


class PlaneforgeError(Exception):
    """Base class for every error raised by this package."""


class PermutationError(PlaneforgeError, ValueError):
    """Malformed permutation, cycle form, or degree mismatch."""


class NotPrimePower(PlaneforgeError, ValueError):
    def __init__(self, n):
        super().__init__(f"{n} is not a prime power")
        self.n = n


class LimitExceeded(PlaneforgeError):
    """Raised by closure when the generated group grows past the limit."""

    def __init__(self, limit):
        super().__init__(f"closure exceeded {limit} elements")
        self.limit = limit


class NotASubgroup(PlaneforgeError, ValueError):
    pass


class PreconditionError(PlaneforgeError, ValueError):
    pass


class CanonicalFormRequired(PlaneforgeError, ValueError):
    pass


class ParseError(PlaneforgeError, ValueError):
    def __init__(self, message, line=None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
