"""Exception hierarchy.

Every error carries enough context to point at the offending input; the CLI
maps these onto its exit-code contract.
"""


class DislofixError(Exception):
    """Base class for all package errors."""


class MalformedTable(DislofixError):
    """Distance table has the wrong shape or a negative entry."""


class UnknownPoint(DislofixError):
    """A point index does not belong to the space."""


class EmptySubset(DislofixError):
    """A subset with no members was constructed."""


class MixedSpaces(DislofixError):
    """Two subsets from different spaces were combined."""


class InvalidPhi(DislofixError):
    """Comparison function failed monotonicity or phi(t) < t at a witness t."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotCertified(DislofixError):
    """Fixed-point conclusions were requested for a map that is not certified."""


class NoFixedPoint(DislofixError):
    """An operation needing a fixed point found none."""


class InstanceError(DislofixError):
    """Instance file failed to parse or validate."""

    def __init__(self, message, path=None, line=None):
        super().__init__(message)
        self.path = path
        self.line = line

    def __str__(self):
        where = []
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.path:
            where.append(f"at {self.path}")
        msg = super().__str__()
        return f"{msg} ({', '.join(where)})" if where else msg
