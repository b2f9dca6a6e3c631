"""Exception hierarchy shared by the whole package."""


class KnotError(Exception):
    """Base class for every domain error raised by this package."""


class PolyParseError(KnotError):
    """Malformed polynomial text; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class DiagramParseError(KnotError):
    """Malformed diagram text."""


class ValidationError(KnotError):
    """A diagram fails its structural invariants."""


class DomainError(KnotError):
    """An operation was applied outside its mathematical domain."""


class OrientationMismatch(KnotError):
    """A tangle cannot be inserted with consistent strand orientations."""


class RelationError(KnotError):
    """The coefficient relation required for a pseudoknot invariant fails."""


class DiagramTooLarge(KnotError):
    """The state sum would exceed the configured crossing cap."""


class MoveError(KnotError):
    """A diagram rewrite was requested at a stale or invalid location."""
