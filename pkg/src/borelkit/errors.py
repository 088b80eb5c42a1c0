"""Exception types shared across the package."""


class BorelError(Exception):
    """Base class for all errors raised by borelkit."""


class ParseError(BorelError, ValueError):
    """Malformed textual or JSON input."""


class DomainMismatch(BorelError, ValueError):
    """Two isotone maps (or degrees) live on incompatible domains."""


class UnrepresentableClass(BorelError):
    """An operation would produce an unbounded finite-valued isotone map."""


class GuardExceeded(BorelError):
    """An enumeration or elimination would exceed its configured size guard."""


class InvalidInput(BorelError, ValueError):
    """Input violates a precondition (non-monotone sequence, bad degree, ...)."""


class NotRearTorsionFree(BorelError):
    """The module fails the rear torsion-freeness certificate."""


class NonMinimalPresentation(BorelError):
    """A presentation has a unit component between generators of equal degree."""
