"""Exception hierarchy shared by every ringplane module."""


class RingPlaneError(Exception):
    """Base class for all errors raised by ringplane."""


class AxiomError(RingPlaneError):
    """Raised when operation tables do not describe a unital ring."""

    def __init__(self, axiom, witness=(), message=None):
        self.axiom = axiom
        self.witness = tuple(witness)
        super().__init__(message or f"ring axiom '{axiom}' violated at {self.witness}")


class StructuralError(RingPlaneError, ValueError):
    """Malformed input: wrong table shapes, out-of-range entries."""


class ArgumentError(RingPlaneError, ValueError):
    """An argument is outside an operation's precondition."""


class CapacityError(RingPlaneError):
    """A size bound (ring order, enumeration budget) would be exceeded."""

    def __init__(self, what, size, bound):
        self.what = what
        self.size = size
        self.bound = bound
        super().__init__(f"{what}: size {size} exceeds bound {bound}")


class InvariantViolation(RingPlaneError):
    """A theorem-backed internal cross-check disagreed. Should never fire."""


class SpecParseError(RingPlaneError, ValueError):
    """Unparseable ring-spec string; carries the failing position."""

    def __init__(self, text, pos, reason):
        self.text = text
        self.pos = pos
        self.reason = reason
        pointer = " " * pos + "^"
        super().__init__(f"{reason} at position {pos}\n  {text}\n  {pointer}")
