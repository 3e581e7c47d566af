"""Exception hierarchy for lamination invariants."""


class LaminationError(Exception):
    """Base class for every error raised by this package."""


class AngleError(LaminationError, ValueError):
    """Angle text could not be parsed, or an angle is not in canonical form."""


class DegenerateArcError(AngleError):
    """A directed arc or chord collapses (coincident endpoints) or a partition is degenerate."""


class PortraitError(LaminationError):
    """An operation is undefined for the given orbit portrait."""


class NotRealizableError(PortraitError):
    """No grouping of the two forward orbits satisfies the portrait axioms."""

    def __init__(self, theta1, theta2, reason: str = "no admissible grouping"):
        self.theta1 = theta1
        self.theta2 = theta2
        self.reason = reason
        super().__init__(f"({theta1}, {theta2}) is not realizable: {reason}")


class AtlasError(LaminationError):
    """Atlas lookups, construction invariants and persistence failures."""


class SolenoidError(LaminationError, ValueError):
    """Depth mismatches, depth underflow and failed affine normal forms."""


class LeafInvariantError(LaminationError):
    """A leaf invariant is undefined for the requested input."""
