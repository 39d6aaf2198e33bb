"""Exception types raised by the library."""


class HyperbolismError(ValueError):
    """Base class for all domain errors raised by this package."""


class ZeroVector(HyperbolismError):
    """A transverse vector of zero length has no phase."""


class SingularOrdinate(HyperbolismError):
    """Division by a vanishing ordinate in the hyperbolism map."""


class NonpositiveDamping(HyperbolismError):
    pass


class NonpositiveRadius(HyperbolismError):
    pass


class ShapeMismatch(HyperbolismError):
    """The requested operation does not apply to this line shape."""


class NonAbsorptive(HyperbolismError):
    """Core fraction requested for a line that is not pure absorption."""


class NoHalfCrossing(HyperbolismError):
    pass


class RootBeyondSignal(HyperbolismError):
    pass


class ShrinkForbidden(HyperbolismError):
    pass


class OverflowGuard(HyperbolismError):
    """Exponential compensation would exceed the configured exponent bound."""


class EmptyRegion(HyperbolismError):
    pass
