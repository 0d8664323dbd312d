"""Exception types raised by the library."""


class RectLocusError(ValueError):
    """Base class for all library errors."""


class NotPositiveDefinite(RectLocusError):
    pass


class DegenerateLine(RectLocusError):
    pass


class IdenticalLines(RectLocusError):
    pass


class ParallelPair(RectLocusError):
    pass


class BadAngle(RectLocusError):
    pass


class BadAxes(RectLocusError):
    pass


class NonPositiveHeight(RectLocusError):
    pass


class EqualConeMatrices(RectLocusError):
    pass


class NotHyperbolic(RectLocusError):
    pass


class NotOnLocus(RectLocusError):
    pass


class MissingFamilyParam(RectLocusError):
    pass


class InvalidFamilyParam(RectLocusError):
    pass


class NotAHyperbola(RectLocusError):
    pass


class OutOfRange(RectLocusError):
    """Raised with the admissible interval attached as ``interval``."""

    def __init__(self, message, interval=None):
        super().__init__(message)
        self.interval = interval


class ConstraintViolated(RectLocusError):
    def __init__(self, message, constraint=None):
        super().__init__(message)
        self.constraint = constraint


class SceneError(RectLocusError):
    """Invalid scene file; ``where`` names the offending field."""

    def __init__(self, message, where=None):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where
