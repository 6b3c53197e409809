"""Exception hierarchy for tiltstab."""


class TiltStabError(Exception):
    """Base class for all errors raised by this package."""


class InvalidGeometry(TiltStabError, ValueError):
    pass


class HodgeIndexViolation(TiltStabError, ValueError):
    """A divisor record with ``(L^2.D)^2 < L^3 (L.D^2)``.

    ``index`` is set when the offending record came from a list.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class MissingCh3(TiltStabError, ValueError):
    pass


class GeometryMismatch(TiltStabError, ValueError):
    pass


class UnknownC1Square(TiltStabError, ValueError):
    pass


class NonpositiveT(TiltStabError, ValueError):
    pass


class InfiniteSlope(TiltStabError, ValueError):
    pass


class ZeroRank(TiltStabError, ValueError):
    pass


class NonpositiveKappa(TiltStabError, ValueError):
    pass


class NonpositiveDegree(TiltStabError, ValueError):
    pass


class NegativeTSquare(TiltStabError, ValueError):
    pass


class NonProportionalC1(TiltStabError, ValueError):
    pass


class EmptyGrid(TiltStabError, ValueError):
    pass


class UnsupportedFormat(TiltStabError, ValueError):
    pass


class SchemaError(TiltStabError, ValueError):
    """Geometry file does not match the schema; ``pointer`` is a JSON pointer."""

    def __init__(self, message, pointer=""):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer
