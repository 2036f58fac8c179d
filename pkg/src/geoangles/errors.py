"""Exception hierarchy shared by every module."""


class GeoAnglesError(Exception):
    pass


class DomainError(GeoAnglesError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """A tangent, cotangent or secant was requested at one of its poles.

    ``where`` names the offending term (e.g. ``"k=3, 30d-"``) when the
    pole was found while scanning a series.
    """

    def __init__(self, message, where=None):
        super().__init__(message)
        self.where = where


class NearPoleError(PoleError):
    pass


class ParseError(GeoAnglesError, ValueError):
    def __init__(self, message, text, position):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position
