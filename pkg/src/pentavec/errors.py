"""Exception types shared across the package."""


class PentavecError(Exception):
    """Base class for every error raised by this package."""


class ShapeMismatch(PentavecError):
    pass


class SingularMatrix(PentavecError):
    pass


class BasisMismatch(PentavecError):
    pass


class NotSimple(PentavecError):
    pass


class NotMaximalSpace(PentavecError):
    pass


class DimensionTooSmall(PentavecError):
    pass


class ZeroVector(PentavecError):
    pass


class NotInMaximalSpace(PentavecError):
    pass


class NotStandard(PentavecError):
    pass


class SingularBlock(PentavecError):
    pass


class NotOrthonormalInput(PentavecError):
    pass


class NoCommonDirection(PentavecError):
    pass


class DegenerateInducedMetric(PentavecError):
    pass


class InvalidGammaSet(PentavecError):
    pass


class NotO32(PentavecError):
    pass


class GridTooCoarse(PentavecError):
    pass


class NotDirectional(PentavecError):
    pass


class NotAntisymmetric(PentavecError):
    pass


class GridMismatch(PentavecError):
    pass


class KindMismatch(PentavecError):
    pass


class ParseError(PentavecError):
    """Raised on malformed input files; carries the offending location."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)
