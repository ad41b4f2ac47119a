class WH4Error(Exception):
    """Base class of every error raised by the wh4 backend."""


class PrecisionError(WH4Error, IndexError):
    """A coefficient beyond the known range of a series was requested."""


class DivisionByZeroSeries(WH4Error, ZeroDivisionError):
    pass


class PoleOrderTooSmall(WH4Error, ValueError):
    pass


class InsufficientPrecision(WH4Error):
    pass


class GapNotAchievable(WH4Error):
    """The spanning set cannot produce the requested gap in the expansion."""


class NonIntegralFaber(WH4Error):
    pass


class ZeroPolynomial(WH4Error, ValueError):
    pass


class TailNotConverged(WH4Error):
    pass


class NonMonotonicPsi(WH4Error):
    pass


class DivergentTail(WH4Error, ValueError):
    pass


class GridTooCoarse(WH4Error):
    pass


class ConditionFailedAt(WH4Error):
    def __init__(self, u):
        super().__init__(f'none of the three conditions certifies at u = {u}')
        self.u = u

    def __reduce__(self):
        return (ConditionFailedAt, (self.u, ))


class UncertifiedConstants(WH4Error):
    """The inequality chain was given constants without a passing certificate."""
