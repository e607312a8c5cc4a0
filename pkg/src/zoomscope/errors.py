"""Exception types shared by the zoomscope modules."""


class ZoomscopeError(ValueError):
    """Base class for every error raised by the library."""


class BlownUpPoint(ZoomscopeError):
    pass


class Overflow(ZoomscopeError):
    pass


class OffChart(ZoomscopeError):
    pass


class PoleParameter(ZoomscopeError):
    pass


class TooFewPoints(ZoomscopeError):
    pass


class DegenerateParams(ZoomscopeError):
    pass


class NotInRegion(ZoomscopeError):
    pass


class OutOfDomain(ZoomscopeError):
    pass


class WrongRegion(ZoomscopeError):
    pass


class EmptySequence(ZoomscopeError):
    pass


class BadWindow(ZoomscopeError):
    pass


class WindowTooLarge(ZoomscopeError):
    pass


class UnsupportedZoomFactor(ZoomscopeError):
    pass


class DegenerateSeries(ZoomscopeError):
    pass


class UnknownSurface(ZoomscopeError):
    pass


class EmptyInput(ZoomscopeError):
    pass
