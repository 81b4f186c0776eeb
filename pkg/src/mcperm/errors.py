class MCPermError(ValueError):
    """Base class for all errors raised by this package."""


class DimensionError(MCPermError):
    pass


class CapExceeded(MCPermError):
    """An enumeration would exceed its configured size cap."""


class NotRealRootedError(MCPermError):
    pass


class DegreeError(MCPermError):
    pass
