"""Exception types raised across the package."""


class GFFError(Exception):
    """Base class for every error raised by :mod:`gff`."""


class EmptySpan(GFFError):
    """All spanning columns deflated to zero; the span is the zero subspace."""


class NotHermitian(GFFError, ValueError):
    pass


class DimensionMismatch(GFFError, ValueError):
    pass


class LocalSpaceMismatch(DimensionMismatch):
    """Two systems disagree on the dimension of a local space ``H_i``."""


class NotAFrame(GFFError):
    """The frame operator is not invertible at the classification tolerance."""

    def __init__(self, lambda_min):
        self.lambda_min = float(lambda_min)
        super().__init__(f"lambda_min={self.lambda_min:.12g}")


class SizeLimit(GFFError):
    pass


class NonPositiveWeight(GFFError, ValueError):
    pass


class BadParams(GFFError, ValueError):
    pass


class ParseError(GFFError, ValueError):
    """Malformed system file. ``path`` names the offending key."""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)
