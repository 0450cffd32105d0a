"""Error types shared across the package.

Every failure mode that callers are expected to handle gets its own class so
the CLI can name the error case and exit with status 3.
"""


class HrtlabError(Exception):
    """Base class for all package-specific errors."""


class DuplicatePoints(HrtlabError):
    """A configuration contains the same time-frequency point twice."""


class Collinear(HrtlabError):
    """Normalization needs three non-collinear points and found none."""


class BadStep(HrtlabError):
    """Window grid step h must satisfy 1/h integer."""


class OffGridShift(HrtlabError):
    """Non-analytic window shifted by a non-multiple of the grid step."""


class GridMismatch(HrtlabError):
    """Operands sampled on incompatible grids."""


class NoDistinguishedPoint(HrtlabError):
    """Operation requires a configuration with a distinguished point."""


class UnsupportedShift(HrtlabError):
    """Shift outside the supported parameter domain."""


class ZeroDirection(HrtlabError):
    """Toral line direction must be nonzero."""


class PrecisionExhausted(HrtlabError):
    """Float relation detection found a candidate in the ambiguous band.

    Raised when a candidate relation fails verification at tol but would pass
    at 10*tol; the inputs do not carry enough precision to decide.
    """


class ZeroFactor(HrtlabError):
    """A product factor fell below the zero threshold where that is fatal."""
