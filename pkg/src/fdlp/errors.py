"""Exception hierarchy. Everything raised on purpose derives from FdlpError."""


class FdlpError(Exception):
    """Base class for all library errors."""


class EmptyInputError(FdlpError):
    """An operation received an empty signal or an empty collection."""


class OrderTooLargeError(FdlpError):
    """Requested lag/model order does not fit the available data."""


class ZeroEnergyError(FdlpError):
    """Zero-lag autocorrelation is not positive; nothing to model."""


class UnstableModelError(FdlpError):
    """Levinson step produced a reflection coefficient with magnitude >= 1."""


class InvalidLengthError(FdlpError):
    """Window or sequence length outside the supported range."""


class InvalidRangeError(FdlpError):
    """Lifter band [a, b] with a > b."""


class ShapeMismatchError(FdlpError):
    """Operands have incompatible lengths or shapes."""


class InvalidFrequencyError(FdlpError):
    """Negative frequency passed to a scale conversion."""


class TooManyBandsError(FdlpError):
    """More filterbank bands requested than spectral bins available."""


class UnsupportedFormatError(FdlpError):
    """Audio file encoding the reader does not handle."""


class CorruptHeaderError(FdlpError):
    """File header is truncated or structurally invalid."""


class VersionMismatchError(FdlpError):
    """Archive format version differs from what this build writes."""


class ChecksumFailureError(FdlpError):
    """Stored checksum does not match the payload."""


class AllFailedError(FdlpError):
    """Batch extraction produced zero successful utterances."""
