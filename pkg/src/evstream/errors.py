"""Exception hierarchy shared across the streaming stack."""


class StreamError(Exception):
    """Base class for all evstream errors."""


class ParameterError(StreamError):
    """Invalid configuration value or argument."""


class OrderingError(StreamError):
    """Event timestamps are not non-decreasing."""


class CorruptRecordError(StreamError):
    """A binary event record or file failed validation."""


class FramingError(StreamError):
    """A wire frame is truncated or malformed."""


class ProtocolError(StreamError):
    """A control-plane rule was violated."""


class IncompleteWindowError(StreamError):
    """Reconstruction was attempted with segments missing."""


class AccountingError(StreamError):
    """Event counters are inconsistent (kept exceeds source)."""


class DataError(StreamError):
    """Event data violates sensor geometry or window bounds."""


class NoDataError(StreamError):
    """An aggregate was requested over an empty series."""
