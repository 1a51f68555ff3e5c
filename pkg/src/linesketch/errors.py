"""Exception types shared across the toolkit."""


class LineSketchError(Exception):
    """Base class for all toolkit errors."""


class InvalidStrokeError(LineSketchError):
    """A stroke record violates its structural requirements."""


class ParameterError(LineSketchError):
    """An operation received an out-of-range or malformed parameter."""


class AlignmentError(LineSketchError):
    """Two series that must share a sampling grid do not."""


class DegenerateSignalError(LineSketchError):
    """The signal has no power, so an SNR target cannot be met."""


class SequencingError(LineSketchError):
    """A session event arrived out of protocol order."""


class ConfigurationError(LineSketchError):
    """A study or service configuration is inconsistent."""


class IncompleteGradesError(LineSketchError):
    """Cluster assignment is missing a grade for a required feature."""


class DataError(LineSketchError):
    """An input file could not be read or failed validation."""
