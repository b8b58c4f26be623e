"""Exception hierarchy shared across the pipeline."""


class ChartsynthError(Exception):
    """Base class for all errors raised by this package."""


class BackendError(ChartsynthError):
    """A chat backend failed after exhausting its retry budget."""


class EmptyResponseError(BackendError):
    """The backend returned a response with no text."""


class FixtureMissingError(BackendError):
    """The replay backend has no fixture for a conversation digest."""

    def __init__(self, digest: str):
        super().__init__(f"no replay fixture for conversation digest {digest}")
        self.digest = digest


class NoCodeBlockError(ChartsynthError):
    """A reply contained no fenced code block."""


class AmbiguousCodeBlockError(ChartsynthError):
    """A reply contained more than one fenced code block."""


class MalformedReplyError(ChartsynthError):
    """A structured reply could not be parsed into the expected shape."""


class UnparseableVerdictError(ChartsynthError):
    """A rating reply had no usable score line."""


class AllVerdictsUnparseableError(ChartsynthError):
    """Every ensemble member produced an unparseable chart rating."""


class PoolAdmissionError(ChartsynthError):
    """A record that is not executable was offered to the code pool."""


class ManifestError(ChartsynthError):
    """Dataset packaging inputs are inconsistent or incomplete."""


class ConfigError(ChartsynthError):
    """The pipeline configuration is invalid.

    ``field`` carries the dotted path of the offending entry when known.
    """

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field


class PrerequisiteError(ChartsynthError):
    """A stage was invoked before the stages it depends on completed."""


class StageError(ChartsynthError):
    """A stage could not run to completion."""
