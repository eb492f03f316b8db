"""Exception types shared across the package."""


class PausegateError(Exception):
    """Base class for all errors raised by this package."""


class FileUnreadable(PausegateError):
    """The input file could not be opened or read."""


class UnsupportedFormat(PausegateError):
    """The audio file is not 16-bit PCM WAV with 1 or 2 channels."""


class SampleRateTooLow(PausegateError):
    """Sample rate below the 8000 Hz analysis floor."""


class EmptyAudio(PausegateError):
    """The audio contains no samples."""


class InvalidRange(PausegateError):
    """Requested time range is empty or outside the signal."""


class WindowTooShort(PausegateError):
    """Analysis window shorter than two samples."""


class BandAboveNyquist(PausegateError):
    """Band upper cutoff at or above half the sample rate."""


class EmptyBand(PausegateError):
    """No FFT bin falls inside the configured band."""


class SignalTooShort(PausegateError):
    """Signal too short for the requested analysis."""


class InvalidSpeakerId(PausegateError):
    """Speaker id does not match [A-Za-z0-9_-]{1,64}."""


class StoreCorrupt(PausegateError):
    """Profile store failed to parse or violates the schema."""


class StoreWriteFailure(PausegateError):
    """Profile store could not be written."""


class EmptyProfile(PausegateError):
    """Baseline statistics requested for a profile with no enrollments."""


class InvalidScript(PausegateError):
    """Synthesis script violates its invariants."""


class WriteFailure(PausegateError):
    """Output file could not be written."""
