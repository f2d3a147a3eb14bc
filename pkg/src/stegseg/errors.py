"""Exception types and the process exit codes they map to."""

EXIT_OK = 0
EXIT_CAPACITY = 2
EXIT_WRONG_PASSWORD = 3
EXIT_INTEGRITY = 4
EXIT_MISSING_SEGMENTS = 5
EXIT_IO = 6
EXIT_USAGE = 64


class StegsegError(Exception):
    """Base class for every error raised by this package."""

    exit_code = EXIT_IO


class EmptySecret(StegsegError):
    """Secret key or password is empty."""

    exit_code = EXIT_USAGE


class LengthMismatch(StegsegError):
    """Declared bit length does not fit the ciphertext byte count."""


class InvalidImage(StegsegError):
    """Pixel buffer inconsistent with the declared geometry, or an
    unsupported file format."""


class CapacityExceeded(StegsegError):
    """Payload does not fit in the carrier image."""

    exit_code = EXIT_CAPACITY


class NoPayload(StegsegError):
    """Image carries no embedded header (innocent image)."""


class WrongPassword(StegsegError):
    """Password verifier mismatch; extraction refused."""

    exit_code = EXIT_WRONG_PASSWORD


class TagMismatch(StegsegError):
    """Extracted ciphertext fails its integrity tag."""

    exit_code = EXIT_INTEGRITY


class TruncatedImage(StegsegError):
    """Image too small for the header or the declared payload."""


class ImageTooSmall(StegsegError):
    """Too few pixels to build an affinity graph."""


class NoConvergence(StegsegError):
    """Eigensolver did not reach the residual tolerance."""


class DegenerateVector(StegsegError):
    """Splitting vector has no spread to threshold on."""


class EmptySide(StegsegError):
    """A bipartition side is empty."""


class DimensionMismatch(StegsegError):
    """Image geometry disagrees with the partition or manifest."""


class CoverageError(StegsegError):
    """Segment runs do not tile the pixel grid exactly."""


class MalformedRecord(StegsegError):
    """Structurally invalid wire record."""


class BadMagic(MalformedRecord):
    pass


class BadVersion(MalformedRecord):
    pass


class MalformedRuns(MalformedRecord):
    """Run list not sorted, overlapping, or out of bounds."""


class Truncated(MalformedRecord):
    """Record shorter than its declared structure."""


class ChecksumMismatch(StegsegError):
    """Stored checksum does not match the record bytes."""

    exit_code = EXIT_INTEGRITY


class FeatureMismatch(StegsegError):
    """Reassembled image fails the keyed feature test."""

    exit_code = EXIT_INTEGRITY


class MissingSegment(StegsegError):
    """One or more segments absent after reassembly."""

    exit_code = EXIT_MISSING_SEGMENTS

    def __init__(self, message, missing_ids=()):
        super().__init__(message)
        self.missing_ids = tuple(missing_ids)


class OverlapError(StegsegError):
    """A pixel covered by more than one segment."""

    exit_code = EXIT_INTEGRITY


class UnknownSegment(StegsegError):
    """Packet id absent from the manifest table."""

    exit_code = EXIT_INTEGRITY


class CountMismatch(StegsegError):
    """Packet pixel count disagrees with the manifest."""

    exit_code = EXIT_INTEGRITY


class ConnectionFailed(StegsegError):
    """Could not reach the receiving endpoint."""


class BadRecord(StegsegError):
    """Received record rejected before storage."""


class DuplicateRecord(StegsegError):
    """Conflicting content re-received for an already stored record."""
