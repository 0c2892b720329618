"""Exception hierarchy shared by the library and the command line."""


class ToriError(Exception):
    """Base class for every error raised by translated_tori."""

    exit_code = 1


class ValidationError(ToriError):
    """Input rejected before any computation (ranges, shapes, hosts)."""

    exit_code = 2


class ParseError(ValidationError):
    pass


class DuplicateHyperplaneError(ValidationError):
    pass


class ConductorError(ValidationError):
    pass


class UnsupportedError(ToriError):
    """The requested oracle cannot handle this input (e.g. a non-real arrangement)."""

    exit_code = 3


class SizeBoundError(ToriError):
    """Exhaustive search refused because the arrangement is too large."""

    exit_code = 4


class CertificateError(ToriError):
    """A certificate failed to replay."""

    exit_code = 5
