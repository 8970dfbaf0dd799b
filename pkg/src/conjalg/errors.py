"""Exception hierarchy.

Every error raised by the library derives from :class:`ConjAlgError` so the
CLI can map families of failures onto exit codes.
"""


class ConjAlgError(Exception):
    pass


class ParseError(ConjAlgError, ValueError):
    pass


class RangeError(ConjAlgError, ValueError):
    pass


class DuplicateEntry(ParseError):
    pass


class DegreeMismatch(ConjAlgError, ValueError):
    pass


class FamilyMismatch(ConjAlgError, ValueError):
    pass


class AmbientMismatch(ConjAlgError, ValueError):
    pass


class PointOutOfRange(ConjAlgError, ValueError):
    pass


class ShrinkNotAllowed(ConjAlgError, ValueError):
    pass


class GrowNotAllowed(ConjAlgError, ValueError):
    pass


class SizeMismatch(ConjAlgError, ValueError):
    pass


class ZeroElement(ConjAlgError, ValueError):
    pass


class WrongFamily(ConjAlgError, ValueError):
    pass


class UnsupportedFormat(ConjAlgError, ValueError):
    pass


class ResourceGuard(ConjAlgError, RuntimeError):
    """A computation would exceed a configured size cap."""


class CapExceeded(ResourceGuard):
    pass
