"""Exception types shared across the package."""


class RleRepeatsError(Exception):
    """Base class for every error raised by this package."""


class EmptyInput(RleRepeatsError, ValueError):
    pass


class SentinelMisplaced(RleRepeatsError, ValueError):
    pass


class OutOfRange(RleRepeatsError, IndexError):
    pass


class UnknownSymbol(RleRepeatsError, KeyError):
    pass


class FormatError(RleRepeatsError, ValueError):
    """Malformed serialized data or an inconsistent RLBWT."""


class BadMagic(FormatError):
    pass


class VersionMismatch(FormatError):
    pass


class Truncated(FormatError):
    pass


class MissingBoundarySample(RleRepeatsError, LookupError):
    """An SA value was requested at a row that is not a run boundary."""


class NoccNotStored(RleRepeatsError):
    """The trie was built without net-occurrence lists."""


class VisitorAbort(RleRepeatsError):
    """Raised by a traversal visitor to stop the traversal early."""


class EmptyNetOccurrences(UserWarning):
    """No net occurrences were given, so no MUS can be derived by chaining."""
