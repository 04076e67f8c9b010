"""Exception types shared across the library."""


class SktgcError(Exception):
    """Base class for all library errors."""


class NotAGrayStep(SktgcError):
    """Two consecutive words differ in more than one position or by more than one unit."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"words {index} and {index + 1} do not differ by a single unit step")


class EmptyResult(SktgcError):
    """A derived code would contain no words."""


class CodeTooLarge(SktgcError):
    """Materializing the code would exceed the in-memory word bound."""


class ListingError(SktgcError):
    """Malformed canonical text listing."""


class InvalidLength(SktgcError):
    """Length parameter outside the range supported by the construction."""


class InvalidAlphabet(SktgcError):
    """Alphabet size outside the range supported by the construction."""


class InvalidParameters(SktgcError):
    """Parameter combination outside a size formula's range."""


class InvalidBase(SktgcError):
    """A seed code violates one or more base-case conditions."""

    def __init__(self, failures):
        self.failures = list(failures)
        super().__init__("; ".join(self.failures) or "invalid base case")


class ConditionViolated(InvalidBase):
    """validate_base found failing conditions (each with a witness)."""


class NotInCode(SktgcError):
    """The word is not a codeword of the target code."""


class RankOutOfRange(SktgcError):
    """Rank outside [0, P) for the target code."""


class PositionOutOfRange(SktgcError):
    """A transition position falls outside 1..n."""


class NotSkewTolerant(SktgcError):
    """The code has no valid transition sequence, so it cannot be compressed."""


class MalformedStream(SktgcError):
    """Compressed stream is truncated, corrupt, or walks out of bounds."""
