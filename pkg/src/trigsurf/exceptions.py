"""Exception types raised by trigsurf."""


class InvalidArgumentError(ValueError):
    """An argument violates an operation's precondition."""


class SamplingError(RuntimeError):
    """The zero-set sampler ran out of slice attempts."""

    def __init__(self, message: str, attempts: int):
        super().__init__(message)
        self.attempts = attempts


class AnchorSelectionError(RuntimeError):
    """No rank-complete anchor set was found within the retry budget."""

    def __init__(self, message: str, achieved_rank: int, required_rank: int):
        super().__init__(message)
        self.achieved_rank = achieved_rank
        self.required_rank = required_rank


class IllConditionedKernelError(RuntimeError):
    """The anchor kernel matrix is numerically rank deficient."""

    def __init__(self, message: str, rank: int, size: int):
        super().__init__(message)
        self.rank = rank
        self.size = size


class FormatError(ValueError):
    """A serialized polynomial, sample set or interpolant is malformed."""
