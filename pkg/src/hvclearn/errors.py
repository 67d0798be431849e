"""Exception types shared across the package."""


class ContractViolation(ValueError):
    """An argument breaks a documented precondition (dimension mismatch,
    non-dominating reference point, empty direction set, ...)."""


class SamplingError(RuntimeError):
    """A sampler exhausted its resampling budget without producing the
    requested number of distinct points."""


class CorpusValidationError(ValueError):
    """A training-corpus file on disk is missing, malformed, or carries a
    contribution cache that disagrees with a fresh exact computation."""

    def __init__(self, message, path=None):
        super().__init__(message)
        self.path = path
