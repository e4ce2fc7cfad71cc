"""Exception hierarchy shared by the pipeline stages."""


class MsExtractError(Exception):
    """Base class for all errors raised by msextract."""


class FactsValidationError(MsExtractError, ValueError):
    """A facts file (or in-memory facts) violates the schema or an invariant."""


class EmptyProjectError(MsExtractError):
    """A source scan found no classes."""


class DegenerateVocabularyError(MsExtractError, ValueError):
    """Every token document is empty, so no TF-IDF vocabulary exists."""


class UndefinedMetricError(MsExtractError, ValueError):
    """A quality or matching metric is undefined for the given decomposition."""


class ClassUniverseError(MsExtractError, ValueError):
    """Two inputs disagree on the set of classes."""

    def __init__(self, message, missing=(), unknown=()):
        super().__init__(message)
        self.missing = tuple(missing)
        self.unknown = tuple(unknown)
